//! Exhaustive verification of the two round trips `A ≅ A₀(S₀(A))` and
//! `X ≅ S₀(A₀(X))`.

use crate::bitset::{IndexSet, PointSet};
use crate::error::Result;
use crate::lattice::FiniteOrtholattice;
use crate::par;
use crate::report::{Check, Outcome, Report};
use crate::Limits;

use super::{build_dual_lattice, build_dual_space_with, perp_a, DualSpace, OrthoSpace};

/// The map `a ↦ h(a)` from `A` into `A₀(S₀(A))` with its certificate.
#[derive(Debug, Clone)]
pub struct Representation {
    pub dual: DualSpace,
    pub bidual: FiniteOrtholattice,
    /// `map[a]` is the element of `bidual` that is `h(a)`.
    pub map: Vec<usize>,
    pub report: Report,
}

pub fn representation_iso(l: &FiniteOrtholattice) -> Result<Representation> {
    representation_iso_with(l, &Limits::default())
}

pub fn representation_iso_with(l: &FiniteOrtholattice, limits: &Limits) -> Result<Representation> {
    let dual = build_dual_space_with(l, limits)?;
    let bidual = build_dual_lattice(dual.space())?;
    let space = dual.space();
    let frame = space.frame();
    let n = l.len();
    let h: Vec<PointSet> = l.elements().map(|a| dual.h(a)).collect();
    let map: Vec<usize> = h
        .iter()
        .map(|u| space.index_of_clopen_stable(u).unwrap_or(usize::MAX))
        .collect();

    let mut report = Report::new(format!("representation h: {} → A0(S0({}))", l.name(), l.name()));
    let outside = map.iter().position(|&i| i == usize::MAX);
    report.push(Check::new(
        "into",
        "every h(a) is clopen and ⊥-stable",
        Outcome::from_witness(outside.map(|a| vec![a])),
    ));
    let injective = par::find_first(0..n, |a| ((a + 1)..n).find(|&b| h[a] == h[b]).map(|b| vec![a, b]));
    report.push(Check::new("injective", "a ≠ b implies h(a) ≠ h(b)", Outcome::from_witness(injective)));
    let surjective = space
        .clopen_stable()
        .iter()
        .position(|u| !h.contains(u));
    report.push(Check::new(
        "surjective",
        "every clopen ⊥-stable set is some h(a)",
        Outcome::from_witness(surjective.map(|i| vec![i])),
    ));
    let zero_ok = h[l.zero()] == PointSet::singleton(space.len(), dual.omega());
    report.push(Check::new(
        "zero",
        "h(0) = {ω}",
        Outcome::from_witness((!zero_ok).then(|| vec![l.zero()])),
    ));
    let meet = par::find_first(0..n, |a| {
        (0..n)
            .find(|&b| h[l.meet(a, b)] != h[a].intersection(&h[b]))
            .map(|b| vec![a, b])
    });
    report.push(Check::new("meet", "h(a · b) = h(a) ∩ h(b)", Outcome::from_witness(meet)));
    let ortho = (0..n).find(|&a| h[l.ortho(a)] != frame.ortho_complement(&h[a]));
    report.push(Check::new(
        "ortho",
        "h(−a) = h(a)⊥",
        Outcome::from_witness(ortho.map(|a| vec![a])),
    ));
    Ok(Representation {
        dual,
        bidual,
        map,
        report,
    })
}

/// The map `x ↦ {U ∈ CO(X)† : x ∈ U}` from `X` onto `S₀(A₀(X))` with its
/// certificate.
#[derive(Debug, Clone)]
pub struct Realization {
    pub dual_lattice: FiniteOrtholattice,
    pub bidual: DualSpace,
    /// `map[x]` is the point of `bidual` that is `f(x)`, or `usize::MAX`
    /// when `f(x)` is not a filter.
    pub map: Vec<usize>,
    pub report: Report,
}

pub fn realization_map(space: &OrthoSpace) -> Result<Realization> {
    realization_map_with(space, &Limits::default())
}

pub fn realization_map_with(space: &OrthoSpace, limits: &Limits) -> Result<Realization> {
    let dual_lattice = build_dual_lattice(space)?;
    let bidual = build_dual_space_with(&dual_lattice, limits)?;
    let family = space.clopen_stable();
    let m = space.len();
    let frame = space.frame();

    let images: Vec<IndexSet> = (0..m)
        .map(|x| IndexSet::from_fn(family.len(), |i| family[i].contains(x)))
        .collect();
    let map: Vec<usize> = images
        .iter()
        .map(|c| bidual.point_with_carrier(c).unwrap_or(usize::MAX))
        .collect();

    let mut report = Report::new(format!("realization f: {} → S0(A0({}))", space.name(), space.name()));
    let not_filter = map.iter().position(|&p| p == usize::MAX);
    report.push(Check::new(
        "filter",
        "every f(x) is a filter of CO(X)†",
        Outcome::from_witness(not_filter.map(|x| vec![x])),
    ));
    if not_filter.is_some() {
        return Ok(Realization {
            dual_lattice,
            bidual,
            map,
            report,
        });
    }
    let target_points = bidual.space().len();
    let injective = par::find_first(0..m, |x| ((x + 1)..m).find(|&y| map[x] == map[y]).map(|y| vec![x, y]));
    report.push(Check::new("injective", "x ≠ y implies f(x) ≠ f(y)", Outcome::from_witness(injective)));
    let hit = IndexSet::from_indices(target_points, map.iter().copied());
    report.push(Check::new(
        "surjective",
        "every filter of CO(X)† is some f(x)",
        Outcome::from_witness(hit.complement().first().map(|p| vec![p])),
    ));
    let top = space.top();
    let omega_ok = images[top].is_full();
    report.push(Check::new(
        "omega",
        "f(ω) is the improper filter",
        Outcome::from_witness((!omega_ok).then(|| vec![top])),
    ));
    let order = par::find_first(0..m, |x| {
        (0..m)
            .find(|&y| frame.leq(x, y) != images[x].is_subset(&images[y]))
            .map(|y| vec![x, y])
    });
    report.push(Check::new("order", "x ⪯ y iff f(x) ⊆ f(y)", Outcome::from_witness(order)));
    let perp = par::find_first(0..m, |x| {
        (0..m)
            .find(|&y| frame.perp(x, y) != perp_a(&dual_lattice, &images[x], &images[y]))
            .map(|y| vec![x, y])
    });
    report.push(Check::new("perp", "x ⊥ y iff f(x) ⊥ f(y)", Outcome::from_witness(perp)));

    // continuity of f: preimages of subbasic sets of the target are open
    let target = bidual.space();
    let preimage = |s: &PointSet| PointSet::from_fn(m, |x| s.contains(map[x]));
    let cont = target
        .subbasis()
        .iter()
        .position(|s| !space.topology().is_open(&preimage(s)));
    report.push(Check::new(
        "continuous",
        "f⁻¹ of every subbasic open is open",
        Outcome::from_witness(cont.map(|i| vec![i])),
    ));
    // continuity of f⁻¹: images of subbasic sets of the source are open
    let image = |s: &PointSet| PointSet::from_indices(target_points, s.iter().map(|x| map[x]));
    let open_map = space
        .subbasis()
        .iter()
        .position(|s| !target.topology().is_open(&image(s)));
    report.push(Check::new(
        "open",
        "f of every subbasic open is open",
        Outcome::from_witness(open_map.map(|i| vec![i])),
    ));
    report.push(materialized_check(space, target, &map, limits));
    Ok(Realization {
        dual_lattice,
        bidual,
        map,
        report,
    })
}

/// Compares `f` against the full open-set families when both fit under the
/// materialization cap.
fn materialized_check(source: &OrthoSpace, target: &OrthoSpace, map: &[usize], limits: &Limits) -> Check {
    let desc = "f maps the open-set family onto the open-set family";
    let (Ok(src), Ok(dst)) = (
        source.topology().materialize(limits.max_opens),
        target.topology().materialize(limits.max_opens),
    ) else {
        return Check::new("homeomorphism", desc, Outcome::Pass)
            .with_note("open-set family exceeds the materialization cap; continuity both ways checked on subbases");
    };
    let images: std::collections::HashSet<PointSet> = src
        .iter()
        .map(|u| PointSet::from_indices(target.len(), u.iter().map(|x| map[x])))
        .collect();
    let missing = dst.iter().position(|v| !images.contains(v));
    let extra = (images.len() != dst.len()).then(Vec::new);
    Check::new(
        "homeomorphism",
        desc,
        Outcome::from_witness(missing.map(|i| vec![i]).or(extra)),
    )
    .with_note(format!("{} open sets each side", dst.len()))
}
