//! The dual functors on arrows, `S₁(φ) = φ⁻¹` and `A₁(ψ) = ψ⁻¹`, and the
//! two naturality squares.
//!
//! Given raw preimage tables, both squares commute by unfolding the
//! definitions: `{x′ : φ⁻¹[x′] ∋ a} = {x′ : φ(a) ∈ x′}`. What a square
//! certificate actually establishes is that every arrow in it is a
//! morphism of the right category, so the reports check each arrow before
//! the equality, and stop at the first failure.

use std::sync::Arc;

use super::{check_hom, check_weak_p, LatticeHom, WeakPMorphism};
use crate::bitset::IndexSet;
use crate::error::{Error, Result};
use crate::lattice::FiniteOrtholattice;
use crate::report::{Check, Outcome, Report};
use crate::spectral::{
    build_dual_lattice, build_dual_space_with, realization_map_with, DualSpace, OrthoSpace,
};
use crate::Limits;

/// `φ⁻¹[x′]` for every point `x′` of the target's dual, as a point of the
/// source's dual; `Err(x′)` at the first preimage that is not a filter.
fn preimage_points(
    phi: &LatticeHom,
    src: &DualSpace,
    tgt: &DualSpace,
) -> std::result::Result<Vec<usize>, usize> {
    let n = phi.source().len();
    tgt.filters()
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let pre = IndexSet::from_fn(n, |a| f.contains(phi.apply(a)));
            src.point_with_carrier(&pre).ok_or(i)
        })
        .collect()
}

/// `S₁(φ)` over duals that are already built. `src` must be the dual of
/// `φ`'s source and `tgt` of its target.
pub fn dualize_hom_between(phi: &LatticeHom, src: &DualSpace, tgt: &DualSpace) -> Result<WeakPMorphism> {
    check_hom(phi).map_err(Error::HomInvalid)?;
    if src.lattice() != &**phi.source() || tgt.lattice() != &**phi.target() {
        return Err(Error::TypeMismatch("dual spaces do not match the homomorphism".into()));
    }
    let table = preimage_points(phi, src, tgt)
        .map_err(|x| Error::Shape(format!("preimage of filter {x} is not a filter")))?;
    WeakPMorphism::new(Arc::new(tgt.space().clone()), Arc::new(src.space().clone()), table)
}

/// `S₁(φ) : S₀(L′) → S₀(L)`, sending each filter `x` of `L′` to `φ⁻¹[x]`.
pub fn dualize_hom(phi: &LatticeHom) -> Result<WeakPMorphism> {
    check_hom(phi).map_err(Error::HomInvalid)?;
    let limits = Limits::default();
    let src = build_dual_space_with(phi.source(), &limits)?;
    let tgt = build_dual_space_with(phi.target(), &limits)?;
    dualize_hom_between(phi, &src, &tgt)
}

/// `ψ⁻¹` on `CO(X′)†` as a table into `CO(X)†`; `Err(i)` at the first
/// member whose preimage leaves the family.
fn preimage_family(psi: &WeakPMorphism) -> std::result::Result<Vec<usize>, usize> {
    psi.target()
        .clopen_stable()
        .iter()
        .enumerate()
        .map(|(i, u)| psi.source().index_of_clopen_stable(&psi.preimage(u)).ok_or(i))
        .collect()
}

/// `A₁(ψ) : A₀(X′) → A₀(X)`, sending each `U ∈ CO(X′)†` to `ψ⁻¹[U]`.
pub fn dualize_map(psi: &WeakPMorphism) -> Result<LatticeHom> {
    check_weak_p(psi).map_err(Error::MapInvalid)?;
    let table = preimage_family(psi)
        .map_err(|i| Error::Shape(format!("preimage of clopen ⊥-stable set {i} is not clopen ⊥-stable")))?;
    let source = Arc::new(build_dual_lattice(psi.target())?);
    let target = Arc::new(build_dual_lattice(psi.source())?);
    LatticeHom::new(source, target, table)
}

fn fail(report: &mut Report, id: &str, desc: &str, witness: Vec<usize>, note: impl Into<String>) -> Report {
    report.push(Check::new(id, desc, Outcome::Fail { witness }).with_note(note));
    std::mem::take(report)
}

/// Certificate for `h′(φ(a)) = A₁(S₁(φ))[h(a)]` over every `a`.
pub fn square_lattice_report(phi: &LatticeHom, limits: &Limits) -> Result<Report> {
    let (l, l2): (&FiniteOrtholattice, &FiniteOrtholattice) = (phi.source(), phi.target());
    let mut r = Report::new(format!("lattice square for φ: {} → {}", l.name(), l2.name()));
    if let Err(v) = check_hom(phi) {
        return Ok(fail(&mut r, "phi", "φ is a homomorphism", v.witness.clone(), v.to_string()));
    }
    r.push(Check::new("phi", "φ is a homomorphism", Outcome::Pass));
    let src = build_dual_space_with(l, limits)?;
    let tgt = build_dual_space_with(l2, limits)?;

    let desc = "S₁(φ) sends filters to filters";
    let table = match preimage_points(phi, &src, &tgt) {
        Ok(t) => t,
        Err(x) => return Ok(fail(&mut r, "S1-filters", desc, vec![x], "preimage is not a filter")),
    };
    r.push(Check::new("S1-filters", desc, Outcome::Pass));
    let psi = WeakPMorphism::new(Arc::new(tgt.space().clone()), Arc::new(src.space().clone()), table)?;
    let desc = "S₁(φ) is a continuous weak p-morphism";
    if let Err(v) = check_weak_p(&psi) {
        return Ok(fail(&mut r, "S1-weak-p", desc, v.witness.clone(), v.to_string()));
    }
    r.push(Check::new("S1-weak-p", desc, Outcome::Pass));

    let desc = "A₁(S₁(φ)) maps CO† into CO†";
    let chi_table = match preimage_family(&psi) {
        Ok(t) => t,
        Err(i) => return Ok(fail(&mut r, "A1-closed", desc, vec![i], "preimage leaves CO†")),
    };
    r.push(Check::new("A1-closed", desc, Outcome::Pass));
    let chi = LatticeHom::new(
        Arc::new(build_dual_lattice(src.space())?),
        Arc::new(build_dual_lattice(tgt.space())?),
        chi_table,
    )?;
    let desc = "A₁(S₁(φ)) is a homomorphism";
    if let Err(v) = check_hom(&chi) {
        return Ok(fail(&mut r, "A1-hom", desc, v.witness.clone(), v.to_string()));
    }
    r.push(Check::new("A1-hom", desc, Outcome::Pass));

    let w = l
        .elements()
        .find(|&a| tgt.h(phi.apply(a)) != psi.preimage(&src.h(a)));
    r.push(Check::new(
        "commutes",
        "h′(φ(a)) = A₁(S₁(φ))[h(a)] for every a",
        Outcome::from_witness(w.map(|a| vec![a])),
    ));
    Ok(r)
}

/// True iff every arrow of the lattice square is a morphism and the square
/// commutes. A table that is not a homomorphism gives `false`.
pub fn verify_square_lattice(phi: &LatticeHom) -> Result<bool> {
    Ok(square_lattice_report(phi, &Limits::default())?.all_passed())
}

/// Certificate for `f′(ψ(x)) = S₁(A₁(ψ))[f(x)]` over every point `x`.
pub fn square_space_report(psi: &WeakPMorphism, limits: &Limits) -> Result<Report> {
    let (x, x2): (&OrthoSpace, &OrthoSpace) = (psi.source(), psi.target());
    let mut r = Report::new(format!("space square for ψ: {} → {}", x.name(), x2.name()));
    if let Err(v) = check_weak_p(psi) {
        return Ok(fail(&mut r, "psi", "ψ is a continuous weak p-morphism", v.witness.clone(), v.to_string()));
    }
    r.push(Check::new("psi", "ψ is a continuous weak p-morphism", Outcome::Pass));
    let real = realization_map_with(x, limits)?;
    let real2 = realization_map_with(x2, limits)?;

    let desc = "A₁(ψ) maps CO(X′)† into CO(X)†";
    let chi_table = match preimage_family(psi) {
        Ok(t) => t,
        Err(i) => return Ok(fail(&mut r, "A1-closed", desc, vec![i], "preimage leaves CO†")),
    };
    r.push(Check::new("A1-closed", desc, Outcome::Pass));
    let chi = LatticeHom::new(
        Arc::new(real2.dual_lattice.clone()),
        Arc::new(real.dual_lattice.clone()),
        chi_table,
    )?;
    let desc = "A₁(ψ) is a homomorphism";
    if let Err(v) = check_hom(&chi) {
        return Ok(fail(&mut r, "A1-hom", desc, v.witness.clone(), v.to_string()));
    }
    r.push(Check::new("A1-hom", desc, Outcome::Pass));

    let desc = "S₁(A₁(ψ)) sends filters to filters";
    let table = match preimage_points(&chi, &real2.bidual, &real.bidual) {
        Ok(t) => t,
        Err(p) => return Ok(fail(&mut r, "S1-filters", desc, vec![p], "preimage is not a filter")),
    };
    r.push(Check::new("S1-filters", desc, Outcome::Pass));
    let back = WeakPMorphism::new(
        Arc::new(real.bidual.space().clone()),
        Arc::new(real2.bidual.space().clone()),
        table,
    )?;
    let desc = "S₁(A₁(ψ)) is a continuous weak p-morphism";
    if let Err(v) = check_weak_p(&back) {
        return Ok(fail(&mut r, "S1-weak-p", desc, v.witness.clone(), v.to_string()));
    }
    r.push(Check::new("S1-weak-p", desc, Outcome::Pass));

    let w = (0..x.len()).find(|&p| real2.map[psi.apply(p)] != back.apply(real.map[p]));
    r.push(Check::new(
        "commutes",
        "f′(ψ(x)) = S₁(A₁(ψ))[f(x)] for every x",
        Outcome::from_witness(w.map(|p| vec![p])),
    ));
    Ok(r)
}

/// True iff every arrow of the space square is a morphism and the square
/// commutes. A table that is not a continuous weak p-morphism gives `false`.
pub fn verify_square_space(psi: &WeakPMorphism) -> Result<bool> {
    Ok(square_space_report(psi, &Limits::default())?.all_passed())
}
