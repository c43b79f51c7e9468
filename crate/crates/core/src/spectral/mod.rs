//! Filter spectra of finite orthomodular lattices and the lattices of
//! clopen ⊥-stable sets of finite orthomodular spaces, with verifiers for
//! both round trips.

mod space;
mod topology;
mod verify;

use serde::{Deserialize, Serialize};

use crate::bitset::{IndexSet, PointSet};
use crate::error::{cap_check, Error, Result};
use crate::frame::OrthoFrame;
use crate::lattice::FiniteOrtholattice;
use crate::par;
use crate::Limits;

pub use space::{stable_sets, OrthoSpace, Relation, SpaceDoc, SpaceReport};
pub use topology::Topology;
pub use verify::{realization_map, realization_map_with, representation_iso, representation_iso_with, Realization, Representation};

/// A filter of a finite lattice: non-empty, upward closed, meet closed.
/// In a finite lattice it is `↑generator`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Filter {
    pub generator: usize,
    #[serde(with = "carrier_serde")]
    pub carrier: IndexSet,
}

mod carrier_serde {
    use super::IndexSet;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(c: &IndexSet, s: S) -> Result<S::Ok, S::Error> {
        (c.universe(), c.to_vec()).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IndexSet, D::Error> {
        let (n, v): (usize, Vec<usize>) = Deserialize::deserialize(d)?;
        if v.iter().any(|&x| x >= n) {
            return Err(serde::de::Error::custom("carrier index out of range"));
        }
        Ok(IndexSet::from_indices(n, v))
    }
}

impl Filter {
    pub fn principal(l: &FiniteOrtholattice, a: usize) -> Self {
        Filter {
            generator: a,
            carrier: IndexSet::from_fn(l.len(), |b| l.leq(a, b)),
        }
    }

    pub fn contains(&self, a: usize) -> bool {
        self.carrier.contains(a)
    }

    /// The improper filter `↑0`.
    pub fn is_improper(&self, l: &FiniteOrtholattice) -> bool {
        self.carrier.contains(l.zero())
    }
}

/// `Some(generator)` iff `set` is a filter of `l`. A non-empty subset of a
/// finite lattice is a filter iff it is the principal upset of its meet.
pub fn filter_generator(l: &FiniteOrtholattice, set: &IndexSet) -> Option<usize> {
    if set.is_empty() || set.universe() != l.len() {
        return None;
    }
    let g = l.meet_all(set.iter());
    (set.contains(g) && l.elements().all(|b| set.contains(b) == l.leq(g, b))).then_some(g)
}

/// Every filter of `l`, including the improper one, ordered by
/// (size, lexicographic carrier).
pub fn filters(l: &FiniteOrtholattice) -> Vec<Filter> {
    let mut out: Vec<Filter> = par::map(l.elements(), |a| Filter::principal(l, a));
    out.sort_by(|x, y| x.carrier.canonical_cmp(&y.carrier));
    out
}

/// `x ⊥_A y` iff some `a ∈ x` has `−a ∈ y`.
pub fn perp_a(l: &FiniteOrtholattice, x: &IndexSet, y: &IndexSet) -> bool {
    x.iter().any(|a| y.contains(l.ortho(a)))
}

/// `h(a) = {x : a ∈ x}` over the given filter list.
pub fn h_image(filters: &[Filter], a: usize) -> PointSet {
    PointSet::from_fn(filters.len(), |i| filters[i].contains(a))
}

/// The dual space `S₀(A)` together with the filters its points stand for.
#[derive(Debug, Clone)]
pub struct DualSpace {
    lattice: FiniteOrtholattice,
    filters: Vec<Filter>,
    /// `point_of[a]` is the point `↑a`.
    point_of: Vec<usize>,
    space: OrthoSpace,
}

impl DualSpace {
    pub fn lattice(&self) -> &FiniteOrtholattice {
        &self.lattice
    }

    pub fn filters(&self) -> &[Filter] {
        &self.filters
    }

    pub fn space(&self) -> &OrthoSpace {
        &self.space
    }

    pub fn into_space(self) -> OrthoSpace {
        self.space
    }

    /// The point `↑a`.
    pub fn point_of(&self, a: usize) -> usize {
        self.point_of[a]
    }

    /// Point whose filter has exactly this carrier.
    pub fn point_with_carrier(&self, carrier: &IndexSet) -> Option<usize> {
        filter_generator(&self.lattice, carrier).map(|g| self.point_of[g])
    }

    pub fn h(&self, a: usize) -> PointSet {
        h_image(&self.filters, a)
    }

    /// The improper filter `ω`.
    pub fn omega(&self) -> usize {
        self.point_of[self.lattice.zero()]
    }
}

/// Builds `S₀(A)`: filters ordered by inclusion, `⊥_A`, Ω the principal
/// filters, and the topology generated by the sets `h(a)` and their
/// complements.
pub fn build_dual_space(l: &FiniteOrtholattice) -> Result<DualSpace> {
    build_dual_space_with(l, &Limits::default())
}

pub fn build_dual_space_with(l: &FiniteOrtholattice, limits: &Limits) -> Result<DualSpace> {
    l.check_orthomodular().map_err(Error::NotOrthomodular)?;
    let fs = filters(l);
    let m = fs.len();
    cap_check("filter space", m as u128, limits.max_points as u128)?;
    let mut point_of = vec![usize::MAX; l.len()];
    for (i, f) in fs.iter().enumerate() {
        point_of[f.generator] = i;
    }
    let order: Vec<PointSet> = par::map(0..m, |x| {
        PointSet::from_fn(m, |y| fs[x].carrier.is_subset(&fs[y].carrier))
    });
    let perp: Vec<PointSet> = par::map(0..m, |x| {
        PointSet::from_fn(m, |y| perp_a(l, &fs[x].carrier, &fs[y].carrier))
    });
    let omega = PointSet::from_fn(m, |x| filter_generator(l, &fs[x].carrier).is_some());
    let frame = OrthoFrame::new(order, perp, omega)?;
    let mut subbasis = Vec::with_capacity(2 * l.len());
    for a in l.elements() {
        let h = h_image(&fs, a);
        subbasis.push(h.complement());
        subbasis.push(h);
    }
    let space = OrthoSpace::new(format!("S0({})", l.name()), frame, subbasis, limits)?;
    Ok(DualSpace {
        lattice: l.clone(),
        filters: fs,
        point_of,
        space,
    })
}

/// Builds `A₀(X) = ⟨CO(X)†; ∩, ⊥, {ω}⟩`. Element `i` of the result is
/// `space.clopen_stable()[i]`, labelled by its point list.
pub fn build_dual_lattice(space: &OrthoSpace) -> Result<FiniteOrtholattice> {
    let report = space.check();
    if let Some((condition, witness)) = report.first_failure() {
        return Err(Error::SpaceInvalid { condition, witness });
    }
    let family = space.clopen_stable();
    let index = |u: &PointSet| -> Result<usize> {
        space.index_of_clopen_stable(u).ok_or_else(|| Error::SpaceInvalid {
            condition: 3,
            witness: u.to_vec(),
        })
    };
    let n = family.len();
    let mut meet = vec![vec![0; n]; n];
    for i in 0..n {
        for j in 0..n {
            meet[i][j] = index(&family[i].intersection(&family[j]))?;
        }
    }
    let ortho = family
        .iter()
        .map(|u| index(&space.frame().ortho_complement(u)))
        .collect::<Result<Vec<_>>>()?;
    let zero = index(&PointSet::singleton(space.len(), space.top()))?;
    let names = family
        .iter()
        .map(|u| {
            let pts: Vec<String> = u.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", pts.join(","))
        })
        .collect();
    FiniteOrtholattice::new(format!("A0({})", space.name()), names, meet, ortho, zero)
}
