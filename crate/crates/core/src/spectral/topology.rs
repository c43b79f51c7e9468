//! Topologies on finite point sets, generated from a subbasis.
//!
//! A finite topology is determined by the minimal open neighbourhood of each
//! point: the intersection of all subbasic sets containing it. A set is open
//! iff it contains the minimal neighbourhood of each of its points.

use std::collections::HashSet;

use crate::bitset::PointSet;
use crate::error::{cap_check, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Topology {
    neighbourhoods: Vec<PointSet>,
}

impl Topology {
    pub fn generated(points: usize, subbasis: &[PointSet]) -> Self {
        let neighbourhoods = (0..points)
            .map(|x| {
                let mut n = PointSet::full(points);
                for s in subbasis.iter().filter(|s| s.contains(x)) {
                    n.intersect_with(s);
                }
                n
            })
            .collect();
        Topology { neighbourhoods }
    }

    pub fn points(&self) -> usize {
        self.neighbourhoods.len()
    }

    /// Smallest open set containing `x`.
    pub fn neighbourhood(&self, x: usize) -> &PointSet {
        &self.neighbourhoods[x]
    }

    pub fn is_open(&self, u: &PointSet) -> bool {
        u.iter().all(|x| self.neighbourhoods[x].is_subset(u))
    }

    pub fn is_closed(&self, u: &PointSet) -> bool {
        self.is_open(&u.complement())
    }

    pub fn is_clopen(&self, u: &PointSet) -> bool {
        self.is_open(u) && self.is_closed(u)
    }

    pub fn is_discrete(&self) -> bool {
        self.neighbourhoods.iter().all(|n| n.count() == 1)
    }

    /// Distinct minimal neighbourhoods; every open set is a union of these.
    pub fn basis(&self) -> Vec<PointSet> {
        let mut seen = HashSet::new();
        let mut out: Vec<PointSet> = self
            .neighbourhoods
            .iter()
            .filter(|n| seen.insert((*n).clone()))
            .cloned()
            .collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        out
    }

    /// Every open set, in canonical order, or `SizeCapExceeded` once the
    /// family grows past `cap`.
    pub fn materialize(&self, cap: usize) -> Result<Vec<PointSet>> {
        let m = self.points();
        let basis = self.basis();
        // each basis set at most doubles the family
        let mut family: HashSet<PointSet> = HashSet::from([PointSet::empty(m)]);
        for b in &basis {
            let grown: Vec<PointSet> = family.iter().map(|u| u.union(b)).collect();
            family.extend(grown);
            cap_check("open-set family", family.len() as u128, cap as u128)?;
        }
        let mut out: Vec<PointSet> = family.into_iter().collect();
        out.sort_by(|a, b| a.canonical_cmp(b));
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_subbasis_with_complements_is_discrete() {
        let s = vec![
            PointSet::singleton(2, 1),
            PointSet::singleton(2, 0),
            PointSet::full(2),
            PointSet::empty(2),
        ];
        let t = Topology::generated(2, &s);
        assert!(t.is_discrete());
        assert_eq!(t.materialize(1 << 16).unwrap().len(), 4);
    }

    #[test]
    fn sierpinski_space() {
        let t = Topology::generated(2, &[PointSet::singleton(2, 0)]);
        let opens = t.materialize(16).unwrap();
        assert_eq!(opens.len(), 3);
        assert!(t.is_open(&PointSet::singleton(2, 0)));
        assert!(!t.is_open(&PointSet::singleton(2, 1)));
        assert!(t.is_closed(&PointSet::singleton(2, 1)));
        assert!(!t.is_clopen(&PointSet::singleton(2, 0)));
    }

    #[test]
    fn materialization_respects_cap() {
        let s: Vec<PointSet> = (0..20).map(|i| PointSet::singleton(20, i)).collect();
        let t = Topology::generated(20, &s);
        assert!(t.materialize(1 << 16).is_err());
        assert!(t.is_open(&PointSet::from_indices(20, [3, 7])));
    }
}
