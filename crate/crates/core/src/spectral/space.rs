//! Finite orthomodular spaces: a frame, a subbasis, and the family of
//! clopen ⊥-stable sets.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::topology::Topology;
use crate::bitset::PointSet;
use crate::error::{cap_check, Error, Result};
use crate::frame::{FrameDoc, OrthoFrame, RelationDoc};
use crate::par;
use crate::report::{Check, Outcome, Report};
use crate::Limits;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoSpace {
    name: String,
    frame: OrthoFrame,
    subbasis: Vec<PointSet>,
    topology: Topology,
    clopen_stable: Vec<PointSet>,
}

/// Result of [`OrthoSpace::check`]: the nine frame conditions and the six
/// space conditions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceReport {
    pub frame: Report,
    pub space: Report,
}

impl SpaceReport {
    pub fn all_passed(&self) -> bool {
        self.frame.all_passed() && self.space.all_passed()
    }

    /// First failing space condition, as `(number, witness)`.
    pub fn first_failure(&self) -> Option<(u8, Vec<usize>)> {
        self.space.failures().next().map(|c| {
            (
                c.id.parse().expect("numeric condition id"),
                c.outcome.witness().unwrap_or_default().to_vec(),
            )
        })
    }
}

impl std::fmt::Display for SpaceReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{}", self.frame, self.space)
    }
}

/// All ⊥-stable sets of a frame.
///
/// A set is ⊥-stable iff it is `V⊥` for some `V`, and `V⊥` is the
/// intersection of the single-point complements `{y}⊥` for `y ∈ V`, so the
/// stable sets are the intersection closure of those complements together
/// with the whole space.
pub fn stable_sets(frame: &OrthoFrame, cap: usize) -> Result<Vec<PointSet>> {
    let m = frame.len();
    let generators: Vec<PointSet> = (0..m)
        .map(|y| frame.ortho_complement(&PointSet::singleton(m, y)))
        .collect();
    let mut seen: HashSet<PointSet> = HashSet::new();
    let mut queue = VecDeque::from([PointSet::full(m)]);
    seen.insert(PointSet::full(m));
    while let Some(s) = queue.pop_front() {
        for g in &generators {
            let t = s.intersection(g);
            if seen.insert(t.clone()) {
                cap_check("stable-set family", seen.len() as u128, cap as u128)?;
                queue.push_back(t);
            }
        }
    }
    let mut out: Vec<PointSet> = seen.into_iter().collect();
    out.sort_by(|a, b| a.canonical_cmp(b));
    Ok(out)
}

impl OrthoSpace {
    /// Builds the space and computes its clopen ⊥-stable family.
    pub fn new(
        name: impl Into<String>,
        frame: OrthoFrame,
        subbasis: Vec<PointSet>,
        limits: &Limits,
    ) -> Result<Self> {
        let m = frame.len();
        if subbasis.iter().any(|s| s.universe() != m) {
            return Err(Error::Shape(format!("subbasic sets must be over {m} points")));
        }
        let topology = Topology::generated(m, &subbasis);
        let clopen_stable = stable_sets(&frame, limits.max_stable_sets)?
            .into_iter()
            .filter(|u| topology.is_clopen(u))
            .collect();
        Ok(OrthoSpace {
            name: name.into(),
            frame,
            subbasis,
            topology,
            clopen_stable,
        })
    }

    /// Builds the space with a caller-supplied clopen ⊥-stable family; the
    /// family is taken as given and only [`OrthoSpace::check`] vets it.
    pub fn with_family(
        name: impl Into<String>,
        frame: OrthoFrame,
        subbasis: Vec<PointSet>,
        clopen_stable: Vec<PointSet>,
    ) -> Result<Self> {
        let m = frame.len();
        if subbasis.iter().chain(&clopen_stable).any(|s| s.universe() != m) {
            return Err(Error::Shape(format!("point sets must be over {m} points")));
        }
        let topology = Topology::generated(m, &subbasis);
        Ok(OrthoSpace {
            name: name.into(),
            frame,
            subbasis,
            topology,
            clopen_stable,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn frame(&self) -> &OrthoFrame {
        &self.frame
    }

    pub fn len(&self) -> usize {
        self.frame.len()
    }

    pub fn is_empty(&self) -> bool {
        self.frame.is_empty()
    }

    pub fn subbasis(&self) -> &[PointSet] {
        &self.subbasis
    }

    pub fn topology(&self) -> &Topology {
        &self.topology
    }

    /// The family `CO(X)†` in canonical order.
    pub fn clopen_stable(&self) -> &[PointSet] {
        &self.clopen_stable
    }

    pub fn index_of_clopen_stable(&self, u: &PointSet) -> Option<usize> {
        self.clopen_stable.iter().position(|v| v == u)
    }

    /// The `⪯`-greatest point. Panics on structures without one; every space
    /// that passes condition 1 has it.
    pub fn top(&self) -> usize {
        self.frame.top().expect("space has a top point")
    }

    /// Frame conditions 1–9 and space conditions 1–6.
    pub fn check(&self) -> SpaceReport {
        let frame = self.frame.check();
        let mut space = Report::new(format!("orthomodular space `{}` ({} points)", self.name, self.len()));

        let frame_fail = frame.failures().next();
        let c1 = Check::new(
            "1",
            "frame reduct is an orthomodular frame",
            Outcome::from_witness(frame_fail.map(|c| c.outcome.witness().unwrap_or_default().to_vec())),
        );
        space.push(match frame_fail {
            Some(c) => c1.with_note(format!("frame condition {} fails", c.id)),
            None => c1,
        });
        space.push(
            Check::new("2", "compact", Outcome::Pass)
                .with_note("finite topology; compactness holds in the finite setting"),
        );
        space.push(self.condition_3());
        space.push(self.condition_4());
        space.push(self.condition_5());
        space.push(self.condition_6());
        SpaceReport { frame, space }
    }

    fn condition_3(&self) -> Check {
        let desc = "CO(X)† is closed under ∩ and ⊥";
        let family = &self.clopen_stable;
        let members: HashSet<&PointSet> = family.iter().collect();
        if let Some(i) = family
            .iter()
            .position(|u| !self.topology.is_clopen(u) || !self.frame.is_stable(u))
        {
            return Check::new("3", desc, Outcome::Fail { witness: vec![i] })
                .with_note("family member is not clopen and ⊥-stable");
        }
        if let Some(w) = par::find_first(0..family.len(), |i| {
            (i..family.len())
                .find(|&j| !members.contains(&family[i].intersection(&family[j])))
                .map(|j| vec![i, j])
        }) {
            return Check::new("3", desc, Outcome::Fail { witness: w })
                .with_note("intersection leaves the family");
        }
        if let Some(i) = family
            .iter()
            .position(|u| !members.contains(&self.frame.ortho_complement(u)))
        {
            return Check::new("3", desc, Outcome::Fail { witness: vec![i] })
                .with_note("orthocomplement leaves the family");
        }
        Check::new("3", desc, Outcome::Pass)
    }

    fn condition_4(&self) -> Check {
        let desc = "each U ∈ CO(X)† is ↑z for some z ∈ Ω";
        let omega = self.frame.omega_set();
        let w = self
            .clopen_stable
            .iter()
            .position(|u| !omega.iter().any(|z| self.frame.upset(z) == u));
        Check::new("4", desc, Outcome::from_witness(w.map(|i| vec![i])))
    }

    fn condition_5(&self) -> Check {
        let desc = "x ⋠ y is separated by some U ∈ CO(X)†";
        let m = self.len();
        let w = par::find_first(0..m, |x| {
            let mut common = PointSet::full(m);
            for u in self.clopen_stable.iter().filter(|u| u.contains(x)) {
                common.intersect_with(u);
            }
            common
                .difference(self.frame.upset(x))
                .first()
                .map(|y| vec![x, y])
        });
        Check::new("5", desc, Outcome::from_witness(w))
    }

    fn condition_6(&self) -> Check {
        let desc = "x ⊥ y has U ∈ CO(X)† with x ∈ U and y ∈ U⊥";
        let m = self.len();
        let w = par::find_first(0..m, |x| {
            let mut reach = PointSet::empty(m);
            for u in self.clopen_stable.iter().filter(|u| u.contains(x)) {
                reach.union_with(&self.frame.ortho_complement(u));
            }
            self.frame
                .perp_row(x)
                .difference(&reach)
                .first()
                .map(|y| vec![x, y])
        });
        Check::new("6", desc, Outcome::from_witness(w))
    }

    /// Copy with one relation pair flipped and the clopen ⊥-stable family
    /// recomputed from the mutated frame.
    pub fn mutate(&self, relation: Relation, x: usize, y: usize, limits: &Limits) -> Result<Self> {
        let frame = match relation {
            Relation::Order => self.frame.with_order_toggled(x, y),
            Relation::Perp => self.frame.with_perp_toggled(x, y),
        };
        OrthoSpace::new(self.name.clone(), frame, self.subbasis.clone(), limits)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    Order,
    Perp,
}

/// On-disk form: the frame schema plus `subbasis` and `clopen_stable`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SpaceDoc {
    #[serde(default)]
    pub name: Option<String>,
    pub points: usize,
    pub order: RelationDoc,
    pub perp: RelationDoc,
    pub omega: Vec<usize>,
    pub subbasis: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clopen_stable: Option<Vec<Vec<usize>>>,
}

impl SpaceDoc {
    pub fn into_space(self, limits: &Limits) -> Result<OrthoSpace> {
        let m = self.points;
        cap_check("space", m as u128, limits.max_points as u128)?;
        let sets = |v: Vec<Vec<usize>>| -> Result<Vec<PointSet>> {
            v.into_iter()
                .map(|s| {
                    if let Some(&bad) = s.iter().find(|&&x| x >= m) {
                        return Err(Error::Shape(format!("point {bad} out of range")));
                    }
                    Ok(PointSet::from_indices(m, s))
                })
                .collect()
        };
        let frame = FrameDoc {
            points: m,
            order: self.order,
            perp: self.perp,
            omega: self.omega,
        }
        .into_frame()?;
        let name = self.name.unwrap_or_else(|| "space".to_string());
        let subbasis = sets(self.subbasis)?;
        match self.clopen_stable {
            Some(family) => OrthoSpace::with_family(name, frame, subbasis, sets(family)?),
            None => OrthoSpace::new(name, frame, subbasis, limits),
        }
    }
}

impl From<&OrthoSpace> for SpaceDoc {
    fn from(s: &OrthoSpace) -> Self {
        let frame = FrameDoc::from(&s.frame);
        SpaceDoc {
            name: Some(s.name.clone()),
            points: frame.points,
            order: frame.order,
            perp: frame.perp,
            omega: frame.omega,
            subbasis: s.subbasis.iter().map(|u| u.to_vec()).collect(),
            clopen_stable: Some(s.clopen_stable.iter().map(|u| u.to_vec()).collect()),
        }
    }
}

impl Serialize for OrthoSpace {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpaceDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrthoSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        SpaceDoc::deserialize(d)?
            .into_space(&Limits::default())
            .map_err(serde::de::Error::custom)
    }
}
