//! Finite orthomodular frames `⟨X; ⪯, ⊥, Ω⟩`.
//!
//! Relations are stored as rows of point sets in both directions so that
//! every quantifier in the frame conditions becomes a subset test.

use serde::{Deserialize, Serialize};

use crate::bitset::PointSet;
use crate::error::{Error, Result};
use crate::par;
use crate::report::{Check, Outcome, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthoFrame {
    /// `up[x] = {y : x ⪯ y}`
    up: Vec<PointSet>,
    /// `down[y] = {x : x ⪯ y}`
    down: Vec<PointSet>,
    /// `perp[x] = {y : x ⊥ y}`
    perp: Vec<PointSet>,
    /// `perp_to[y] = {x : x ⊥ y}`
    perp_to: Vec<PointSet>,
    omega: PointSet,
    top: Option<usize>,
}

fn transpose(rows: &[PointSet]) -> Vec<PointSet> {
    let m = rows.len();
    let mut cols = vec![PointSet::empty(m); m];
    for (x, row) in rows.iter().enumerate() {
        for y in row {
            cols[y].insert(x);
        }
    }
    cols
}

impl OrthoFrame {
    /// Builds a frame from relation rows (`order[x]` is the set of points
    /// above `x`, `perp[x]` the set of points orthogonal to `x`). Only the
    /// shape is validated; [`OrthoFrame::check`] reports on the conditions.
    pub fn new(order: Vec<PointSet>, perp: Vec<PointSet>, omega: PointSet) -> Result<Self> {
        let m = order.len();
        if perp.len() != m || omega.universe() != m {
            return Err(Error::Shape(format!("frame relations must all be over {m} points")));
        }
        if order.iter().chain(&perp).any(|r| r.universe() != m) {
            return Err(Error::Shape(format!("relation rows must have width {m}")));
        }
        let down = transpose(&order);
        let perp_to = transpose(&perp);
        let top = (0..m).find(|&t| down[t].is_full());
        Ok(OrthoFrame {
            up: order,
            down,
            perp,
            perp_to,
            omega,
            top,
        })
    }

    pub fn from_fn(
        m: usize,
        order: impl Fn(usize, usize) -> bool,
        perp: impl Fn(usize, usize) -> bool,
        omega: impl Fn(usize) -> bool,
    ) -> Self {
        let up = (0..m).map(|x| PointSet::from_fn(m, |y| order(x, y))).collect();
        let pp = (0..m).map(|x| PointSet::from_fn(m, |y| perp(x, y))).collect();
        OrthoFrame::new(up, pp, PointSet::from_fn(m, omega)).expect("shapes agree by construction")
    }

    pub fn len(&self) -> usize {
        self.up.len()
    }

    pub fn is_empty(&self) -> bool {
        self.up.is_empty()
    }

    /// The `⪯`-greatest point `ω`, when one exists.
    pub fn top(&self) -> Option<usize> {
        self.top
    }

    pub fn omega_set(&self) -> &PointSet {
        &self.omega
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x].contains(y)
    }

    #[inline]
    pub fn perp(&self, x: usize, y: usize) -> bool {
        self.perp[x].contains(y)
    }

    pub fn perp_row(&self, x: usize) -> &PointSet {
        &self.perp[x]
    }

    pub fn all_points(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// `↑x = {y : x ⪯ y}`
    pub fn upset(&self, x: usize) -> &PointSet {
        &self.up[x]
    }

    /// `{y : y ⪯ x}`
    pub fn downset(&self, x: usize) -> &PointSet {
        &self.down[x]
    }

    /// Greatest lower bound of `x` and `y`, if there is one.
    pub fn infimum(&self, x: usize, y: usize) -> Option<usize> {
        let lower = self.down[x].intersection(&self.down[y]);
        lower.iter().find(|&g| lower.is_subset(&self.down[g]))
    }

    /// `U⊥ = {x : x ⊥ y for all y ∈ U}`
    pub fn ortho_complement(&self, u: &PointSet) -> PointSet {
        let mut out = self.all_points();
        for y in u {
            out.intersect_with(&self.perp_to[y]);
        }
        out
    }

    pub fn is_stable(&self, u: &PointSet) -> bool {
        &self.ortho_complement(&self.ortho_complement(u)) == u
    }

    /// Copy with the order pair `(x, y)` flipped.
    pub fn with_order_toggled(&self, x: usize, y: usize) -> Self {
        let mut up = self.up.clone();
        up[x].toggle(y);
        OrthoFrame::new(up, self.perp.clone(), self.omega.clone()).expect("same shape")
    }

    /// Copy with the orthogonality pair `(x, y)` flipped.
    pub fn with_perp_toggled(&self, x: usize, y: usize) -> Self {
        let mut perp = self.perp.clone();
        perp[x].toggle(y);
        OrthoFrame::new(self.up.clone(), perp, self.omega.clone()).expect("same shape")
    }

    /// The nine orthomodular-frame conditions, each with its
    /// lexicographically first witness on failure.
    pub fn check(&self) -> Report {
        let mut report = Report::new(format!("orthomodular frame ({} points)", self.len()));
        let conds = par::map(1..10, |c| self.condition(c as u8));
        for c in conds {
            report.push(c);
        }
        report
    }

    fn no_top(id: &str, desc: &str) -> Check {
        Check::new(id, desc, Outcome::Fail { witness: vec![] }).with_note("no ⪯-greatest point")
    }

    fn condition(&self, c: u8) -> Check {
        let m = self.len();
        let omega: Vec<usize> = self.omega.to_vec();
        match c {
            1 => {
                let desc = "⪯ is a partial order with pairwise infima";
                if let Some(x) = (0..m).find(|&x| !self.leq(x, x)) {
                    return Check::new("1", desc, Outcome::Fail { witness: vec![x] })
                        .with_note("not reflexive");
                }
                let anti = par::find_first(0..m, |x| {
                    (0..m)
                        .find(|&y| x != y && self.leq(x, y) && self.leq(y, x))
                        .map(|y| vec![x, y])
                });
                if let Some(w) = anti {
                    return Check::new("1", desc, Outcome::Fail { witness: w })
                        .with_note("not antisymmetric");
                }
                let trans = par::find_first(0..m, |x| {
                    for y in &self.up[x] {
                        if let Some(z) = self.up[y].difference(&self.up[x]).first() {
                            return Some(vec![x, y, z]);
                        }
                    }
                    None
                });
                if let Some(w) = trans {
                    return Check::new("1", desc, Outcome::Fail { witness: w })
                        .with_note("not transitive");
                }
                let inf = par::find_first(0..m, |x| {
                    (0..m).find(|&y| self.infimum(x, y).is_none()).map(|y| vec![x, y])
                });
                match inf {
                    Some(w) => Check::new("1", desc, Outcome::Fail { witness: w })
                        .with_note("pair has no infimum"),
                    None => Check::new("1", desc, Outcome::Pass),
                }
            }
            2 => {
                let desc = "a greatest point ω exists and ω ∈ Ω";
                match self.top {
                    None => Self::no_top("2", desc),
                    Some(t) => Check::new(
                        "2",
                        desc,
                        Outcome::from_witness((!self.omega.contains(t)).then(|| vec![t])),
                    ),
                }
            }
            3 => {
                let desc = "each x ∈ Ω has z ∈ Ω with {y : x ⊥ y} = ↑z and {u : z ⊥ u} ⊆ ↑x";
                let w = omega.iter().copied().find(|&x| {
                    !omega
                        .iter()
                        .any(|&z| self.perp[x] == self.up[z] && self.perp[z].is_subset(&self.up[x]))
                });
                Check::new("3", desc, Outcome::from_witness(w.map(|x| vec![x])))
            }
            4 => {
                let desc = "orthomodularity axiom on Ω";
                let Some(top) = self.top else {
                    return Self::no_top("4", desc);
                };
                let w = par::find_first(0..omega.len(), |i| {
                    let x = omega[i];
                    omega.iter().copied().find_map(|y| {
                        if x == y || !self.leq(y, x) {
                            return None;
                        }
                        let mut hits = self.up[y].intersection(&self.perp_to[x]);
                        hits.remove(top);
                        hits.is_empty().then(|| vec![x, y])
                    })
                });
                Check::new("4", desc, Outcome::from_witness(w))
            }
            5 => {
                let desc = "only ω is self-orthogonal";
                let Some(top) = self.top else {
                    return Self::no_top("5", desc);
                };
                let w = (0..m).find(|&x| x != top && self.perp(x, x));
                Check::new("5", desc, Outcome::from_witness(w.map(|x| vec![x])))
            }
            6 => {
                let desc = "Ω is closed under infima";
                let w = par::find_first(0..omega.len(), |i| {
                    let x = omega[i];
                    omega.iter().copied().find_map(|y| match self.infimum(x, y) {
                        Some(g) if self.omega.contains(g) => None,
                        _ => Some(vec![x, y]),
                    })
                });
                Check::new("6", desc, Outcome::from_witness(w))
            }
            7 => {
                let desc = "every point is orthogonal to ω";
                let Some(top) = self.top else {
                    return Self::no_top("7", desc);
                };
                let w = (0..m).find(|&x| !self.perp(x, top));
                Check::new("7", desc, Outcome::from_witness(w.map(|x| vec![x])))
            }
            8 => {
                let desc = "⊥ is symmetric";
                let w = par::find_first(0..m, |x| {
                    self.perp[x].iter().find(|&y| !self.perp(y, x)).map(|y| vec![x, y])
                });
                Check::new("8", desc, Outcome::from_witness(w))
            }
            9 => {
                let desc = "x ⊥ y and x ⪯ z imply z ⊥ y";
                let w = par::find_first(0..m, |x| {
                    self.perp[x].iter().find_map(|y| {
                        self.up[x]
                            .difference(&self.perp_to[y])
                            .first()
                            .map(|z| vec![x, y, z])
                    })
                });
                Check::new("9", desc, Outcome::from_witness(w))
            }
            _ => unreachable!("frame conditions are numbered 1 to 9"),
        }
    }
}

/// Order relation as either a boolean matrix or a list of related pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelationDoc {
    Matrix(Vec<Vec<bool>>),
    Pairs(Vec<[usize; 2]>),
}

impl RelationDoc {
    fn rows(&self, m: usize) -> Result<Vec<PointSet>> {
        let mut rows = vec![PointSet::empty(m); m];
        match self {
            RelationDoc::Matrix(mat) => {
                if mat.len() != m || mat.iter().any(|r| r.len() != m) {
                    return Err(Error::Shape(format!("relation matrix must be {m}x{m}")));
                }
                for (x, r) in mat.iter().enumerate() {
                    for (y, &b) in r.iter().enumerate() {
                        if b {
                            rows[x].insert(y);
                        }
                    }
                }
            }
            RelationDoc::Pairs(pairs) => {
                for &[x, y] in pairs {
                    if x >= m || y >= m {
                        return Err(Error::Shape(format!("pair ({x}, {y}) out of range")));
                    }
                    rows[x].insert(y);
                }
            }
        }
        Ok(rows)
    }

    fn from_rows(rows: &[PointSet]) -> Self {
        RelationDoc::Pairs(
            rows.iter()
                .enumerate()
                .flat_map(|(x, r)| r.iter().map(move |y| [x, y]))
                .collect(),
        )
    }
}

/// On-disk form: `{"points", "order", "perp", "omega"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FrameDoc {
    pub points: usize,
    pub order: RelationDoc,
    pub perp: RelationDoc,
    pub omega: Vec<usize>,
}

impl FrameDoc {
    pub fn into_frame(self) -> Result<OrthoFrame> {
        let m = self.points;
        if let Some(&bad) = self.omega.iter().find(|&&x| x >= m) {
            return Err(Error::Shape(format!("omega point {bad} out of range")));
        }
        OrthoFrame::new(
            self.order.rows(m)?,
            self.perp.rows(m)?,
            PointSet::from_indices(m, self.omega),
        )
    }
}

impl From<&OrthoFrame> for FrameDoc {
    fn from(f: &OrthoFrame) -> Self {
        FrameDoc {
            points: f.len(),
            order: RelationDoc::from_rows(&f.up),
            perp: RelationDoc::from_rows(&f.perp),
            omega: f.omega.to_vec(),
        }
    }
}

impl Serialize for OrthoFrame {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FrameDoc::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for OrthoFrame {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        FrameDoc::deserialize(d)?
            .into_frame()
            .map_err(serde::de::Error::custom)
    }
}
