//! Finite ortholattices in the reduced signature (meet, orthocomplement, 0).
//!
//! Elements are dense indices `0..n`. The order and the join are derived
//! from the meet table and the orthocomplement; nothing else is stored.

mod catalog;
mod hasse;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::report::{Check, Outcome, Report};

pub use catalog::Catalog;
pub use hasse::{covers, to_dot};

/// The ortholattice condition that a table failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LatticeCondition {
    MeetIdempotent,
    MeetCommutative,
    MeetAssociative,
    ZeroLeast,
    /// `a · −a = 0`
    Complement,
    /// `a ≤ b ⇒ −b ≤ −a`
    Antitone,
    /// `−−a = a`
    Involution,
}

impl LatticeCondition {
    pub fn id(self) -> &'static str {
        match self {
            LatticeCondition::MeetIdempotent => "1-idempotent",
            LatticeCondition::MeetCommutative => "1-commutative",
            LatticeCondition::MeetAssociative => "1-associative",
            LatticeCondition::ZeroLeast => "1-zero",
            LatticeCondition::Complement => "2a",
            LatticeCondition::Antitone => "2b",
            LatticeCondition::Involution => "2c",
        }
    }

    pub fn description(self) -> &'static str {
        match self {
            LatticeCondition::MeetIdempotent => "meet is idempotent",
            LatticeCondition::MeetCommutative => "meet is commutative",
            LatticeCondition::MeetAssociative => "meet is associative",
            LatticeCondition::ZeroLeast => "zero is least",
            LatticeCondition::Complement => "a · −a = 0",
            LatticeCondition::Antitone => "orthocomplement is antitone",
            LatticeCondition::Involution => "orthocomplement is an involution",
        }
    }

    pub const ALL: [LatticeCondition; 7] = [
        LatticeCondition::MeetIdempotent,
        LatticeCondition::MeetCommutative,
        LatticeCondition::MeetAssociative,
        LatticeCondition::ZeroLeast,
        LatticeCondition::Complement,
        LatticeCondition::Antitone,
        LatticeCondition::Involution,
    ];
}

impl fmt::Display for LatticeCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({})", self.id(), self.description())
    }
}

/// A certified failure of orthomodularity: `a ≤ b`, `−a · b = 0`, `a ≠ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrthomodularWitness {
    pub a: usize,
    pub b: usize,
}

impl fmt::Display for OrthomodularWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.b)
    }
}

/// A validated finite ortholattice `⟨A; ·, −, 0⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LatticeDoc", into = "LatticeDoc")]
pub struct FiniteOrtholattice {
    name: String,
    names: Vec<String>,
    meet: Vec<usize>,
    ortho: Vec<usize>,
    zero: usize,
}

/// On-disk form: `{"name", "elements", "meet", "ortho", "zero"}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LatticeDoc {
    pub name: String,
    pub elements: Vec<String>,
    pub meet: Vec<Vec<usize>>,
    pub ortho: Vec<usize>,
    pub zero: usize,
}

impl LatticeDoc {
    /// Every ortholattice condition with its first witness, without
    /// stopping at the first failure. Only shape errors are returned as
    /// `Err`.
    pub fn condition_report(&self) -> Result<Report> {
        let l = FiniteOrtholattice::from_tables(
            self.name.clone(),
            self.elements.clone(),
            self.meet.clone(),
            self.ortho.clone(),
            self.zero,
        )?;
        let mut report = Report::new(format!("ortholattice `{}` ({} elements)", self.name, self.elements.len()));
        for c in LatticeCondition::ALL {
            report.push(Check::new(c.id(), c.description(), Outcome::from_witness(l.condition_witness(c))));
        }
        Ok(report)
    }
}

impl TryFrom<LatticeDoc> for FiniteOrtholattice {
    type Error = Error;

    fn try_from(doc: LatticeDoc) -> Result<Self> {
        FiniteOrtholattice::new(doc.name, doc.elements, doc.meet, doc.ortho, doc.zero)
    }
}

impl From<FiniteOrtholattice> for LatticeDoc {
    fn from(l: FiniteOrtholattice) -> Self {
        let n = l.len();
        LatticeDoc {
            meet: (0..n).map(|a| l.meet[a * n..(a + 1) * n].to_vec()).collect(),
            name: l.name,
            elements: l.names,
            ortho: l.ortho,
            zero: l.zero,
        }
    }
}

impl FiniteOrtholattice {
    /// Shape checks only; the ortholattice conditions are not evaluated.
    fn from_tables(
        name: impl Into<String>,
        names: Vec<String>,
        meet: Vec<Vec<usize>>,
        ortho: Vec<usize>,
        zero: usize,
    ) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::Shape("a lattice needs at least one element".into()));
        }
        if meet.len() != n || meet.iter().any(|row| row.len() != n) {
            return Err(Error::Shape(format!("meet table must be {n}x{n}")));
        }
        if ortho.len() != n {
            return Err(Error::Shape(format!("ortho map must have length {n}")));
        }
        if zero >= n {
            return Err(Error::Shape(format!("zero index {zero} out of range")));
        }
        if let Some(bad) = meet.iter().flatten().chain(&ortho).find(|&&v| v >= n) {
            return Err(Error::Shape(format!("table entry {bad} out of range")));
        }
        Ok(FiniteOrtholattice {
            name: name.into(),
            names,
            meet: meet.into_iter().flatten().collect(),
            ortho,
            zero,
        })
    }

    /// Validates the tables against every ortholattice condition.
    pub fn new(
        name: impl Into<String>,
        names: Vec<String>,
        meet: Vec<Vec<usize>>,
        ortho: Vec<usize>,
        zero: usize,
    ) -> Result<Self> {
        let lattice = Self::from_tables(name, names, meet, ortho, zero)?;
        if let Some((condition, witness)) = lattice.first_violation() {
            return Err(Error::AxiomViolation { condition, witness });
        }
        Ok(lattice)
    }

    /// First failing condition in [`LatticeCondition::ALL`] order, with its
    /// lexicographically first witness.
    pub fn first_violation(&self) -> Option<(LatticeCondition, Vec<usize>)> {
        LatticeCondition::ALL
            .into_iter()
            .find_map(|c| self.condition_witness(c).map(|w| (c, w)))
    }

    /// Lexicographically first witness against `condition`, if any.
    pub fn condition_witness(&self, condition: LatticeCondition) -> Option<Vec<usize>> {
        let n = self.len();
        match condition {
            LatticeCondition::MeetIdempotent => {
                (0..n).find(|&a| self.meet(a, a) != a).map(|a| vec![a])
            }
            LatticeCondition::MeetCommutative => par::find_first(0..n, |a| {
                (0..n)
                    .find(|&b| self.meet(a, b) != self.meet(b, a))
                    .map(|b| vec![a, b])
            }),
            LatticeCondition::MeetAssociative => par::find_first(0..n, |a| {
                for b in 0..n {
                    let ab = self.meet(a, b);
                    for c in 0..n {
                        if self.meet(a, self.meet(b, c)) != self.meet(ab, c) {
                            return Some(vec![a, b, c]);
                        }
                    }
                }
                None
            }),
            LatticeCondition::ZeroLeast => (0..n)
                .find(|&a| self.meet(self.zero, a) != self.zero)
                .map(|a| vec![a]),
            LatticeCondition::Complement => (0..n)
                .find(|&a| self.meet(a, self.ortho(a)) != self.zero)
                .map(|a| vec![a]),
            LatticeCondition::Antitone => par::find_first(0..n, |a| {
                (0..n)
                    .find(|&b| self.leq(a, b) && !self.leq(self.ortho(b), self.ortho(a)))
                    .map(|b| vec![a, b])
            }),
            LatticeCondition::Involution => (0..n)
                .find(|&a| self.ortho(self.ortho(a)) != a)
                .map(|a| vec![a]),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, a: usize) -> &str {
        &self.names[a]
    }

    /// Index of the element carrying `label`.
    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.names.iter().position(|n| n == label)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// Always false: a lattice has at least `0`.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    /// The top element, `−0`.
    pub fn one(&self) -> usize {
        self.ortho[self.zero]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.len() + b]
    }

    #[inline]
    pub fn ortho(&self, a: usize) -> usize {
        self.ortho[a]
    }

    /// `a ≤ b` iff `a · b = a`.
    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.meet(a, b) == a
    }

    /// `a + b := −(−a · −b)`.
    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.ortho(self.meet(self.ortho(a), self.ortho(b)))
    }

    /// Meet of a list of elements; the top for an empty list.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.one(), |acc, x| self.meet(acc, x))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// `Ok` iff `a ≤ b` and `−a · b = 0` force `a = b`; otherwise the
    /// lexicographically first counterexample.
    pub fn check_orthomodular(&self) -> std::result::Result<(), OrthomodularWitness> {
        let n = self.len();
        let hit = par::find_first(0..n, |a| {
            (0..n)
                .find(|&b| a != b && self.leq(a, b) && self.meet(self.ortho(a), b) == self.zero)
                .map(|b| OrthomodularWitness { a, b })
        });
        match hit {
            None => Ok(()),
            Some(w) => Err(w),
        }
    }

    pub fn is_orthomodular(&self) -> bool {
        self.check_orthomodular().is_ok()
    }

    /// `Ok` iff `a · (b + c) = (a · b) + (a · c)` for every triple; otherwise
    /// the lexicographically first failing `(a, b, c)`.
    pub fn check_distributive(&self) -> std::result::Result<(), [usize; 3]> {
        let n = self.len();
        let hit = par::find_first(0..n, |a| {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.meet(a, self.join(b, c));
                    let rhs = self.join(self.meet(a, b), self.meet(a, c));
                    if lhs != rhs {
                        return Some([a, b, c]);
                    }
                }
            }
            None
        });
        match hit {
            None => Ok(()),
            Some(t) => Err(t),
        }
    }

    pub fn is_distributive(&self) -> bool {
        self.check_distributive().is_ok()
    }

    /// The principal filter `↑a` as a sorted index list.
    pub fn upset(&self, a: usize) -> Vec<usize> {
        self.elements().filter(|&b| self.leq(a, b)).collect()
    }
}

impl fmt::Display for FiniteOrtholattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} elements)", self.name, self.len())
    }
}
