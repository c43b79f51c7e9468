//! Lattice homomorphisms and continuous weak p-morphisms, stored as dense
//! index tables over shared source and target objects.

mod doc;
mod dual;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{cap_check, Error, Result};
use crate::lattice::FiniteOrtholattice;
use crate::par;
use crate::spectral::OrthoSpace;
use crate::Limits;

pub use doc::{Morphism, MorphismDoc, MorphismKind, ObjectRef};
pub use dual::{
    dualize_hom, dualize_hom_between, dualize_map, square_lattice_report, square_space_report,
    verify_square_lattice, verify_square_space,
};

/// Which defining condition a morphism table broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Condition {
    /// `φ(a · b) = φ(a) · φ(b)`
    Meet,
    /// `φ(−a) = −φ(a)`
    Ortho,
    /// `φ(0) = 0′`
    Zero,
    /// preimage of every subbasic open is open
    Continuity,
    /// `x ⊥̸ y ⇒ ψ(x) ⊥̸ ψ(y)`
    Forth,
    /// `z′ ⊥̸ ψ(y) ⇒ ∃x (x ⊥̸ y ∧ z′ ⪯ ψ(x))`
    Back,
}

impl Condition {
    /// Number within its definition; continuity has none.
    pub fn number(self) -> Option<u8> {
        match self {
            Condition::Meet | Condition::Forth => Some(1),
            Condition::Ortho | Condition::Back => Some(2),
            Condition::Zero => Some(3),
            Condition::Continuity => None,
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            Condition::Meet => "φ(a·b) = φ(a)·φ(b)",
            Condition::Ortho => "φ(−a) = −φ(a)",
            Condition::Zero => "φ(0) = 0′",
            Condition::Continuity => "continuity",
            Condition::Forth => "x ⊥̸ y ⇒ ψ(x) ⊥̸ ψ(y)",
            Condition::Back => "z′ ⊥̸ ψ(y) ⇒ ∃x (x ⊥̸ y ∧ z′ ⪯ ψ(x))",
        };
        match self.number() {
            Some(n) => write!(f, "condition {n} ({text})"),
            None => f.write_str(text),
        }
    }
}

/// First failure of a morphism condition, in checking order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub condition: Condition,
    pub witness: Vec<usize>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at {:?}", self.condition, self.witness)
    }
}

fn table_shape(table: &[usize], source_len: usize, target_len: usize) -> Result<()> {
    if table.len() != source_len {
        return Err(Error::Shape(format!(
            "table has {} entries, source has {source_len}",
            table.len()
        )));
    }
    if let Some(&bad) = table.iter().find(|&&t| t >= target_len) {
        return Err(Error::Shape(format!("table entry {bad} out of range for target of size {target_len}")));
    }
    Ok(())
}

/// A total map between ortholattices. Construction checks only the shape;
/// [`check_hom`] decides whether it is a homomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeHom {
    source: Arc<FiniteOrtholattice>,
    target: Arc<FiniteOrtholattice>,
    table: Vec<usize>,
}

impl LatticeHom {
    pub fn new(source: Arc<FiniteOrtholattice>, target: Arc<FiniteOrtholattice>, table: Vec<usize>) -> Result<Self> {
        table_shape(&table, source.len(), target.len())?;
        Ok(LatticeHom { source, target, table })
    }

    pub fn identity(l: Arc<FiniteOrtholattice>) -> Self {
        let table = l.elements().collect();
        LatticeHom {
            source: l.clone(),
            target: l,
            table,
        }
    }

    pub fn source(&self) -> &Arc<FiniteOrtholattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteOrtholattice> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, a: usize) -> usize {
        self.table[a]
    }

    /// The hom if [`check_hom`] passes, `HomInvalid` otherwise.
    pub fn validated(self) -> Result<Self> {
        check_hom(&self).map_err(Error::HomInvalid)?;
        Ok(self)
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &LatticeHom) -> Result<LatticeHom> {
        if *g.target != *self.source {
            return Err(Error::TypeMismatch(format!(
                "codomain `{}` is not domain `{}`",
                g.target.name(),
                self.source.name()
            )));
        }
        Ok(LatticeHom {
            source: g.source.clone(),
            target: self.target.clone(),
            table: g.table.iter().map(|&b| self.table[b]).collect(),
        })
    }

    /// Copy with `table[a]` replaced.
    pub fn with_entry(&self, a: usize, value: usize) -> Result<Self> {
        let mut table = self.table.clone();
        table[a] = value;
        LatticeHom::new(self.source.clone(), self.target.clone(), table)
    }
}

/// Checks `φ(0) = 0′`, then `φ(−a) = −φ(a)`, then `φ(a·b) = φ(a)·φ(b)`,
/// cheapest first, each over all arguments in index order.
pub fn check_hom(phi: &LatticeHom) -> Result<(), Violation> {
    let (s, t, m) = (&*phi.source, &*phi.target, &phi.table);
    if m[s.zero()] != t.zero() {
        return Err(Violation {
            condition: Condition::Zero,
            witness: vec![s.zero()],
        });
    }
    if let Some(a) = s.elements().find(|&a| m[s.ortho(a)] != t.ortho(m[a])) {
        return Err(Violation {
            condition: Condition::Ortho,
            witness: vec![a],
        });
    }
    let n = s.len();
    if let Some(w) = par::find_first(0..n, |a| {
        (0..n)
            .find(|&b| m[s.meet(a, b)] != t.meet(m[a], m[b]))
            .map(|b| vec![a, b])
    }) {
        return Err(Violation {
            condition: Condition::Meet,
            witness: w,
        });
    }
    Ok(())
}

/// Every homomorphism `l → l2`, tables in lexicographic order.
///
/// Backtracks over elements in index order; `0` and complements of
/// assigned elements are forced, and every meet whose three arguments are
/// assigned is checked as soon as the last one is placed.
pub fn enumerate_homs(
    l: &Arc<FiniteOrtholattice>,
    l2: &Arc<FiniteOrtholattice>,
    limits: &Limits,
) -> Result<Vec<LatticeHom>> {
    cap_check(
        "homomorphism search space",
        l.len() as u128 * l2.len() as u128,
        limits.max_hom_search,
    )?;
    let n = l.len();
    let mut table = vec![usize::MAX; n];
    let mut out = Vec::new();
    search(l, l2, 0, &mut table, &mut out);
    Ok(out
        .into_iter()
        .map(|table| LatticeHom {
            source: l.clone(),
            target: l2.clone(),
            table,
        })
        .collect())
}

fn consistent(s: &FiniteOrtholattice, t: &FiniteOrtholattice, table: &[usize], a: usize) -> bool {
    let unset = usize::MAX;
    let oa = s.ortho(a);
    if table[oa] != unset && table[oa] != t.ortho(table[a]) {
        return false;
    }
    for b in 0..=a {
        if table[b] == unset {
            continue;
        }
        // the new element may be an argument or the meet itself
        let c = s.meet(a, b);
        if table[c] != unset && table[c] != t.meet(table[a], table[b]) {
            return false;
        }
    }
    for x in 0..=a {
        for y in 0..=a {
            if s.meet(x, y) == a && table[x] != unset && table[y] != unset && table[a] != t.meet(table[x], table[y]) {
                return false;
            }
        }
    }
    true
}

fn search(
    s: &FiniteOrtholattice,
    t: &FiniteOrtholattice,
    a: usize,
    table: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if a == s.len() {
        out.push(table.clone());
        return;
    }
    let forced = if a == s.zero() {
        Some(t.zero())
    } else if table[s.ortho(a)] != usize::MAX {
        Some(t.ortho(table[s.ortho(a)]))
    } else {
        None
    };
    let candidates: Vec<usize> = match forced {
        Some(v) => vec![v],
        None => t.elements().collect(),
    };
    for v in candidates {
        table[a] = v;
        if consistent(s, t, table, a) {
            search(s, t, a + 1, table, out);
        }
        table[a] = usize::MAX;
    }
}

/// A total map between spaces. Construction checks only the shape;
/// [`check_weak_p`] decides whether it is a continuous weak p-morphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakPMorphism {
    source: Arc<OrthoSpace>,
    target: Arc<OrthoSpace>,
    table: Vec<usize>,
}

impl WeakPMorphism {
    pub fn new(source: Arc<OrthoSpace>, target: Arc<OrthoSpace>, table: Vec<usize>) -> Result<Self> {
        table_shape(&table, source.len(), target.len())?;
        Ok(WeakPMorphism { source, target, table })
    }

    pub fn identity(x: Arc<OrthoSpace>) -> Self {
        let table = (0..x.len()).collect();
        WeakPMorphism {
            source: x.clone(),
            target: x,
            table,
        }
    }

    pub fn source(&self) -> &Arc<OrthoSpace> {
        &self.source
    }

    pub fn target(&self) -> &Arc<OrthoSpace> {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    pub fn validated(self) -> Result<Self> {
        check_weak_p(&self).map_err(Error::MapInvalid)?;
        Ok(self)
    }

    /// `self ∘ g`: first `g`, then `self`.
    pub fn compose(&self, g: &WeakPMorphism) -> Result<WeakPMorphism> {
        if *g.target != *self.source {
            return Err(Error::TypeMismatch(format!(
                "codomain `{}` is not domain `{}`",
                g.target.name(),
                self.source.name()
            )));
        }
        Ok(WeakPMorphism {
            source: g.source.clone(),
            target: self.target.clone(),
            table: g.table.iter().map(|&y| self.table[y]).collect(),
        })
    }

    pub fn with_entry(&self, x: usize, value: usize) -> Result<Self> {
        let mut table = self.table.clone();
        table[x] = value;
        WeakPMorphism::new(self.source.clone(), self.target.clone(), table)
    }

    /// `ψ⁻¹[U]` for a target point set.
    pub fn preimage(&self, u: &crate::PointSet) -> crate::PointSet {
        crate::PointSet::from_fn(self.source.len(), |x| u.contains(self.table[x]))
    }
}

/// Checks continuity on the target's subbasis, then the forth condition
/// over all pairs `(x, y)`, then the back condition over all `(z′, y)`.
/// Rows involving `ω` are included; they hold vacuously in valid spaces.
pub fn check_weak_p(psi: &WeakPMorphism) -> Result<(), Violation> {
    let (s, t) = (&*psi.source, &*psi.target);
    if let Some(i) = t
        .subbasis()
        .iter()
        .position(|u| !s.topology().is_open(&psi.preimage(u)))
    {
        return Err(Violation {
            condition: Condition::Continuity,
            witness: vec![i],
        });
    }
    let (sf, tf, m) = (s.frame(), t.frame(), &psi.table);
    let n = s.len();
    if let Some(w) = par::find_first(0..n, |x| {
        (0..n)
            .find(|&y| !sf.perp(x, y) && tf.perp(m[x], m[y]))
            .map(|y| vec![x, y])
    }) {
        return Err(Violation {
            condition: Condition::Forth,
            witness: w,
        });
    }
    if let Some(w) = par::find_first(0..t.len(), |z| {
        (0..n)
            .find(|&y| !tf.perp(z, m[y]) && !(0..n).any(|x| !sf.perp(x, y) && tf.leq(z, m[x])))
            .map(|y| vec![z, y])
    }) {
        return Err(Violation {
            condition: Condition::Back,
            witness: w,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests;
