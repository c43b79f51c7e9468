//! Algebraic and topological semantics, and consequence over finite
//! families of models.
//!
//! Valuations are enumerated with variables in ascending order, the first
//! variable most significant, and values in ascending index order; the
//! first counterexample in that order is the one reported.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::Formula;
use crate::bitset::PointSet;
use crate::error::{cap_check, Error, Result};
use crate::lattice::FiniteOrtholattice;
use crate::par;
use crate::spectral::{build_dual_space_with, OrthoSpace};
use crate::Limits;

pub type Valuation = BTreeMap<u32, usize>;
pub type SpaceValuation = BTreeMap<u32, PointSet>;

pub fn eval_alg(phi: &Formula, l: &FiniteOrtholattice, v: &Valuation) -> Result<usize> {
    Ok(match phi {
        Formula::Falsum => l.zero(),
        Formula::Var(i) => {
            let a = *v.get(i).ok_or(Error::UnboundVariable(*i))?;
            if a >= l.len() {
                return Err(Error::Shape(format!("value {a} of p{i} is not an element")));
            }
            a
        }
        Formula::Neg(a) => l.ortho(eval_alg(a, l, v)?),
        Formula::Conj(a, b) => l.meet(eval_alg(a, l, v)?, eval_alg(b, l, v)?),
    })
}

pub fn eval_top(phi: &Formula, x: &OrthoSpace, v: &SpaceValuation) -> Result<PointSet> {
    for f in phi.vars() {
        let u = v.get(&f).ok_or(Error::UnboundVariable(f))?;
        if x.index_of_clopen_stable(u).is_none() {
            return Err(Error::ValueOutsideCoStable(f));
        }
    }
    Ok(eval_top_unchecked(phi, x, v))
}

fn eval_top_unchecked(phi: &Formula, x: &OrthoSpace, v: &SpaceValuation) -> PointSet {
    match phi {
        Formula::Falsum => PointSet::singleton(x.len(), x.top()),
        Formula::Var(i) => v[i].clone(),
        Formula::Neg(a) => x.frame().ortho_complement(&eval_top_unchecked(a, x, v)),
        Formula::Conj(a, b) => eval_top_unchecked(a, x, v).intersection(&eval_top_unchecked(b, x, v)),
    }
}

/// Verdict of a consequence query over an explicit finite family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Consequence<M> {
    /// Every valuation in every member satisfies the sequent. This says
    /// nothing about models outside the family.
    HoldsOverFamily { models: usize, valuations: u128 },
    Countermodel(M),
    /// Some member was too large to enumerate and sampling found nothing.
    Inconclusive { sampled: u64, seed: u64 },
}

impl<M> Consequence<M> {
    pub fn holds(&self) -> bool {
        matches!(self, Consequence::HoldsOverFamily { .. })
    }

    pub fn countermodel(&self) -> Option<&M> {
        match self {
            Consequence::Countermodel(m) => Some(m),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgCountermodel {
    pub lattice: FiniteOrtholattice,
    pub valuation: Valuation,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TopCountermodel {
    pub space: OrthoSpace,
    pub valuation: SpaceValuation,
    pub lhs: PointSet,
    pub rhs: PointSet,
}

#[derive(Serialize)]
struct LabelledValue<'a> {
    index: usize,
    label: &'a str,
}

#[derive(Serialize)]
struct AlgCountermodelDoc<'a> {
    semantics: &'static str,
    model: &'a str,
    lattice: &'a FiniteOrtholattice,
    valuation: BTreeMap<String, LabelledValue<'a>>,
    lhs: LabelledValue<'a>,
    rhs: LabelledValue<'a>,
}

impl Serialize for AlgCountermodel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let l = &self.lattice;
        let lv = |a: usize| LabelledValue {
            index: a,
            label: l.label(a),
        };
        AlgCountermodelDoc {
            semantics: "algebraic",
            model: l.name(),
            lattice: l,
            valuation: self.valuation.iter().map(|(k, &a)| (format!("p{k}"), lv(a))).collect(),
            lhs: lv(self.lhs),
            rhs: lv(self.rhs),
        }
        .serialize(s)
    }
}

#[derive(Serialize)]
struct TopCountermodelDoc<'a> {
    semantics: &'static str,
    model: &'a str,
    space: &'a OrthoSpace,
    valuation: BTreeMap<String, Vec<usize>>,
    lhs: Vec<usize>,
    rhs: Vec<usize>,
}

impl Serialize for TopCountermodel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TopCountermodelDoc {
            semantics: "topological",
            model: self.space.name(),
            space: &self.space,
            valuation: self.valuation.iter().map(|(k, u)| (format!("p{k}"), u.to_vec())).collect(),
            lhs: self.lhs.to_vec(),
            rhs: self.rhs.to_vec(),
        }
        .serialize(s)
    }
}

/// Decodes the `code`-th valuation of `vars` over `k` values, first
/// variable most significant.
fn decode(code: u128, vars: &[u32], k: usize) -> Vec<usize> {
    let mut out = vec![0; vars.len()];
    let mut c = code;
    for slot in out.iter_mut().rev() {
        *slot = (c % k as u128) as usize;
        c /= k as u128;
    }
    out
}

fn sequent_vars(alpha: &Formula, beta: &Formula) -> Vec<u32> {
    alpha.vars().union(&beta.vars()).copied().collect()
}

/// Searches one model of `k` candidate values per variable. Exhaustive when
/// `k^|vars|` is within the cap, seeded sampling otherwise.
fn search_model<T: Send>(
    vars: &[u32],
    k: usize,
    limits: &Limits,
    seed: u64,
    test: impl Fn(&[usize]) -> Option<T> + Sync + Send,
) -> (Option<T>, Option<u64>) {
    let total = (k as u128).checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    if total <= limits.max_valuations {
        let hit = par::find_first(0..total as usize, |code| test(&decode(code as u128, vars, k)));
        return (hit, None);
    }
    let samples = limits.max_valuations as u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let v: Vec<usize> = vars.iter().map(|_| rng.random_range(0..k)).collect();
        if let Some(t) = test(&v) {
            return (Some(t), Some(samples));
        }
    }
    (None, Some(samples))
}

fn no_countermodel<M>(sampled: u64, seed: u64, models: usize, valuations: u128) -> Consequence<M> {
    if sampled > 0 {
        Consequence::Inconclusive { sampled, seed }
    } else {
        Consequence::HoldsOverFamily { models, valuations }
    }
}

/// `α ⊨ β` over each lattice of `family`: `v̂(α) ≤ v̂(β)` for every valuation.
pub fn consequence_alg(
    alpha: &Formula,
    beta: &Formula,
    family: &[FiniteOrtholattice],
    limits: &Limits,
    seed: u64,
) -> Consequence<AlgCountermodel> {
    let vars = sequent_vars(alpha, beta);
    let (mut sampled, mut valuations) = (0, 0u128);
    for l in family {
        let (hit, s) = search_model(&vars, l.len(), limits, seed, |vals| {
            let v: Valuation = vars.iter().copied().zip(vals.iter().copied()).collect();
            let lhs = eval_alg(alpha, l, &v).expect("total valuation");
            let rhs = eval_alg(beta, l, &v).expect("total valuation");
            (!l.leq(lhs, rhs)).then(|| AlgCountermodel {
                lattice: l.clone(),
                valuation: v,
                lhs,
                rhs,
            })
        });
        if let Some(m) = hit {
            return Consequence::Countermodel(m);
        }
        match s {
            Some(n) => sampled += n,
            None => valuations += (l.len() as u128).pow(vars.len() as u32),
        }
    }
    no_countermodel(sampled, seed, family.len(), valuations)
}

/// `α ⊨ β` over each space of `family`: `v̂(α) ⊆ v̂(β)` for every
/// valuation into `CO(X)†`.
pub fn consequence_top(
    alpha: &Formula,
    beta: &Formula,
    family: &[OrthoSpace],
    limits: &Limits,
    seed: u64,
) -> Consequence<TopCountermodel> {
    let vars = sequent_vars(alpha, beta);
    let (mut sampled, mut valuations) = (0, 0u128);
    for x in family {
        let co = x.clopen_stable();
        let (hit, s) = search_model(&vars, co.len(), limits, seed, |vals| {
            let v: SpaceValuation = vars.iter().copied().zip(vals.iter().map(|&i| co[i].clone())).collect();
            let lhs = eval_top_unchecked(alpha, x, &v);
            let rhs = eval_top_unchecked(beta, x, &v);
            (!lhs.is_subset(&rhs)).then(|| TopCountermodel {
                space: x.clone(),
                valuation: v,
                lhs,
                rhs,
            })
        });
        if let Some(m) = hit {
            return Consequence::Countermodel(m);
        }
        match s {
            Some(n) => sampled += n,
            None => valuations += (co.len() as u128).pow(vars.len() as u32),
        }
    }
    no_countermodel(sampled, seed, family.len(), valuations)
}

/// Whether consequence over `{L}` and over `{S₀(L)}` coincide, both by
/// exhaustive enumeration, and whether every single valuation `v` of `L`
/// agrees with its transport `h ∘ v`.
pub fn semantics_agree(alpha: &Formula, beta: &Formula, l: &FiniteOrtholattice, limits: &Limits) -> Result<bool> {
    let vars = sequent_vars(alpha, beta);
    let total = (l.len() as u128).checked_pow(vars.len() as u32).unwrap_or(u128::MAX);
    cap_check("valuation space", total, limits.max_valuations)?;
    let dual = build_dual_space_with(l, limits)?;
    let x = dual.space();
    let alg = consequence_alg(alpha, beta, std::slice::from_ref(l), limits, 0);
    let top = consequence_top(alpha, beta, std::slice::from_ref(x), limits, 0);
    if alg.holds() != top.holds() {
        return Ok(false);
    }
    let k = l.len();
    let disagreement = par::find_first(0..total as usize, |code| {
        let vals = decode(code as u128, &vars, k);
        let v: Valuation = vars.iter().copied().zip(vals.iter().copied()).collect();
        let w: SpaceValuation = vars.iter().copied().zip(vals.iter().map(|&a| dual.h(a))).collect();
        let a_ok = l.leq(eval_alg(alpha, l, &v).ok()?, eval_alg(beta, l, &v).ok()?);
        let t_ok = eval_top_unchecked(alpha, x, &w).is_subset(&eval_top_unchecked(beta, x, &w));
        (a_ok != t_ok).then_some(code)
    });
    Ok(disagreement.is_none())
}
