//! Seeded random formulas and derivations, and the soundness sweep.
//!
//! Derivations are built forwards so that they are valid by construction:
//! axioms are instantiated with random formulas, and each rule is applied
//! to premises drawn from generators that produce a derivation with a given
//! left side, a given right side, or right side `F`.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::derivation::{check_derivation, Derivation, Rule, Sequent};
use super::semantics::{eval_alg, eval_top, SpaceValuation, Valuation};
use super::Formula;
use crate::error::Result;
use crate::lattice::FiniteOrtholattice;
use crate::par;
use crate::spectral::{build_dual_space, DualSpace};

/// Random formula of depth at most `max_depth` over `p1..=p_vars` and `F`.
pub fn random_formula(rng: &mut impl Rng, max_depth: usize, vars: u32) -> Formula {
    if max_depth <= 1 || rng.random_bool(0.25) {
        let k = rng.random_range(0..=vars);
        return if k == 0 { Formula::Falsum } else { Formula::Var(k) };
    }
    if rng.random_bool(0.4) {
        random_formula(rng, max_depth - 1, vars).neg()
    } else {
        let a = random_formula(rng, max_depth - 1, vars);
        let b = random_formula(rng, max_depth - 1, vars);
        a.and(b)
    }
}

/// Shape parameters for generated derivations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub formula_depth: usize,
    pub derivation_depth: usize,
    pub vars: u32,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            formula_depth: 3,
            derivation_depth: 4,
            vars: 3,
        }
    }
}

struct Gen<'a, R: Rng> {
    rng: &'a mut R,
    p: GenParams,
}

impl<R: Rng> Gen<'_, R> {
    fn formula(&mut self) -> Formula {
        random_formula(self.rng, self.p.formula_depth, self.p.vars)
    }

    fn pick<T: Copy>(&mut self, options: &[T]) -> T {
        options[self.rng.random_range(0..options.len())]
    }

    /// A derivation whose last step is `rule`.
    fn apply(&mut self, rule: Rule, depth: usize) -> Derivation {
        use Rule::*;
        let rule = if depth <= 1 && rule.arity() > 0 {
            self.pick(&[Ax1, Ax2, Ax3, Ax4, Ax5, Ax6])
        } else {
            rule
        };
        match rule {
            Ax1 => {
                let a = self.formula();
                Derivation::axiom(Ax1, a.clone(), a)
            }
            Ax2 => Derivation::axiom(Ax2, Formula::Falsum, self.formula()),
            Ax3 => {
                let (a, b) = (self.formula(), self.formula());
                Derivation::axiom(Ax3, a.clone().and(b), a)
            }
            Ax4 => {
                let (a, b) = (self.formula(), self.formula());
                Derivation::axiom(Ax4, a.and(b.clone()), b)
            }
            Ax5 => {
                let a = self.formula();
                Derivation::axiom(Ax5, a.clone(), a.neg().neg())
            }
            Ax6 => {
                let a = self.formula();
                Derivation::axiom(Ax6, a.clone().neg().neg(), a)
            }
            R7 => {
                let d = self.any(depth - 1);
                let (a, b) = (d.lhs().clone(), d.rhs().clone());
                Derivation::new(R7, b.neg(), a.neg(), vec![d])
            }
            R8 => {
                let d1 = self.any(depth - 1);
                let d2 = self.with_lhs(d1.rhs().clone(), depth - 1);
                Derivation::new(R8, d1.lhs().clone(), d2.rhs().clone(), vec![d1, d2])
            }
            R9 => {
                let d1 = self.any(depth - 1);
                let d2 = self.with_lhs(d1.lhs().clone(), depth - 1);
                let rhs = d1.rhs().clone().and(d2.rhs().clone());
                Derivation::new(R9, d1.lhs().clone(), rhs, vec![d1, d2])
            }
            R10 => self.rule_ten(depth),
        }
    }

    fn any(&mut self, depth: usize) -> Derivation {
        let rule = self.pick(&Rule::ALL);
        self.apply(rule, depth)
    }

    /// `α ⊢ β, ¬α∧β ⊢ F / β ⊢ α`. The second premise is reached through
    /// `¬α∧β ⊢ β ⊢ F` or `¬α∧β ⊢ ¬α ⊢ F`, whichever a falsy derivation
    /// supports.
    fn rule_ten(&mut self, depth: usize) -> Derivation {
        let falsy = self.falsy(depth - 2);
        let via_negation = falsy.lhs().as_neg().cloned().filter(|_| self.rng.random_bool(0.5));
        let (first, second) = match via_negation {
            Some(alpha) => {
                // falsy proves ¬α ⊢ F
                let d1 = self.with_lhs(alpha.clone(), depth - 1);
                let beta = d1.rhs().clone();
                let l = alpha.neg().and(beta);
                let step = Derivation::axiom(Rule::Ax3, l.clone(), falsy.lhs().clone());
                (d1, Derivation::new(Rule::R8, l, Formula::Falsum, vec![step, falsy]))
            }
            None => {
                // falsy proves β ⊢ F
                let beta = falsy.lhs().clone();
                let d1 = self.with_rhs(beta.clone(), depth - 1);
                let l = d1.lhs().clone().neg().and(beta.clone());
                let step = Derivation::axiom(Rule::Ax4, l.clone(), beta);
                (d1, Derivation::new(Rule::R8, l, Formula::Falsum, vec![step, falsy]))
            }
        };
        Derivation::new(
            Rule::R10,
            first.rhs().clone(),
            first.lhs().clone(),
            vec![first, second],
        )
    }

    /// Some derivation of `lhs ⊢ γ`.
    fn with_lhs(&mut self, lhs: Formula, depth: usize) -> Derivation {
        #[derive(Clone, Copy)]
        enum Opt {
            Refl,
            DoubleNeg,
            Left,
            Right,
            DropNeg,
            Falsum,
            Contra,
            Pair,
            Chain,
        }
        let mut opts = vec![Opt::Refl, Opt::DoubleNeg];
        if lhs.as_conj().is_some() {
            opts.extend([Opt::Left, Opt::Right]);
        }
        if lhs.as_neg().and_then(Formula::as_neg).is_some() {
            opts.push(Opt::DropNeg);
        }
        if lhs == Formula::Falsum {
            opts.push(Opt::Falsum);
        }
        if depth > 1 {
            if lhs.as_neg().is_some() {
                opts.push(Opt::Contra);
            }
            opts.extend([Opt::Pair, Opt::Chain]);
        }
        match self.pick(&opts) {
            Opt::Refl => Derivation::axiom(Rule::Ax1, lhs.clone(), lhs),
            Opt::DoubleNeg => Derivation::axiom(Rule::Ax5, lhs.clone(), lhs.neg().neg()),
            Opt::Left => {
                let a = lhs.as_conj().expect("conjunction").0.clone();
                Derivation::axiom(Rule::Ax3, lhs, a)
            }
            Opt::Right => {
                let b = lhs.as_conj().expect("conjunction").1.clone();
                Derivation::axiom(Rule::Ax4, lhs, b)
            }
            Opt::DropNeg => {
                let a = lhs.as_neg().and_then(Formula::as_neg).expect("double negation").clone();
                Derivation::axiom(Rule::Ax6, lhs, a)
            }
            Opt::Falsum => Derivation::axiom(Rule::Ax2, lhs, self.formula()),
            Opt::Contra => {
                // ¬y ⊢ ¬x from x ⊢ y
                let y = lhs.as_neg().expect("negation").clone();
                let d = self.with_rhs(y, depth - 1);
                let x = d.lhs().clone();
                Derivation::new(Rule::R7, lhs, x.neg(), vec![d])
            }
            Opt::Pair => {
                let d1 = self.with_lhs(lhs.clone(), depth - 1);
                let d2 = self.with_lhs(lhs.clone(), depth - 1);
                let rhs = d1.rhs().clone().and(d2.rhs().clone());
                Derivation::new(Rule::R9, lhs, rhs, vec![d1, d2])
            }
            Opt::Chain => {
                let d1 = self.with_lhs(lhs.clone(), depth - 1);
                let d2 = self.with_lhs(d1.rhs().clone(), depth - 1);
                let rhs = d2.rhs().clone();
                Derivation::new(Rule::R8, lhs, rhs, vec![d1, d2])
            }
        }
    }

    /// Some derivation of `α ⊢ rhs`.
    fn with_rhs(&mut self, rhs: Formula, depth: usize) -> Derivation {
        #[derive(Clone, Copy)]
        enum Opt {
            Refl,
            Falsum,
            DropNeg,
            Left,
            Right,
            AddNeg,
            Contra,
            Chain,
        }
        let mut opts = vec![Opt::Refl, Opt::Falsum, Opt::DropNeg, Opt::Left, Opt::Right];
        if rhs.as_neg().and_then(Formula::as_neg).is_some() {
            opts.push(Opt::AddNeg);
        }
        if depth > 1 {
            if rhs.as_neg().is_some() {
                opts.push(Opt::Contra);
            }
            opts.push(Opt::Chain);
        }
        match self.pick(&opts) {
            Opt::Refl => Derivation::axiom(Rule::Ax1, rhs.clone(), rhs),
            Opt::Falsum => Derivation::axiom(Rule::Ax2, Formula::Falsum, rhs),
            Opt::DropNeg => Derivation::axiom(Rule::Ax6, rhs.clone().neg().neg(), rhs),
            Opt::Left => {
                let other = self.formula();
                Derivation::axiom(Rule::Ax3, rhs.clone().and(other), rhs)
            }
            Opt::Right => {
                let other = self.formula();
                Derivation::axiom(Rule::Ax4, other.and(rhs.clone()), rhs)
            }
            Opt::AddNeg => {
                let a = rhs.as_neg().and_then(Formula::as_neg).expect("double negation").clone();
                Derivation::axiom(Rule::Ax5, a, rhs)
            }
            Opt::Contra => {
                // ¬y ⊢ ¬x from x ⊢ y
                let x = rhs.as_neg().expect("negation").clone();
                let d = self.with_lhs(x, depth - 1);
                let y = d.rhs().clone();
                Derivation::new(Rule::R7, y.neg(), rhs, vec![d])
            }
            Opt::Chain => {
                let d2 = self.with_rhs(rhs.clone(), depth - 1);
                let d1 = self.with_rhs(d2.lhs().clone(), depth - 1);
                let lhs = d1.lhs().clone();
                Derivation::new(Rule::R8, lhs, rhs, vec![d1, d2])
            }
        }
    }

    /// Some derivation of `X ⊢ F`.
    fn falsy(&mut self, depth: usize) -> Derivation {
        let f = Formula::Falsum;
        let choice = self.rng.random_range(0..if depth > 1 { 6 } else { 5 });
        match choice {
            0 => Derivation::axiom(Rule::Ax1, f.clone(), f),
            1 => Derivation::axiom(Rule::Ax2, f.clone(), f),
            2 => Derivation::axiom(Rule::Ax3, f.clone().and(self.formula()), f),
            3 => Derivation::axiom(Rule::Ax4, self.formula().and(f.clone()), f),
            4 => Derivation::axiom(Rule::Ax6, f.clone().neg().neg(), f),
            _ => {
                let d2 = self.falsy(depth - 1);
                let d1 = self.with_rhs(d2.lhs().clone(), depth - 1);
                Derivation::new(Rule::R8, d1.lhs().clone(), f, vec![d1, d2])
            }
        }
    }
}

/// A valid derivation whose last step is `rule`; falls back to an axiom
/// when `depth` leaves no room for premises.
pub fn random_derivation_ending_in(rng: &mut impl Rng, rule: Rule, params: GenParams) -> Derivation {
    Gen { rng, p: params }.apply(rule, params.derivation_depth.max(1))
}

pub fn random_derivation(rng: &mut impl Rng, params: GenParams) -> Derivation {
    Gen { rng, p: params }.any(params.derivation_depth.max(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub trials: u64,
    pub seed: u64,
    /// Trial `t` ends in `rules[t % rules.len()]`.
    pub rules: Vec<Rule>,
    pub params: GenParams,
    /// Random valuations per model per trial.
    pub valuations: usize,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            trials: 1000,
            seed: 0,
            rules: Rule::ALL.to_vec(),
            params: GenParams::default(),
            valuations: 4,
        }
    }
}

/// A failed sequent with everything needed to reproduce it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepViolation {
    pub seed: u64,
    pub trial: u64,
    pub rule: Rule,
    /// `"syntax"` when the generated tree failed the checker, otherwise
    /// `"algebraic"` or `"topological"`.
    pub semantics: String,
    pub model: String,
    pub path: Vec<usize>,
    pub sequent: Sequent,
    /// Variable to lattice element (algebraic) or point list (topological).
    pub valuation: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub seed: u64,
    pub trials: u64,
    pub models: Vec<String>,
    pub sequents_checked: u64,
    pub algebraic_checks: u64,
    pub topological_checks: u64,
    pub per_rule: BTreeMap<String, u64>,
    pub violations: Vec<SweepViolation>,
}

/// Trial `t` uses stream `t` of a ChaCha generator seeded with `seed`, so
/// any single trial can be replayed on its own.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

#[derive(Default)]
struct TrialOutcome {
    sequents: u64,
    alg: u64,
    top: u64,
    violations: Vec<SweepViolation>,
}

fn run_trial(
    family: &[FiniteOrtholattice],
    duals: &[DualSpace],
    cfg: &SweepConfig,
    trial: u64,
) -> TrialOutcome {
    let mut rng = trial_rng(cfg.seed, trial);
    let rule = cfg.rules[(trial % cfg.rules.len() as u64) as usize];
    let d = random_derivation_ending_in(&mut rng, rule, cfg.params);
    let mut out = TrialOutcome::default();
    let violation = |semantics: &str, model: &str, path: Vec<usize>, sequent: Sequent, valuation| SweepViolation {
        seed: cfg.seed,
        trial,
        rule,
        semantics: semantics.into(),
        model: model.into(),
        path,
        sequent,
        valuation,
    };
    if let Err(e) = check_derivation(&d) {
        let node = d.nodes().into_iter().find(|(p, _)| *p == e.path).map(|(_, n)| n.conclusion.clone());
        out.violations.push(violation(
            "syntax",
            "",
            e.path,
            node.unwrap_or_else(|| d.conclusion.clone()),
            BTreeMap::new(),
        ));
        return out;
    }
    let nodes = d.nodes();
    out.sequents = nodes.len() as u64;
    for (l, dual) in family.iter().zip(duals) {
        for _ in 0..cfg.valuations {
            let vals: Vec<usize> = (0..cfg.params.vars).map(|_| rng.random_range(0..l.len())).collect();
            let v: Valuation = (1..=cfg.params.vars).zip(vals.iter().copied()).collect();
            let w: SpaceValuation = (1..=cfg.params.vars).zip(vals.iter().map(|&a| dual.h(a))).collect();
            for (path, node) in &nodes {
                let Sequent(a, b) = &node.conclusion;
                out.alg += 1;
                let ok = l.leq(
                    eval_alg(a, l, &v).expect("generated variables are valued"),
                    eval_alg(b, l, &v).expect("generated variables are valued"),
                );
                if !ok {
                    let val = v.iter().map(|(k, &x)| (format!("p{k}"), vec![x])).collect();
                    out.violations
                        .push(violation("algebraic", l.name(), path.clone(), node.conclusion.clone(), val));
                }
                out.top += 1;
                let x = dual.space();
                let ok = eval_top(a, x, &w)
                    .expect("transported values are clopen stable")
                    .is_subset(&eval_top(b, x, &w).expect("transported values are clopen stable"));
                if !ok {
                    let val = w.iter().map(|(k, u)| (format!("p{k}"), u.to_vec())).collect();
                    out.violations
                        .push(violation("topological", x.name(), path.clone(), node.conclusion.clone(), val));
                }
            }
        }
    }
    out
}

/// Generates `cfg.trials` valid derivations and evaluates every sequent in
/// each one under random valuations in every lattice of `family` and, via
/// `h`, in its dual space. Every derivable sequent holds in every
/// orthomodular lattice, so any violation is a bug.
pub fn soundness_sweep(family: &[FiniteOrtholattice], cfg: &SweepConfig) -> Result<SweepReport> {
    let duals = family.iter().map(build_dual_space).collect::<Result<Vec<_>>>()?;
    let outcomes = par::map(0..cfg.trials as usize, |t| run_trial(family, &duals, cfg, t as u64));
    let mut report = SweepReport {
        seed: cfg.seed,
        trials: cfg.trials,
        models: family.iter().map(|l| l.name().to_string()).collect(),
        sequents_checked: 0,
        algebraic_checks: 0,
        topological_checks: 0,
        per_rule: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (t, o) in outcomes.into_iter().enumerate() {
        let rule = cfg.rules[t % cfg.rules.len()];
        *report.per_rule.entry(rule.to_string()).or_default() += 1;
        report.sequents_checked += o.sequents;
        report.algebraic_checks += o.alg;
        report.topological_checks += o.top;
        report.violations.extend(o.violations);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Catalog;

    #[test]
    fn generated_derivations_are_valid() {
        for trial in 0..2000 {
            let mut rng = trial_rng(11, trial);
            let rule = Rule::ALL[(trial % 10) as usize];
            let d = random_derivation_ending_in(&mut rng, rule, GenParams::default());
            assert_eq!(check_derivation(&d), Ok(()), "trial {trial}: {d:?}");
            assert_eq!(d.rule, rule);
        }
    }

    #[test]
    fn random_formulas_respect_depth() {
        let mut rng = trial_rng(3, 0);
        for _ in 0..500 {
            let f = random_formula(&mut rng, 5, 3);
            assert!(f.depth() <= 5);
            assert!(f.vars().iter().all(|&v| (1..=3).contains(&v)));
        }
    }

    #[test]
    fn sweep_is_clean_and_reproducible() {
        let family = vec![Catalog::Oml6.build(64).unwrap(), Catalog::Boolean(1).build(64).unwrap()];
        let cfg = SweepConfig {
            trials: 200,
            ..SweepConfig::default()
        };
        let a = soundness_sweep(&family, &cfg).unwrap();
        assert!(a.violations.is_empty(), "{:?}", a.violations);
        assert_eq!(a.per_rule.len(), 10);
        let b = par::sequential(|| soundness_sweep(&family, &cfg).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn axiom_five_sweep() {
        let family = Catalog::orthomodular_up_to(8)
            .into_iter()
            .map(|c| c.build(64).unwrap())
            .collect::<Vec<_>>();
        let cfg = SweepConfig {
            trials: 1000,
            rules: vec![Rule::Ax5],
            ..SweepConfig::default()
        };
        let r = soundness_sweep(&family, &cfg).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.per_rule["ax5"], 1000);
    }

    #[test]
    fn sweep_catches_an_unsound_rule() {
        // p1 ⊢ p2 holds in no lattice with two distinct values
        let l = Catalog::Boolean(1).build(64).unwrap();
        let dual = build_dual_space(&l).unwrap();
        let bogus = Derivation::axiom(Rule::Ax1, Formula::Var(1), Formula::Var(2));
        assert!(check_derivation(&bogus).is_err());
        let v: Valuation = [(1, 1), (2, 0)].into();
        assert!(!l.leq(eval_alg(bogus.lhs(), &l, &v).unwrap(), eval_alg(bogus.rhs(), &l, &v).unwrap()));
        let w: SpaceValuation = [(1, dual.h(1)), (2, dual.h(0))].into();
        let x = dual.space();
        assert!(!eval_top(bogus.lhs(), x, &w).unwrap().is_subset(&eval_top(bogus.rhs(), x, &w).unwrap()));
    }
}
