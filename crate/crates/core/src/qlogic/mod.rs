//! The binary sequent calculus: formulas, derivations, bounded proof
//! search, algebraic and topological semantics, and a seeded soundness
//! sweep.

mod derivation;
mod formula;
mod prover;
mod semantics;
mod sweep;

pub use derivation::{check_derivation, Derivation, Rule, RuleViolation, Sequent};
pub use formula::{parse, Formula, ParseError};
pub use prover::{prove_bounded, prove_with, ProofSearch, SearchOptions};
pub use semantics::{
    consequence_alg, consequence_top, eval_alg, eval_top, semantics_agree, AlgCountermodel, Consequence,
    SpaceValuation, TopCountermodel, Valuation,
};
pub use sweep::{
    random_derivation, random_derivation_ending_in, random_formula, soundness_sweep, trial_rng, GenParams,
    SweepConfig, SweepReport, SweepViolation,
};
