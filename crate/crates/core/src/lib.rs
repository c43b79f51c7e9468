//! Finite orthomodular lattices, their dual orthomodular spaces, and the
//! quantum logic they interpret.
//!
//! The crate is organised bottom-up:
//!
//! - [`lattice`]: validated ortholattice tables, orthomodularity and
//!   distributivity deciders, a catalog of named lattices, Hasse export.
//! - [`frame`]: orthomodular frames `⟨X; ⪯, ⊥, Ω⟩` and their nine conditions.
//! - [`spectral`]: filter spectra, clopen ⊥-stable sets, and exhaustive
//!   verification of both round trips.
//! - [`morphism`]: lattice homomorphisms, continuous weak p-morphisms, the
//!   dual functors on arrows, and the commuting squares.
//! - [`qlogic`]: formulas, derivations, bounded proof search, and both
//!   semantics.
//!
//! Exhaustive checks run on the rayon pool when the `parallel` feature is on
//! (the default). Results never depend on scheduling; see [`par`].

pub mod bitset;
pub mod error;
pub mod frame;
pub mod lattice;
pub mod morphism;
pub mod par;
pub mod qlogic;
pub mod report;
pub mod spectral;

pub use bitset::{IndexSet, PointSet};
pub use error::{Error, Result};
pub use frame::OrthoFrame;
pub use lattice::{Catalog, FiniteOrtholattice};
pub use report::{Check, Outcome, Report};
pub use spectral::{build_dual_lattice, build_dual_space, DualSpace, Filter, OrthoSpace};

/// Size caps for every enumeration the crate performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest lattice accepted for construction or dualization.
    pub max_lattice: usize,
    /// Largest space (number of points).
    pub max_points: usize,
    /// Largest open-set family that will be materialized.
    pub max_opens: usize,
    /// Largest ⊥-stable family that will be enumerated.
    pub max_stable_sets: usize,
    /// Largest `|L|^|Var|` enumerated exhaustively before sampling.
    pub max_valuations: u128,
    /// Largest `|L|·|L′|` for homomorphism search.
    pub max_hom_search: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_lattice: 64,
            max_points: 4096,
            max_opens: 1 << 16,
            max_stable_sets: 1 << 16,
            max_valuations: 1 << 20,
            max_hom_search: 64 * 64,
        }
    }
}
