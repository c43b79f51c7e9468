use thiserror::Error;

use crate::lattice::{LatticeCondition, OrthomodularWitness};
use crate::morphism::Violation;
use crate::qlogic::ParseError;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    Shape(String),

    #[error("ortholattice axiom {condition} fails at {witness:?}")]
    AxiomViolation {
        condition: LatticeCondition,
        witness: Vec<usize>,
    },

    #[error("{what} of size {size} exceeds the cap of {cap}")]
    SizeCapExceeded {
        what: &'static str,
        size: u128,
        cap: u128,
    },

    #[error("lattice is not orthomodular: {0}")]
    NotOrthomodular(OrthomodularWitness),

    #[error("space condition {condition} fails at {witness:?}")]
    SpaceInvalid { condition: u8, witness: Vec<usize> },

    #[error("not a lattice homomorphism: {0}")]
    HomInvalid(Violation),

    #[error("not a continuous weak p-morphism: {0}")]
    MapInvalid(Violation),

    #[error("morphisms are not composable: {0}")]
    TypeMismatch(String),

    #[error("variable p{0} has no value")]
    UnboundVariable(u32),

    #[error("value of p{0} is not a clopen perp-stable set")]
    ValueOutsideCoStable(u32),

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error("unknown catalog entry `{0}`")]
    UnknownCatalogEntry(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn cap_check(what: &'static str, size: u128, cap: u128) -> Result<()> {
    if size > cap {
        Err(Error::SizeCapExceeded { what, size, cap })
    } else {
        Ok(())
    }
}
