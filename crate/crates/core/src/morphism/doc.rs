//! Morphism JSON: `{"kind": "hom"|"map", "source", "target", "table"}`.
//!
//! `source` and `target` are either a catalog name or an inline object.
//! For a `map`, a catalog name stands for the dual space of that lattice.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{LatticeHom, WeakPMorphism};
use crate::error::{Error, Result};
use crate::lattice::{Catalog, FiniteOrtholattice, LatticeDoc};
use crate::spectral::{build_dual_space_with, OrthoSpace, SpaceDoc};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MorphismKind {
    Hom,
    Map,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ObjectRef {
    Named(String),
    Lattice(LatticeDoc),
    Space(SpaceDoc),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismDoc {
    pub kind: MorphismKind,
    pub source: ObjectRef,
    pub target: ObjectRef,
    pub table: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Morphism {
    Hom(LatticeHom),
    Map(WeakPMorphism),
}

impl ObjectRef {
    fn lattice(self, limits: &Limits) -> Result<FiniteOrtholattice> {
        match self {
            ObjectRef::Named(name) => name.parse::<Catalog>()?.build(limits.max_lattice),
            ObjectRef::Lattice(doc) => FiniteOrtholattice::try_from(doc),
            ObjectRef::Space(_) => Err(Error::Shape("a hom needs lattices, not spaces".into())),
        }
    }

    fn space(self, limits: &Limits) -> Result<OrthoSpace> {
        match self {
            ObjectRef::Named(name) => {
                let l = name.parse::<Catalog>()?.build(limits.max_lattice)?;
                Ok(build_dual_space_with(&l, limits)?.into_space())
            }
            ObjectRef::Space(doc) => doc.into_space(limits),
            ObjectRef::Lattice(_) => Err(Error::Shape("a map needs spaces, not lattices".into())),
        }
    }

    fn of_lattice(l: &FiniteOrtholattice) -> Self {
        let built = l
            .name()
            .parse::<Catalog>()
            .ok()
            .filter(|c| c.size() == l.len() as u128)
            .and_then(|c| c.build(l.len()).ok());
        match built {
            Some(built) if &built == l => ObjectRef::Named(l.name().to_string()),
            _ => ObjectRef::Lattice(l.clone().into()),
        }
    }
}

impl MorphismDoc {
    /// Builds the tables. Shape is checked; validity is left to
    /// `check_hom` / `check_weak_p`.
    pub fn resolve(self, limits: &Limits) -> Result<Morphism> {
        match self.kind {
            MorphismKind::Hom => Ok(Morphism::Hom(LatticeHom::new(
                Arc::new(self.source.lattice(limits)?),
                Arc::new(self.target.lattice(limits)?),
                self.table,
            )?)),
            MorphismKind::Map => Ok(Morphism::Map(WeakPMorphism::new(
                Arc::new(self.source.space(limits)?),
                Arc::new(self.target.space(limits)?),
                self.table,
            )?)),
        }
    }
}

impl From<&LatticeHom> for MorphismDoc {
    fn from(phi: &LatticeHom) -> Self {
        MorphismDoc {
            kind: MorphismKind::Hom,
            source: ObjectRef::of_lattice(phi.source()),
            target: ObjectRef::of_lattice(phi.target()),
            table: phi.table().to_vec(),
        }
    }
}

impl From<&WeakPMorphism> for MorphismDoc {
    fn from(psi: &WeakPMorphism) -> Self {
        MorphismDoc {
            kind: MorphismKind::Map,
            source: ObjectRef::Space(SpaceDoc::from(&**psi.source())),
            target: ObjectRef::Space(SpaceDoc::from(&**psi.target())),
            table: psi.table().to_vec(),
        }
    }
}
