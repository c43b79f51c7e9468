//! Argument resolution: files, catalog names, formulas, families.

use std::path::Path;

use orthodual::lattice::{Catalog, LatticeDoc};
use orthodual::qlogic::{parse, Formula};
use orthodual::{Error, FiniteOrtholattice, Limits};
use serde::de::DeserializeOwned;

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or unreadable input: exit 2.
    Usage(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Lib(Error::SizeCapExceeded { .. }) => 3,
            Failure::Lib(Error::Parse(_) | Error::UnknownCatalogEntry(_) | Error::Json(_)) => 2,
            Failure::Lib(_) => 1,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Lib(e) => match e {
                Error::Shape(_) => "shape",
                Error::AxiomViolation { .. } => "axiom-violation",
                Error::SizeCapExceeded { .. } => "size-cap-exceeded",
                Error::NotOrthomodular(_) => "not-orthomodular",
                Error::SpaceInvalid { .. } => "space-invalid",
                Error::HomInvalid(_) => "hom-invalid",
                Error::MapInvalid(_) => "map-invalid",
                Error::TypeMismatch(_) => "type-mismatch",
                Error::UnboundVariable(_) => "unbound-variable",
                Error::ValueOutsideCoStable(_) => "value-outside-co-stable",
                Error::Parse(_) => "parse",
                Error::UnknownCatalogEntry(_) => "unknown-catalog-entry",
                Error::Json(_) => "json",
            },
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Usage(m) => m.clone(),
            Failure::Lib(e) => e.to_string(),
        }
    }
}

pub type Res<T> = Result<T, Failure>;

pub fn read_json<T: DeserializeOwned>(path: &str) -> Res<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read `{path}`: {e}")))?;
    serde_json::from_str(&text).map_err(|e| Failure::Lib(Error::Json(e)))
}

/// A JSON file if `arg` names an existing path, a catalog entry otherwise.
pub fn lattice_doc(arg: &str, limits: &Limits) -> Res<LatticeDoc> {
    if Path::new(arg).is_file() {
        return read_json(arg);
    }
    let c: Catalog = arg.parse()?;
    Ok(c.build(limits.max_lattice)?.into())
}

pub fn lattice(arg: &str, limits: &Limits) -> Res<FiniteOrtholattice> {
    let doc = lattice_doc(arg, limits)?;
    if doc.elements.len() > limits.max_lattice {
        return Err(Error::SizeCapExceeded {
            what: "lattice",
            size: doc.elements.len() as u128,
            cap: limits.max_lattice as u128,
        }
        .into());
    }
    Ok(FiniteOrtholattice::try_from(doc)?)
}

pub fn formula(text: &str) -> Res<Formula> {
    Ok(parse(text).map_err(Error::from)?)
}

pub fn family(spec: &str, max_size: usize, limits: &Limits) -> Res<Vec<FiniteOrtholattice>> {
    if spec.trim() == "catalog" {
        return Catalog::orthomodular_up_to(max_size)
            .into_iter()
            .map(|c| Ok(c.build(limits.max_lattice)?))
            .collect();
    }
    let out = spec
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|item| lattice(item, limits))
        .collect::<Res<Vec<_>>>()?;
    if out.is_empty() {
        return Err(Failure::Usage("empty --family".into()));
    }
    Ok(out)
}

/// `p1=a,p2=-b` against the element labels of `l`.
pub fn valuation(spec: &str, l: &FiniteOrtholattice) -> Res<Vec<(u32, usize)>> {
    spec.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|pair| {
            let (var, label) = pair
                .split_once('=')
                .ok_or_else(|| Failure::Usage(format!("expected `p<i>=<label>`, found `{pair}`")))?;
            let i = var
                .trim()
                .strip_prefix('p')
                .and_then(|d| d.parse::<u32>().ok())
                .ok_or_else(|| Failure::Usage(format!("bad variable `{var}`")))?;
            let a = l
                .index_of(label.trim())
                .ok_or_else(|| Failure::Usage(format!("`{}` is not an element of {}", label.trim(), l.name())))?;
            Ok((i, a))
        })
        .collect()
}
