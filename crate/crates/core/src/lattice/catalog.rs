//! Named lattices.
//!
//! Element order convention: index 0 is `0`, the last index is `1`, and
//! `−i = n − 1 − i` for every element. For `mo(k)` this lists the atoms
//! `a₁ … a_k` followed by their complements in reverse; for `boolean(k)`
//! the index is the bitmask of atoms below the element.

use std::fmt;
use std::str::FromStr;

use super::FiniteOrtholattice;
use crate::error::{cap_check, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Catalog {
    /// The four-element Boolean algebra.
    O2x2,
    /// The hexagon: an ortholattice that is not orthomodular.
    O6,
    /// `mo(2)`, the smallest non-distributive orthomodular lattice.
    Oml6,
    /// Powerset of a `k`-element set.
    Boolean(u32),
    /// Horizontal sum of `k` four-element Boolean algebras.
    Mo(u32),
}

impl Catalog {
    /// The fixed entries plus a few small members of each family.
    pub fn listing() -> Vec<Catalog> {
        vec![
            Catalog::O2x2,
            Catalog::O6,
            Catalog::Oml6,
            Catalog::Boolean(1),
            Catalog::Boolean(3),
            Catalog::Mo(3),
        ]
    }

    /// Orthomodular catalog lattices with at most `max_elements` elements,
    /// each isomorphism type once: `boolean(k)` for `k ≥ 1`, `OML6`, and
    /// `mo(k)` for `k ≥ 3` (`mo(1)` is `O2x2`, `mo(2)` is `OML6`).
    pub fn orthomodular_up_to(max_elements: usize) -> Vec<Catalog> {
        let mut out = Vec::new();
        let mut k = 1;
        while (1usize << k) <= max_elements {
            out.push(if k == 2 { Catalog::O2x2 } else { Catalog::Boolean(k) });
            k += 1;
        }
        if 6 <= max_elements {
            out.push(Catalog::Oml6);
        }
        let mut k = 3;
        while (2 * k + 2) as usize <= max_elements {
            out.push(Catalog::Mo(k));
            k += 1;
        }
        out.sort_by_key(|c| (c.size(), c.to_string()));
        out
    }

    /// Element count, without building the tables.
    pub fn size(&self) -> u128 {
        match *self {
            Catalog::O2x2 => 4,
            Catalog::O6 | Catalog::Oml6 => 6,
            Catalog::Boolean(k) => 1u128.checked_shl(k).unwrap_or(u128::MAX),
            Catalog::Mo(k) => 2 * k as u128 + 2,
        }
    }

    pub fn build(&self, max_elements: usize) -> Result<FiniteOrtholattice> {
        if matches!(self, Catalog::Boolean(0) | Catalog::Mo(0)) {
            return Err(Error::Shape("catalog parameter k must be at least 1".into()));
        }
        cap_check("catalog lattice", self.size(), max_elements as u128)?;
        let lattice = match *self {
            Catalog::O2x2 => boolean(2)?.relabel(["0", "a", "-a", "1"]),
            Catalog::O6 => hexagon()?,
            Catalog::Oml6 => mo(2)?,
            Catalog::Boolean(k) => boolean(k)?,
            Catalog::Mo(k) => mo(k)?,
        };
        Ok(lattice.with_name(self.to_string()))
    }
}

impl fmt::Display for Catalog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Catalog::O2x2 => write!(f, "O2x2"),
            Catalog::O6 => write!(f, "O6"),
            Catalog::Oml6 => write!(f, "OML6"),
            Catalog::Boolean(k) => write!(f, "boolean({k})"),
            Catalog::Mo(k) => write!(f, "mo({k})"),
        }
    }
}

impl FromStr for Catalog {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let lower = t.to_ascii_lowercase();
        match lower.as_str() {
            "o2x2" => return Ok(Catalog::O2x2),
            "o6" => return Ok(Catalog::O6),
            "oml6" => return Ok(Catalog::Oml6),
            _ => {}
        }
        let param = |prefix: &str| -> Option<u32> {
            lower
                .strip_prefix(prefix)?
                .strip_prefix('(')?
                .strip_suffix(')')?
                .trim()
                .parse()
                .ok()
        };
        if let Some(k) = param("boolean") {
            return Ok(Catalog::Boolean(k));
        }
        if let Some(k) = param("mo") {
            return Ok(Catalog::Mo(k));
        }
        Err(Error::UnknownCatalogEntry(t.to_string()))
    }
}

fn atom_name(i: usize, k: usize) -> String {
    if k <= 26 {
        ((b'a' + i as u8) as char).to_string()
    } else {
        format!("a{}", i + 1)
    }
}

fn boolean(k: u32) -> Result<FiniteOrtholattice> {
    let n = 1usize << k;
    let full = n - 1;
    let names = (0..n)
        .map(|m| match m {
            0 => "0".to_string(),
            m if m == full => "1".to_string(),
            m => (0..k as usize)
                .filter(|i| m >> i & 1 == 1)
                .map(|i| atom_name(i, k as usize))
                .collect::<Vec<_>>()
                .join("+"),
        })
        .collect();
    let meet = (0..n).map(|a| (0..n).map(|b| a & b).collect()).collect();
    let ortho = (0..n).map(|a| full & !a).collect();
    FiniteOrtholattice::new(format!("boolean({k})"), names, meet, ortho, 0)
}

fn mo(k: u32) -> Result<FiniteOrtholattice> {
    let k = k as usize;
    let n = 2 * k + 2;
    let mut names = vec!["0".to_string()];
    names.extend((0..k).map(|i| atom_name(i, k)));
    names.extend((0..k).rev().map(|i| format!("-{}", atom_name(i, k))));
    names.push("1".to_string());
    let top = n - 1;
    let meet = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| match (a, b) {
                    _ if a == b => a,
                    (x, y) if x == top => y,
                    (x, y) if y == top => x,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    let ortho = (0..n).map(|a| n - 1 - a).collect();
    FiniteOrtholattice::new(format!("mo({k})"), names, meet, ortho, 0)
}

/// `0 < b < a < 1` and `0 < −a < −b < 1`.
fn hexagon() -> Result<FiniteOrtholattice> {
    let names: Vec<String> = ["0", "b", "a", "-a", "-b", "1"].map(String::from).into();
    let below: [&[usize]; 6] = [&[0], &[0, 1], &[0, 1, 2], &[0, 3], &[0, 3, 4], &[0, 1, 2, 3, 4, 5]];
    let leq = |x: usize, y: usize| below[y].contains(&x);
    let meet = (0..6)
        .map(|a| {
            (0..6)
                .map(|b| {
                    (0..6)
                        .filter(|&c| leq(c, a) && leq(c, b))
                        .max_by_key(|&c| below[c].len())
                        .expect("0 is a lower bound")
                })
                .collect()
        })
        .collect();
    FiniteOrtholattice::new("O6", names, meet, vec![5, 4, 3, 2, 1, 0], 0)
}

impl FiniteOrtholattice {
    fn relabel<const N: usize>(mut self, labels: [&str; N]) -> Self {
        assert_eq!(labels.len(), self.len());
        self.names = labels.iter().map(|s| s.to_string()).collect();
        self
    }
}
