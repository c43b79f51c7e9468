//! Formulas of the language `F | pᵢ | ¬α | α ∧ α`, their concrete syntax,
//! and a recursive-descent parser.
//!
//! Concrete syntax: `F`, `p<digits>`, `~φ`, `φ & φ`, parentheses. `~` binds
//! tighter than `&`, `&` associates to the left. `φ | ψ` is accepted as sugar
//! for `~(~φ & ~ψ)` and binds looser than `&`. The printer emits only the
//! core syntax and wraps every conjunction in parentheses.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Falsum,
    Var(u32),
    Neg(Box<Formula>),
    Conj(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn var(i: u32) -> Self {
        Formula::Var(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        Formula::Neg(Box::new(self))
    }

    pub fn and(self, other: Formula) -> Self {
        Formula::Conj(Box::new(self), Box::new(other))
    }

    /// `¬(¬self ∧ ¬other)`.
    pub fn or(self, other: Formula) -> Self {
        self.neg().and(other.neg()).neg()
    }

    /// Height of the syntax tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Var(_) => 1,
            Formula::Neg(a) => 1 + a.depth(),
            Formula::Conj(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Formula::Falsum | Formula::Var(_) => 1,
            Formula::Neg(a) => 1 + a.size(),
            Formula::Conj(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Falsum => {}
            Formula::Var(i) => {
                out.insert(*i);
            }
            Formula::Neg(a) => a.collect_vars(out),
            Formula::Conj(a, b) => {
                a.collect_vars(out);
                b.collect_vars(out);
            }
        }
    }

    /// Distinct subformulas, self included, in post-order of first
    /// occurrence.
    pub fn subformulas(&self) -> Vec<Formula> {
        let mut out = Vec::new();
        self.collect_subformulas(&mut out);
        out
    }

    fn collect_subformulas(&self, out: &mut Vec<Formula>) {
        match self {
            Formula::Falsum | Formula::Var(_) => {}
            Formula::Neg(a) => a.collect_subformulas(out),
            Formula::Conj(a, b) => {
                a.collect_subformulas(out);
                b.collect_subformulas(out);
            }
        }
        if !out.contains(self) {
            out.push(self.clone());
        }
    }

    /// `Some(α)` when `self` is `¬α`.
    pub fn as_neg(&self) -> Option<&Formula> {
        match self {
            Formula::Neg(a) => Some(a),
            _ => None,
        }
    }

    /// `Some((α, β))` when `self` is `α ∧ β`.
    pub fn as_conj(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Conj(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Falsum => f.write_str("F"),
            Formula::Var(i) => write!(f, "p{i}"),
            Formula::Neg(a) => write!(f, "~{a}"),
            Formula::Conj(a, b) => write!(f, "({a} & {b})"),
        }
    }
}

impl FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, ParseError> {
        parse(s)
    }
}

impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse(&text).map_err(serde::de::Error::custom)
    }
}

/// Where parsing stopped and what would have been accepted there.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("parse error at position {position}: expected {}, found {}", expected.join(" or "), found.as_deref().unwrap_or("end of input"))]
pub struct ParseError {
    /// Character offset into the input.
    pub position: usize,
    pub expected: Vec<String>,
    pub found: Option<String>,
}

pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
    };
    let f = p.disjunction()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return Err(p.error(&["`&`", "`|`", "end of input"]));
    }
    Ok(f)
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

const FORMULA_START: &[&str] = &["`F`", "variable `p<digits>`", "`~`", "`(`"];

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn error(&self, expected: &[&str]) -> ParseError {
        ParseError {
            position: self.pos,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.chars.get(self.pos).map(|c| format!("`{c}`")),
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while self.peek() == Some('|') {
            self.pos += 1;
            let right = self.conjunction()?;
            left = left.or(right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.peek() == Some('&') {
            self.pos += 1;
            let right = self.unary()?;
            left = left.and(right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some('~') => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some('F') => {
                self.pos += 1;
                Ok(Formula::Falsum)
            }
            Some('p') => {
                self.pos += 1;
                let start = self.pos;
                while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.error(&["digit"]));
                }
                let digits: String = self.chars[start..self.pos].iter().collect();
                digits.parse().map(Formula::Var).map_err(|_| ParseError {
                    position: start,
                    expected: vec!["variable index below 2^32".into()],
                    found: Some(digits),
                })
            }
            Some('(') => {
                self.pos += 1;
                let inner = self.disjunction()?;
                if self.peek() != Some(')') {
                    return Err(self.error(&["`&`", "`|`", "`)`"]));
                }
                self.pos += 1;
                Ok(inner)
            }
            _ => Err(self.error(FORMULA_START)),
        }
    }
}
