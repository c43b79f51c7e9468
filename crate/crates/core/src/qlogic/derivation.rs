//! Derivations in the binary calculus: axioms `ax1`–`ax6` and rules
//! `r7`–`r10`, checked node by node against their schemas.
//!
//! ```text
//! ax1  α ⊢ α            ax4  α∧β ⊢ β          r7   α ⊢ β  /  ¬β ⊢ ¬α
//! ax2  F ⊢ β            ax5  α ⊢ ¬¬α          r8   α ⊢ β,  β ⊢ γ  /  α ⊢ γ
//! ax3  α∧β ⊢ α          ax6  ¬¬α ⊢ α          r9   α ⊢ β,  α ⊢ γ  /  α ⊢ β∧γ
//!                                             r10  α ⊢ β,  ¬α∧β ⊢ F  /  β ⊢ α
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use super::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    Ax1,
    Ax2,
    Ax3,
    Ax4,
    Ax5,
    Ax6,
    R7,
    R8,
    R9,
    R10,
}

impl Rule {
    pub const ALL: [Rule; 10] = [
        Rule::Ax1,
        Rule::Ax2,
        Rule::Ax3,
        Rule::Ax4,
        Rule::Ax5,
        Rule::Ax6,
        Rule::R7,
        Rule::R8,
        Rule::R9,
        Rule::R10,
    ];

    pub fn arity(self) -> usize {
        match self {
            Rule::R7 => 1,
            Rule::R8 | Rule::R9 | Rule::R10 => 2,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Rule::Ax1 => "ax1",
            Rule::Ax2 => "ax2",
            Rule::Ax3 => "ax3",
            Rule::Ax4 => "ax4",
            Rule::Ax5 => "ax5",
            Rule::Ax6 => "ax6",
            Rule::R7 => "r7",
            Rule::R8 => "r8",
            Rule::R9 => "r9",
            Rule::R10 => "r10",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `α ⊢ β`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sequent(pub Formula, pub Formula);

impl fmt::Display for Sequent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊢ {}", self.0, self.1)
    }
}

/// A proof tree. JSON: `{"rule": "r9", "conclusion": [α, β], "premises": [...]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Derivation {
    pub rule: Rule,
    pub conclusion: Sequent,
    #[serde(default)]
    pub premises: Vec<Derivation>,
}

impl Derivation {
    pub fn axiom(rule: Rule, lhs: Formula, rhs: Formula) -> Self {
        Derivation {
            rule,
            conclusion: Sequent(lhs, rhs),
            premises: Vec::new(),
        }
    }

    pub fn new(rule: Rule, lhs: Formula, rhs: Formula, premises: Vec<Derivation>) -> Self {
        Derivation {
            rule,
            conclusion: Sequent(lhs, rhs),
            premises,
        }
    }

    pub fn lhs(&self) -> &Formula {
        &self.conclusion.0
    }

    pub fn rhs(&self) -> &Formula {
        &self.conclusion.1
    }

    /// Height of the tree; a single axiom has height 1.
    pub fn height(&self) -> usize {
        1 + self.premises.iter().map(Derivation::height).max().unwrap_or(0)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises.iter().map(Derivation::node_count).sum::<usize>()
    }

    /// Every node with its path from the root, in pre-order.
    pub fn nodes(&self) -> Vec<(Vec<usize>, &Derivation)> {
        let mut out = Vec::new();
        let mut stack = vec![(Vec::new(), self)];
        while let Some((path, d)) = stack.pop() {
            for (i, p) in d.premises.iter().enumerate().rev() {
                let mut child = path.clone();
                child.push(i);
                stack.push((child, p));
            }
            out.push((path, d));
        }
        out
    }
}

/// The first node, in pre-order, that does not instantiate its rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, thiserror::Error)]
#[error("rule {rule} violated at node {path:?}: {reason}")]
pub struct RuleViolation {
    /// Premise indices from the root.
    pub path: Vec<usize>,
    pub rule: Rule,
    pub reason: String,
}

/// Why a single node does not instantiate its rule, if it does not.
fn node_error(d: &Derivation) -> Option<String> {
    use Formula::*;
    let Sequent(a, b) = &d.conclusion;
    if d.premises.len() != d.rule.arity() {
        return Some(format!(
            "{} takes {} premises, found {}",
            d.rule,
            d.rule.arity(),
            d.premises.len()
        ));
    }
    let prem = |i: usize| &d.premises[i].conclusion;
    let ok = match d.rule {
        Rule::Ax1 => a == b,
        Rule::Ax2 => *a == Falsum,
        Rule::Ax3 => a.as_conj().is_some_and(|(x, _)| x == b),
        Rule::Ax4 => a.as_conj().is_some_and(|(_, y)| y == b),
        Rule::Ax5 => b.as_neg().and_then(Formula::as_neg) == Some(a),
        Rule::Ax6 => a.as_neg().and_then(Formula::as_neg) == Some(b),
        Rule::R7 => {
            let Sequent(pa, pb) = prem(0);
            a.as_neg() == Some(pb) && b.as_neg() == Some(pa)
        }
        Rule::R8 => {
            let (Sequent(x, y), Sequent(y2, z)) = (prem(0), prem(1));
            x == a && z == b && y == y2
        }
        Rule::R9 => {
            let (Sequent(x, y), Sequent(x2, z)) = (prem(0), prem(1));
            x == a && x2 == a && b.as_conj() == Some((y, z))
        }
        Rule::R10 => {
            let (Sequent(x, y), Sequent(l, r)) = (prem(0), prem(1));
            y == a && x == b && *r == Falsum && l.as_conj().is_some_and(|(nx, y2)| nx.as_neg() == Some(x) && y2 == y)
        }
    };
    (!ok).then(|| format!("conclusion {} does not match the schema of {}", d.conclusion, d.rule))
}

/// `Ok` iff every node instantiates its rule schema.
pub fn check_derivation(d: &Derivation) -> Result<(), RuleViolation> {
    for (path, node) in d.nodes() {
        if let Some(reason) = node_error(node) {
            return Err(RuleViolation {
                path,
                rule: node.rule,
                reason,
            });
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qlogic::parse;

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn commute() -> Derivation {
        Derivation::new(
            Rule::R9,
            f("p1 & p2"),
            f("p2 & p1"),
            vec![
                Derivation::axiom(Rule::Ax4, f("p1 & p2"), f("p2")),
                Derivation::axiom(Rule::Ax3, f("p1 & p2"), f("p1")),
            ],
        )
    }

    #[test]
    fn axioms() {
        for a in ["p1", "F", "~(p1 & p2)"] {
            assert!(check_derivation(&Derivation::axiom(Rule::Ax1, f(a), f(a))).is_ok());
        }
        assert!(check_derivation(&Derivation::axiom(Rule::Ax2, f("F"), f("p3"))).is_ok());
        assert!(check_derivation(&Derivation::axiom(Rule::Ax5, f("p1"), f("~~p1"))).is_ok());
        assert!(check_derivation(&Derivation::axiom(Rule::Ax6, f("~~p1"), f("p1"))).is_ok());
        assert!(check_derivation(&Derivation::axiom(Rule::Ax6, f("~p1"), f("p1"))).is_err());
        assert!(check_derivation(&Derivation::axiom(Rule::Ax3, f("p1 & p2"), f("p2"))).is_err());
    }

    #[test]
    fn commutation_tree() {
        let d = commute();
        assert_eq!(check_derivation(&d), Ok(()));
        assert_eq!(d.height(), 2);
        assert_eq!(d.node_count(), 3);
    }

    #[test]
    fn contraposition_direction_matters() {
        let wrong_atom = Derivation::new(
            Rule::R7,
            f("~p2"),
            f("~(p2 & p1)"),
            vec![Derivation::axiom(Rule::Ax4, f("p2 & p1"), f("p1"))],
        );
        assert!(check_derivation(&wrong_atom).is_err());
        let good = Derivation::new(
            Rule::R7,
            f("~p1"),
            f("~(p2 & p1)"),
            vec![Derivation::axiom(Rule::Ax4, f("p2 & p1"), f("p1"))],
        );
        assert_eq!(check_derivation(&good), Ok(()));
        // premise (α, β) with conclusion (¬α, ¬β)
        let bad = Derivation::new(
            Rule::R7,
            f("~(p2 & p1)"),
            f("~p1"),
            vec![Derivation::axiom(Rule::Ax4, f("p2 & p1"), f("p1"))],
        );
        let err = check_derivation(&bad).unwrap_err();
        assert_eq!(err.path, Vec::<usize>::new());
        assert_eq!(err.rule, Rule::R7);
    }

    #[test]
    fn reports_first_bad_node_in_preorder() {
        let mut d = commute();
        d.premises[1].rule = Rule::Ax4;
        let err = check_derivation(&d).unwrap_err();
        assert_eq!(err.path, vec![1]);
        assert_eq!(err.rule, Rule::Ax4);

        d.premises.pop();
        assert_eq!(check_derivation(&d).unwrap_err().path, Vec::<usize>::new());
    }

    #[test]
    fn rule_ten() {
        // α = p1, β = p1: premises p1 ⊢ p1 and ¬p1∧p1 ⊢ F
        let falsy = Derivation::new(
            Rule::R8,
            f("~p1 & F"),
            f("F"),
            vec![
                Derivation::axiom(Rule::Ax4, f("~p1 & F"), f("F")),
                Derivation::axiom(Rule::Ax1, f("F"), f("F")),
            ],
        );
        let d = Derivation::new(
            Rule::R10,
            f("F"),
            f("p1"),
            vec![Derivation::axiom(Rule::Ax2, f("p1"), f("F")), falsy.clone()],
        );
        // first premise is not an axiom instance
        assert_eq!(check_derivation(&d).unwrap_err().path, vec![0]);
        let d = Derivation::new(
            Rule::R10,
            f("F"),
            f("p1"),
            vec![
                Derivation::new(
                    Rule::R8,
                    f("p1"),
                    f("F"),
                    vec![Derivation::axiom(Rule::Ax1, f("p1"), f("p1")), Derivation::axiom(Rule::Ax1, f("p1"), f("F"))],
                ),
                falsy,
            ],
        );
        assert!(check_derivation(&d).is_err());
    }

    #[test]
    fn json_shape() {
        let d = commute();
        let v = serde_json::to_value(&d).unwrap();
        assert_eq!(v["rule"], "r9");
        assert_eq!(v["conclusion"][0], "(p1 & p2)");
        assert_eq!(v["premises"][1]["rule"], "ax3");
        let back: Derivation = serde_json::from_value(v).unwrap();
        assert_eq!(back, d);
        let leaf: Derivation = serde_json::from_str(r#"{"rule":"ax6","conclusion":["~~p1","p1"]}"#).unwrap();
        assert_eq!(check_derivation(&leaf), Ok(()));
    }
}
