//! Bounded backward proof search.
//!
//! Iterative deepening over derivation height. Goals are interned pairs of
//! formula ids; a goal that failed at some height is not retried at that
//! height or below, and a proved goal is reused at any larger height.
//!
//! Rule 8 (transitivity) needs a middle formula that the goal does not
//! determine. The search draws it from the subformulas of the root sequent,
//! their negations, and `F`, so "not found" means "not found in that
//! space", never "not derivable".

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::derivation::{Derivation, Rule};
use super::Formula;
use crate::lattice::FiniteOrtholattice;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "snake_case")]
pub enum ProofSearch {
    Found { derivation: Derivation },
    /// Inconclusive: no derivation of height `≤ depth` in the search space.
    /// `complete` is false when the step budget ran out first.
    NotFoundWithinBound { depth: usize, complete: bool },
}

impl ProofSearch {
    pub fn derivation(&self) -> Option<&Derivation> {
        match self {
            ProofSearch::Found { derivation } => Some(derivation),
            ProofSearch::NotFoundWithinBound { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions<'a> {
    pub depth: usize,
    /// Skip goals refuted in one of these lattices (exhaustive valuations
    /// of the root's variables). Sound, since derivable sequents hold in
    /// every orthomodular lattice.
    pub prune_with: Option<&'a [FiniteOrtholattice]>,
    /// Upper bound on goal expansions.
    pub max_steps: u64,
}

impl SearchOptions<'_> {
    pub fn new(depth: usize) -> Self {
        SearchOptions {
            depth,
            prune_with: None,
            max_steps: 20_000_000,
        }
    }
}

/// Searches for a derivation of `α ⊢ β` of height at most `depth`.
pub fn prove_bounded(alpha: &Formula, beta: &Formula, depth: usize) -> ProofSearch {
    prove_with(alpha, beta, &SearchOptions::new(depth))
}

pub fn prove_with(alpha: &Formula, beta: &Formula, opts: &SearchOptions<'_>) -> ProofSearch {
    let mut p = Prover::default();
    let a = p.intern(alpha);
    let b = p.intern(beta);
    p.max_steps = opts.max_steps;
    let mut cuts = Vec::new();
    for f in alpha.subformulas().into_iter().chain(beta.subformulas()) {
        let id = p.intern(&f);
        let neg = p.mk(Node::Neg(id));
        for c in [id, neg] {
            if !cuts.contains(&c) {
                cuts.push(c);
            }
        }
    }
    let falsum = p.mk(Node::F);
    if !cuts.contains(&falsum) {
        cuts.push(falsum);
    }
    p.cuts = cuts;
    if let Some(family) = opts.prune_with {
        let vars: Vec<u32> = alpha.vars().union(&beta.vars()).copied().collect();
        p.models = Some(Models::new(family, &vars));
    }
    for d in 1..=opts.depth {
        if p.prove(a, b, d) {
            return ProofSearch::Found {
                derivation: p.build(a, b),
            };
        }
        if p.out_of_budget() {
            return ProofSearch::NotFoundWithinBound {
                depth: opts.depth,
                complete: false,
            };
        }
    }
    ProofSearch::NotFoundWithinBound {
        depth: opts.depth,
        complete: true,
    }
}

type Id = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Node {
    F,
    Var(u32),
    Neg(Id),
    Conj(Id, Id),
}

#[derive(Debug, Clone)]
struct Step {
    rule: Rule,
    premises: Vec<(Id, Id)>,
    height: usize,
}

/// Every valuation of the root's variables in every lattice of a family,
/// with formula values computed on demand.
struct Models<'a> {
    family: &'a [FiniteOrtholattice],
    vars: Vec<u32>,
    /// `(lattice index, values of vars)`
    points: Vec<(usize, Vec<usize>)>,
    values: HashMap<Id, Vec<usize>>,
}

impl<'a> Models<'a> {
    fn new(family: &'a [FiniteOrtholattice], vars: &[u32]) -> Self {
        let mut points = Vec::new();
        for (li, l) in family.iter().enumerate() {
            let n = l.len();
            let total = n.checked_pow(vars.len() as u32).unwrap_or(usize::MAX);
            // beyond this the pruning table costs more than it saves
            if total > 1 << 16 {
                continue;
            }
            for mut code in 0..total {
                let mut v = vec![0; vars.len()];
                for slot in v.iter_mut().rev() {
                    *slot = code % n;
                    code /= n;
                }
                points.push((li, v));
            }
        }
        Models {
            family,
            vars: vars.to_vec(),
            points,
            values: HashMap::new(),
        }
    }
}

#[derive(Default)]
struct Prover<'a> {
    nodes: Vec<Node>,
    index: HashMap<Node, Id>,
    failed: HashMap<(Id, Id), usize>,
    proved: HashMap<(Id, Id), Step>,
    cuts: Vec<Id>,
    models: Option<Models<'a>>,
    steps: u64,
    max_steps: u64,
}

impl<'a> Prover<'a> {
    fn mk(&mut self, n: Node) -> Id {
        if let Some(&id) = self.index.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.index.insert(n, id);
        id
    }

    fn intern(&mut self, f: &Formula) -> Id {
        let n = match f {
            Formula::Falsum => Node::F,
            Formula::Var(i) => Node::Var(*i),
            Formula::Neg(a) => Node::Neg(self.intern(a)),
            Formula::Conj(a, b) => {
                let (a, b) = (self.intern(a), self.intern(b));
                Node::Conj(a, b)
            }
        };
        self.mk(n)
    }

    fn formula(&self, id: Id) -> Formula {
        match self.nodes[id as usize] {
            Node::F => Formula::Falsum,
            Node::Var(i) => Formula::Var(i),
            Node::Neg(a) => self.formula(a).neg(),
            Node::Conj(a, b) => self.formula(a).and(self.formula(b)),
        }
    }

    fn out_of_budget(&self) -> bool {
        self.steps >= self.max_steps
    }

    fn values(&mut self, id: Id) -> Vec<usize> {
        if let Some(v) = self.models.as_ref().and_then(|m| m.values.get(&id)) {
            return v.clone();
        }
        let node = self.nodes[id as usize];
        let out: Vec<usize> = match node {
            Node::Neg(a) => {
                let va = self.values(a);
                let m = self.models.as_ref().expect("models present");
                va.iter()
                    .zip(&m.points)
                    .map(|(&x, (li, _))| m.family[*li].ortho(x))
                    .collect()
            }
            Node::Conj(a, b) => {
                let (va, vb) = (self.values(a), self.values(b));
                let m = self.models.as_ref().expect("models present");
                va.iter()
                    .zip(&vb)
                    .zip(&m.points)
                    .map(|((&x, &y), (li, _))| m.family[*li].meet(x, y))
                    .collect()
            }
            Node::F => {
                let m = self.models.as_ref().expect("models present");
                m.points.iter().map(|(li, _)| m.family[*li].zero()).collect()
            }
            Node::Var(i) => {
                let m = self.models.as_ref().expect("models present");
                let k = m.vars.iter().position(|&v| v == i).expect("cut formulas use root variables");
                m.points.iter().map(|(_, v)| v[k]).collect()
            }
        };
        self.models.as_mut().expect("models present").values.insert(id, out.clone());
        out
    }

    fn refuted(&mut self, a: Id, b: Id) -> bool {
        if self.models.is_none() {
            return false;
        }
        let (va, vb) = (self.values(a), self.values(b));
        let m = self.models.as_ref().expect("models present");
        va.iter()
            .zip(&vb)
            .zip(&m.points)
            .any(|((&x, &y), (li, _))| !m.family[*li].leq(x, y))
    }

    fn record(&mut self, a: Id, b: Id, rule: Rule, premises: Vec<(Id, Id)>) -> bool {
        let height = 1 + premises
            .iter()
            .map(|p| self.proved[p].height)
            .max()
            .unwrap_or(0);
        // keep the lowest proof; a goal can be re-proved at a smaller bound
        match self.proved.get(&(a, b)) {
            Some(s) if s.height <= height => {}
            _ => {
                self.proved.insert((a, b), Step { rule, premises, height });
            }
        }
        true
    }

    fn axiom(&self, a: Id, b: Id) -> Option<Rule> {
        let na = self.nodes[a as usize];
        let nb = self.nodes[b as usize];
        let double_neg = |n: Node| match n {
            Node::Neg(x) => match self.nodes[x as usize] {
                Node::Neg(y) => Some(y),
                _ => None,
            },
            _ => None,
        };
        if a == b {
            Some(Rule::Ax1)
        } else if na == Node::F {
            Some(Rule::Ax2)
        } else if matches!(na, Node::Conj(x, _) if x == b) {
            Some(Rule::Ax3)
        } else if matches!(na, Node::Conj(_, y) if y == b) {
            Some(Rule::Ax4)
        } else if double_neg(nb) == Some(a) {
            Some(Rule::Ax5)
        } else if double_neg(na) == Some(b) {
            Some(Rule::Ax6)
        } else {
            None
        }
    }

    fn prove(&mut self, a: Id, b: Id, d: usize) -> bool {
        if d == 0 || self.out_of_budget() {
            return false;
        }
        if let Some(s) = self.proved.get(&(a, b)) {
            if s.height <= d {
                return true;
            }
        }
        if self.failed.get(&(a, b)).is_some_and(|&f| f >= d) {
            return false;
        }
        self.steps += 1;
        if self.refuted(a, b) {
            self.failed.insert((a, b), usize::MAX);
            return false;
        }
        if let Some(rule) = self.axiom(a, b) {
            return self.record(a, b, rule, Vec::new());
        }
        if d >= 2 && self.expand(a, b, d - 1) {
            return true;
        }
        let f = self.failed.entry((a, b)).or_insert(0);
        *f = (*f).max(d);
        false
    }

    fn expand(&mut self, a: Id, b: Id, d: usize) -> bool {
        if let Node::Conj(y, z) = self.nodes[b as usize] {
            if self.prove(a, y, d) && self.prove(a, z, d) {
                return self.record(a, b, Rule::R9, vec![(a, y), (a, z)]);
            }
        }
        if let (Node::Neg(pb), Node::Neg(pa)) = (self.nodes[a as usize], self.nodes[b as usize]) {
            if self.prove(pa, pb, d) {
                return self.record(a, b, Rule::R7, vec![(pa, pb)]);
            }
        }
        // r10 concludes a ⊢ b from b ⊢ a and ¬b∧a ⊢ F
        if self.prove(b, a, d) {
            let nb = self.mk(Node::Neg(b));
            let l = self.mk(Node::Conj(nb, a));
            let falsum = self.mk(Node::F);
            if self.prove(l, falsum, d) {
                return self.record(a, b, Rule::R10, vec![(b, a), (l, falsum)]);
            }
        }
        for i in 0..self.cuts.len() {
            let m = self.cuts[i];
            if m == a || m == b {
                continue;
            }
            if self.prove(a, m, d) && self.prove(m, b, d) {
                return self.record(a, b, Rule::R8, vec![(a, m), (m, b)]);
            }
        }
        false
    }

    fn build(&self, a: Id, b: Id) -> Derivation {
        let step = &self.proved[&(a, b)];
        Derivation::new(
            step.rule,
            self.formula(a),
            self.formula(b),
            step.premises.iter().map(|&(x, y)| self.build(x, y)).collect(),
        )
    }
}
