use std::fmt::Write;

use super::FiniteOrtholattice;

/// Covering pairs `(a, b)` with `a < b` and nothing strictly between.
pub fn covers(l: &FiniteOrtholattice) -> Vec<(usize, usize)> {
    let lt = |x: usize, y: usize| x != y && l.leq(x, y);
    let mut out = Vec::new();
    for a in l.elements() {
        for b in l.elements() {
            if lt(a, b) && !l.elements().any(|c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Graphviz rendering of the Hasse diagram, bottom to top, with each
/// orthocomplement pair joined by a dashed undirected edge.
pub fn to_dot(l: &FiniteOrtholattice) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(l.name())).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=circle];").unwrap();
    for a in l.elements() {
        writeln!(out, "  n{a} [label={}];", quote(l.label(a))).unwrap();
    }
    for (a, b) in covers(l) {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    for a in l.elements() {
        let b = l.ortho(a);
        if a < b {
            writeln!(
                out,
                "  n{a} -> n{b} [dir=none, style=dashed, color=gray, constraint=false, label=\"⊥\"];"
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Catalog;

    #[test]
    fn oml6_covers_are_the_eight_edges() {
        let l = Catalog::Oml6.build(64).unwrap();
        let c = covers(&l);
        assert_eq!(c.len(), 8);
        assert!(c.iter().all(|&(a, b)| a == l.zero() || b == l.one()));
    }

    #[test]
    fn o6_chain_edges() {
        let l = Catalog::O6.build(64).unwrap();
        let (a, b) = (l.index_of("a").unwrap(), l.index_of("b").unwrap());
        let c = covers(&l);
        assert!(c.contains(&(b, a)));
        assert!(!c.contains(&(l.zero(), a)));
        assert_eq!(c.len(), 6);
    }

    #[test]
    fn dot_mentions_every_element_and_complement_pair() {
        let l = Catalog::O2x2.build(64).unwrap();
        let dot = to_dot(&l);
        assert!(dot.starts_with("digraph \"O2x2\""));
        assert_eq!(dot.matches("style=dashed").count(), 2);
        assert_eq!(dot.matches("[label=").count(), 4);
    }
}
