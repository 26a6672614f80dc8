use std::fmt::Write;

use super::{Binder, Node, Term};

pub(super) fn to_dot(t: &Term) -> String {
    let mut out = String::from("digraph term {\n  node [shape=circle, fontsize=10];\n");
    let mut binder_edges = Vec::new();
    for v in t.walk() {
        let label = match v.node {
            Node::Binary => "@".to_string(),
            Node::Unary => "λ".to_string(),
            Node::Leaf(Binder::Free) => "_".to_string(),
            Node::Leaf(Binder::Index(d)) => d.to_string(),
        };
        writeln!(out, "  n{} [label=\"{}\"];", v.index, label).unwrap();
        if let Some(p) = v.parent {
            writeln!(out, "  n{} -> n{};", p, v.index).unwrap();
        }
        if let Some(b) = v.binder {
            binder_edges.push((b, v.index));
        }
    }
    for (b, leaf) in binder_edges {
        writeln!(out, "  n{b} -> n{leaf} [style=dashed, constraint=false];").unwrap();
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity() {
        let dot = to_dot(&Term::unary(Term::var(1)));
        assert!(dot.starts_with("digraph term {"));
        assert!(dot.contains("n0 -> n1;"));
        assert!(dot.contains("n0 -> n1 [style=dashed"));
        assert!(dot.trim_end().ends_with('}'));
    }
}
