use serde::Serialize;

use super::{Binder, Node, Term};
use crate::family::Family;

/// Statistics on which the family restrictions are defined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TermStats {
    pub size: usize,
    /// Largest number of unary nodes on a root-to-leaf path.
    pub unary_height: usize,
    /// Largest binding length. For a leaf with index `d` this is `d`.
    pub max_binding_length: usize,
    pub unary_node_count: usize,
    /// Node counts by edge depth; entry 0 is the root.
    pub profile_by_depth: Vec<usize>,
    /// Node counts by number of unary strict ancestors.
    pub profile_by_unary_level: Vec<usize>,
    pub free_leaves: usize,
    /// Leaves whose index exceeds the number of enclosing abstractions.
    pub dangling_leaves: usize,
    /// Smallest unary height of a leaf.
    pub min_leaf_unary_height: usize,
}

impl TermStats {
    pub fn is_closed(&self) -> bool {
        self.free_leaves == 0 && self.dangling_leaves == 0
    }
}

/// Computes every statistic in one preorder pass.
pub fn stats(t: &Term) -> TermStats {
    let mut s = TermStats {
        size: t.size(),
        unary_height: 0,
        max_binding_length: 0,
        unary_node_count: 0,
        profile_by_depth: Vec::new(),
        profile_by_unary_level: Vec::new(),
        free_leaves: 0,
        dangling_leaves: 0,
        min_leaf_unary_height: usize::MAX,
    };
    for v in t.walk() {
        bump(&mut s.profile_by_depth, v.depth);
        bump(&mut s.profile_by_unary_level, v.unary_ancestors);
        match v.node {
            Node::Unary => s.unary_node_count += 1,
            Node::Binary => {}
            Node::Leaf(b) => {
                s.unary_height = s.unary_height.max(v.unary_ancestors);
                s.min_leaf_unary_height = s.min_leaf_unary_height.min(v.unary_ancestors);
                match b {
                    Binder::Free => s.free_leaves += 1,
                    Binder::Index(d) => {
                        let d = d.get() as usize;
                        if d > v.unary_ancestors {
                            s.dangling_leaves += 1;
                        }
                        s.max_binding_length = s.max_binding_length.max(d.min(v.unary_ancestors));
                    }
                }
            }
        }
    }
    s
}

fn bump(v: &mut Vec<usize>, i: usize) {
    if v.len() <= i {
        v.resize(i + 1, 0);
    }
    v[i] += 1;
}

/// True iff `t` is a closed member of `fam`.
///
/// Lambda families require every index to be in range; Motzkin
/// families require every leaf to be `Free`.
pub fn validate(t: &Term, fam: Family) -> bool {
    let s = stats(t);
    let leaves = s.size - s.unary_node_count - (s.size - 1 - s.unary_node_count) / 2;
    let shape_ok = if fam.is_motzkin() { s.free_leaves == leaves } else { s.is_closed() };
    if !shape_ok {
        return false;
    }
    let q = s.unary_node_count as u64;
    let h = s.unary_height as u64;
    match fam {
        Family::LambdaAll | Family::Motzkin => true,
        Family::LambdaExactUnary(p) | Family::MotzkinExactUnary(p) => q == p,
        Family::LambdaAtMostUnary(p) => q <= p,
        Family::LambdaUnaryHeight(k) | Family::MotzkinHeightAtMost(k) => h <= k,
        Family::LambdaBindingLength(k) => s.max_binding_length as u64 <= k,
        Family::MotzkinHeightExact(k) => h == k && s.min_leaf_unary_height as u64 == k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig1() -> Term {
        Term::binary(Term::unary(Term::binary(Term::var(1), Term::var(1))), Term::unary(Term::var(1)))
    }

    #[test]
    fn identity_stats() {
        let s = stats(&Term::unary(Term::var(1)));
        assert_eq!((s.size, s.unary_height, s.unary_node_count), (2, 1, 1));
        assert_eq!(s.max_binding_length, 1);
    }

    #[test]
    fn self_application_pair() {
        let s = stats(&fig1());
        assert_eq!((s.size, s.unary_height, s.unary_node_count), (7, 1, 2));
        assert_eq!(s.profile_by_depth, vec![1, 2, 2, 2]);
        assert_eq!(s.profile_by_unary_level, vec![3, 4]);
    }

    #[test]
    fn binding_length_counts_binder() {
        // \x.\y.x
        let s = stats(&Term::unary(Term::unary(Term::var(2))));
        assert_eq!(s.max_binding_length, 2);
        assert_eq!(s.unary_height, 2);
    }

    #[test]
    fn validate_examples() {
        let id = Term::unary(Term::var(1));
        assert!(validate(&id, Family::LambdaUnaryHeight(1)));
        assert!(!validate(&id, Family::LambdaUnaryHeight(0)));
        let k = Term::unary(Term::unary(Term::var(2)));
        assert!(!validate(&k, Family::LambdaBindingLength(1)));
        assert!(validate(&k, Family::LambdaBindingLength(2)));
        assert!(!validate(&id, Family::Motzkin));
        assert!(validate(&id.skeleton(), Family::Motzkin));
        assert!(!validate(&id.skeleton(), Family::LambdaAll));
        assert!(!validate(&Term::var(1), Family::LambdaAll));
    }

    #[test]
    fn exact_height_needs_every_leaf() {
        let t = Term::binary(Term::unary(Term::free()), Term::free());
        assert!(!validate(&t, Family::MotzkinHeightExact(1)));
        assert!(validate(&t, Family::MotzkinHeightAtMost(1)));
        let t = Term::unary(Term::binary(Term::free(), Term::free()));
        assert!(validate(&t, Family::MotzkinHeightExact(1)));
    }
}
