use lamcount::terms::{parse, render, stats, validate, Format};
use lamcount::{Binder, Family, Node, Term};
use proptest::prelude::*;

// Decodes a byte string into a term: each byte picks the next preorder node.
fn decode(bytes: &[u8], closed: bool) -> Term {
    let mut nodes = Vec::new();
    // pending slots, each with the number of enclosing abstractions
    let mut slots = vec![0u32];
    let mut it = bytes.iter().copied();
    while let Some(depth) = slots.pop() {
        let b = it.next().unwrap_or(0);
        let budget_left = nodes.len() + slots.len() < bytes.len();
        match b % 4 {
            1 if budget_left => {
                nodes.push(Node::Unary);
                slots.push(depth + 1);
            }
            2 | 3 if budget_left => {
                nodes.push(Node::Binary);
                slots.push(depth);
                slots.push(depth);
            }
            _ => {
                let pick = (b / 4) as u32;
                let binder = if depth == 0 {
                    if closed {
                        // wrap later
                        Binder::index(1)
                    } else {
                        Binder::Free
                    }
                } else {
                    Binder::index(1 + pick % depth)
                };
                nodes.push(Node::Leaf(binder));
            }
        }
    }
    let t = Term::from_preorder(nodes).unwrap();
    if closed && !stats(&t).is_closed() {
        Term::unary(t)
    } else {
        t
    }
}

fn any_term() -> impl Strategy<Value = Term> {
    (prop::collection::vec(any::<u8>(), 0..80), any::<bool>()).prop_map(|(b, closed)| decode(&b, closed))
}

fn closed_term() -> impl Strategy<Value = Term> {
    prop::collection::vec(any::<u8>(), 0..80).prop_map(|b| decode(&b, true))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn json_roundtrip(t in any_term()) {
        prop_assert_eq!(parse(&render(&t, Format::Json), Format::Json).unwrap(), t);
    }

    #[test]
    fn debruijn_roundtrip(t in any_term()) {
        prop_assert_eq!(parse(&render(&t, Format::Debruijn), Format::Debruijn).unwrap(), t);
    }

    #[test]
    fn stats_invariants(t in closed_term()) {
        let s = stats(&t);
        prop_assert!(s.is_closed());
        prop_assert!(s.max_binding_length <= s.unary_height);
        prop_assert!(s.unary_height <= s.unary_node_count);
        prop_assert!(s.unary_node_count <= s.size);
        prop_assert_eq!(s.profile_by_depth.iter().sum::<usize>(), s.size);
        prop_assert_eq!(s.profile_by_unary_level.iter().sum::<usize>(), s.size);
        let binary = (s.size - 1 - s.unary_node_count) / 2;
        prop_assert_eq!(s.size, s.unary_node_count + 2 * binary + 1);
        prop_assert_eq!(stats(&t), s);
    }

    #[test]
    fn validate_agrees_with_stats(t in closed_term(), k in 0u64..6) {
        let s = stats(&t);
        prop_assert!(validate(&t, Family::LambdaAll));
        prop_assert_eq!(validate(&t, Family::LambdaUnaryHeight(k)), s.unary_height as u64 <= k);
        prop_assert_eq!(validate(&t, Family::LambdaBindingLength(k)), s.max_binding_length as u64 <= k);
        prop_assert_eq!(validate(&t, Family::LambdaExactUnary(k)), s.unary_node_count as u64 == k);
        prop_assert!(!validate(&t, Family::Motzkin));
        prop_assert!(validate(&t.skeleton(), Family::Motzkin));
        prop_assert_eq!(validate(&t.skeleton(), Family::MotzkinHeightAtMost(k)), s.unary_height as u64 <= k);
    }

    #[test]
    fn dot_has_one_node_per_vertex(t in closed_term()) {
        let dot = render(&t, Format::Dot);
        let labels = dot.lines().filter(|l| l.contains("[label=")).count();
        let dashed = dot.lines().filter(|l| l.contains("style=dashed")).count();
        let s = stats(&t);
        prop_assert_eq!(labels, s.size);
        prop_assert_eq!(dashed, s.size - s.unary_node_count - (s.size - 1 - s.unary_node_count) / 2);
    }
}

#[test]
fn self_application_pair() {
    let t = parse("((\\ (1 1)) (\\ 1))", Format::Debruijn).unwrap();
    let s = stats(&t);
    assert_eq!((s.size, s.unary_height, s.unary_node_count), (7, 1, 2));
    assert_eq!(render(&t, Format::Debruijn), "((\\ (1 1)) (\\ 1))");
}
