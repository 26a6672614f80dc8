//! Exhaustive generation of small terms.
//!
//! Exponential in the size; meant for checking counts and samplers.

use std::collections::HashMap;

use super::{Binder, Node, Term};
use crate::family::Family;

/// All lambda terms of size `n` whose indices stay within `context`
/// enclosing abstractions plus those inside the term itself.
pub fn lambda_terms(n: usize, context: usize) -> Vec<Term> {
    let mut memo = HashMap::new();
    gen_lambda(n, context, &mut memo).into_iter().map(|nodes| Term { nodes }).collect()
}

/// All closed lambda terms of size `n`.
pub fn closed_terms(n: usize) -> Vec<Term> {
    lambda_terms(n, 0)
}

/// All Motzkin trees of size `n`.
pub fn motzkin_trees(n: usize) -> Vec<Term> {
    let mut memo = HashMap::new();
    gen_motzkin(n, &mut memo).into_iter().map(|nodes| Term { nodes }).collect()
}

/// All members of `fam` with size `n`, filtered by [`validate`](super::validate).
pub fn family_members(fam: Family, n: usize) -> Vec<Term> {
    let pool = if fam.is_motzkin() { motzkin_trees(n) } else { closed_terms(n) };
    pool.into_iter().filter(|t| super::validate(t, fam)).collect()
}

fn gen_lambda(n: usize, d: usize, memo: &mut HashMap<(usize, usize), Vec<Vec<Node>>>) -> Vec<Vec<Node>> {
    if let Some(v) = memo.get(&(n, d)) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        for i in 1..=d {
            out.push(vec![Node::Leaf(Binder::index(i as u32))]);
        }
    } else if n >= 2 {
        for body in gen_lambda(n - 1, d + 1, memo) {
            let mut v = vec![Node::Unary];
            v.extend(body);
            out.push(v);
        }
        for a in 1..n - 1 {
            let lefts = gen_lambda(a, d, memo);
            let rights = gen_lambda(n - 1 - a, d, memo);
            for l in &lefts {
                for r in &rights {
                    let mut v = Vec::with_capacity(n);
                    v.push(Node::Binary);
                    v.extend_from_slice(l);
                    v.extend_from_slice(r);
                    out.push(v);
                }
            }
        }
    }
    memo.insert((n, d), out.clone());
    out
}

fn gen_motzkin(n: usize, memo: &mut HashMap<usize, Vec<Vec<Node>>>) -> Vec<Vec<Node>> {
    if let Some(v) = memo.get(&n) {
        return v.clone();
    }
    let mut out = Vec::new();
    if n == 1 {
        out.push(vec![Node::Leaf(Binder::Free)]);
    } else if n >= 2 {
        for body in gen_motzkin(n - 1, memo) {
            let mut v = vec![Node::Unary];
            v.extend(body);
            out.push(v);
        }
        for a in 1..n - 1 {
            let lefts = gen_motzkin(a, memo);
            let rights = gen_motzkin(n - 1 - a, memo);
            for l in &lefts {
                for r in &rights {
                    let mut v = vec![Node::Binary];
                    v.extend_from_slice(l);
                    v.extend_from_slice(r);
                    out.push(v);
                }
            }
        }
    }
    memo.insert(n, out.clone());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| closed_terms(n).len()).collect();
        assert_eq!(counts, vec![0, 1, 2, 4, 13, 42, 139, 506]);
        let m: Vec<usize> = (1..=7).map(|n| motzkin_trees(n).len()).collect();
        assert_eq!(m, vec![1, 1, 2, 4, 9, 21, 51]);
    }

    #[test]
    fn all_distinct_and_closed() {
        let mut ts = closed_terms(7);
        assert!(ts.iter().all(|t| super::super::stats(t).is_closed()));
        ts.sort();
        ts.dedup();
        assert_eq!(ts.len(), 139);
    }
}
