use crate::family::Family;

/// One nonterminal of a counting specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    /// Number of distinct leaves (binder choices) available here.
    pub leaf: u64,
    /// Nonterminal below a unary node, if unary nodes are allowed.
    pub unary: Option<usize>,
    /// Ordered (left, right) nonterminals below a binary node.
    pub pairs: Vec<(usize, usize)>,
    /// Largest size at which this state can occur below a root of size `N`.
    pub limit: usize,
}

/// The system of equations behind a family, truncated at size `N`.
///
/// States are numbered so that every unary child and every pair member
/// has a row of its own; `roots` lists the states whose sum is the class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grammar {
    pub states: Vec<State>,
    pub roots: Vec<usize>,
    pub free_leaves: bool,
    // (l, m) -> state, for the exact-unary lambda families
    pub(crate) budget_width: usize,
}

impl Grammar {
    /// Builds the grammar of `fam`; parameters above `n` are clamped,
    /// which leaves every count of size at most `n` unchanged.
    pub fn new(fam: Family, n: usize) -> Grammar {
        let clamp = |p: u64| p.min(n as u64) as usize;
        let shrink = |i: usize| n.saturating_sub(i).saturating_add(1).min(n);
        match fam {
            Family::LambdaAll => contexts(n, false, shrink),
            Family::LambdaUnaryHeight(k) => contexts(clamp(k), false, shrink),
            Family::LambdaBindingLength(k) => contexts(clamp(k), true, shrink),
            Family::LambdaExactUnary(q) | Family::LambdaAtMostUnary(q) => {
                let q = clamp(q);
                let w = q + 1;
                let idx = |l: usize, m: usize| l * w + m;
                let mut states = Vec::with_capacity(w * w);
                for l in 0..=q {
                    for m in 0..=q {
                        // unused cells with l + m > q stay empty
                        let live = l + m <= q;
                        states.push(State {
                            leaf: if live && l == 0 { m as u64 } else { 0 },
                            unary: (live && l >= 1).then(|| idx(l - 1, m + 1)),
                            pairs: if live { (0..=l).map(|j| (idx(j, m), idx(l - j, m))).collect() } else { vec![] },
                            limit: if live { shrink(m) } else { 0 },
                        });
                    }
                }
                let roots = match fam {
                    Family::LambdaExactUnary(_) => vec![idx(q, 0)],
                    _ => (0..=q).map(|l| idx(l, 0)).collect(),
                };
                Grammar { states, roots, free_leaves: false, budget_width: w }
            }
            Family::Motzkin => Grammar {
                states: vec![State { leaf: 1, unary: Some(0), pairs: vec![(0, 0)], limit: n }],
                roots: vec![0],
                free_leaves: true,
                budget_width: 0,
            },
            Family::MotzkinExactUnary(q) => {
                let q = clamp(q);
                let states = (0..=q)
                    .map(|l| State {
                        leaf: (l == 0) as u64,
                        unary: l.checked_sub(1),
                        pairs: (0..=l).map(|j| (j, l - j)).collect(),
                        limit: n,
                    })
                    .collect();
                Grammar { states, roots: vec![q], free_leaves: true, budget_width: 0 }
            }
            Family::MotzkinHeightExact(k) | Family::MotzkinHeightAtMost(k) => {
                let k = clamp(k);
                let exact = matches!(fam, Family::MotzkinHeightExact(_));
                let states = (0..=k)
                    .map(|h| State {
                        leaf: (!exact || h == 0) as u64,
                        unary: h.checked_sub(1),
                        pairs: vec![(h, h)],
                        limit: shrink(k - h),
                    })
                    .collect();
                Grammar { states, roots: vec![k], free_leaves: true, budget_width: 0 }
            }
        }
    }

    /// State of the exact-unary lambda grammar with `l` unary nodes still
    /// to place and `m` enclosing abstractions.
    pub fn budget_state(&self, l: usize, m: usize) -> usize {
        assert!(self.budget_width > 0, "not an exact-unary lambda grammar");
        l * self.budget_width + m
    }

    /// Rough number of big-integer multiplications needed by the DP.
    pub fn work(&self) -> u128 {
        self.states
            .iter()
            .map(|s| {
                let l = s.limit as u128;
                l * l / 2 * s.pairs.len().max(1) as u128
            })
            .sum()
    }
}

// Context-indexed lambda grammars: state i has i binders in reach.
// `saturate` makes the last state loop on itself under unary nodes.
fn contexts(top: usize, saturate: bool, shrink: impl Fn(usize) -> usize) -> Grammar {
    let states = (0..=top)
        .map(|i| State {
            leaf: i as u64,
            unary: if i < top {
                Some(i + 1)
            } else if saturate {
                Some(i)
            } else {
                None
            },
            pairs: vec![(i, i)],
            limit: shrink(i),
        })
        .collect();
    Grammar { states, roots: vec![0], free_leaves: false, budget_width: 0 }
}
