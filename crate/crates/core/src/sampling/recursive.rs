use rand::RngCore;
use rug::Integer;

use super::{uniform_below, SampleError};
use crate::counting::{build_table, CountTable, Limits};
use crate::family::Family;
use crate::terms::{Binder, Node, Term};

/// Exactly uniform sampler for one family at one size.
#[derive(Clone, Debug)]
pub struct RecursiveSampler {
    table: CountTable,
    size: usize,
}

impl RecursiveSampler {
    pub fn new(family: Family, size: usize) -> Result<RecursiveSampler, SampleError> {
        let table = build_table(family, size.max(1), Limits::default())?;
        RecursiveSampler::from_table(table, size)
    }

    /// Reuses a table built for at least `size`.
    pub fn from_table(table: CountTable, size: usize) -> Result<RecursiveSampler, SampleError> {
        if size == 0 || size > table.max_size() || *table.count(size) == 0 {
            return Err(SampleError::ZeroCount { family: table.family(), size });
        }
        Ok(RecursiveSampler { table, size })
    }

    pub fn family(&self) -> Family {
        self.table.family()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of terms the sampler chooses among.
    pub fn population(&self) -> &Integer {
        self.table.count(self.size)
    }

    fn at(&self, s: usize, n: usize) -> Option<&Integer> {
        self.table.row(s).get(n).filter(|v| **v != 0)
    }

    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> Term {
        let g = self.table.grammar();
        let n = self.size;
        let mut r = uniform_below(rng, self.population());
        let mut root = None;
        for &s in &g.roots {
            if let Some(w) = self.at(s, n) {
                if r < *w {
                    root = Some(s);
                    break;
                }
                r -= w;
            }
        }
        let mut todo = vec![(root.expect("root weights sum to the count"), n)];
        let mut nodes = Vec::with_capacity(n);
        while let Some((s, m)) = todo.pop() {
            let st = &g.states[s];
            let total = self.at(s, m).expect("only live states are scheduled");
            let mut r = uniform_below(rng, total);
            if m == 1 {
                let b = if g.free_leaves { Binder::Free } else { Binder::index(r.to_u32().unwrap() + 1) };
                nodes.push(Node::Leaf(b));
                continue;
            }
            if let Some(c) = st.unary {
                if let Some(w) = self.at(c, m - 1) {
                    if r < *w {
                        nodes.push(Node::Unary);
                        todo.push((c, m - 1));
                        continue;
                    }
                    r -= w;
                }
            }
            let mut split = None;
            'pairs: for &(l, rt) in &st.pairs {
                for a in 1..m - 1 {
                    let (Some(x), Some(y)) = (self.at(l, a), self.at(rt, m - 1 - a)) else { continue };
                    let w = Integer::from(x * y);
                    if r < w {
                        split = Some((l, a, rt));
                        break 'pairs;
                    }
                    r -= w;
                }
            }
            let (l, a, rt) = split.expect("branch weights sum to the count");
            nodes.push(Node::Binary);
            todo.push((rt, m - 1 - a));
            todo.push((l, a));
        }
        Term::from_preorder(nodes).expect("sampler emits a complete preorder")
    }
}
