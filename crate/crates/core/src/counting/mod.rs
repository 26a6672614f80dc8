//! Exact coefficient tables for every family.

mod grammar;
mod io;
mod pq;

use rug::Integer;

use crate::family::Family;

pub use grammar::{Grammar, State};
pub use io::{load_table, save_table, write_csv, TABLE_FORMAT_VERSION};
pub use pq::{pq_polynomial, PqPolynomial};

#[derive(Debug, thiserror::Error)]
pub enum CountError {
    #[error("max size must be at least 1")]
    EmptyRange,
    #[error("{family} up to size {requested} needs about {work} big-integer products, above the limit of {limit}")]
    ResourceLimit { family: Family, requested: usize, work: u128, limit: u128 },
    #[error("parameter {param} of {family} exceeds the max size {max_size}: {note}")]
    VacuousRestriction { family: Family, param: u64, max_size: usize, note: &'static str },
    #[error("P_q is defined for q >= 2, got q = {0}")]
    PqIndex(u64),
    #[error("cannot access count table file: {0}")]
    Io(#[from] std::io::Error),
    #[error("corrupt count table file: {0}")]
    Corrupt(String),
    #[error("count table file has format version {found}, expected {expected}")]
    VersionMismatch { found: u64, expected: u64 },
}

/// Bounds on table construction.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    pub max_work: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_work: 3_000_000_000 }
    }
}

/// Exact counts of a family for all sizes up to `max_size`.
///
/// `row(s)` holds the counts of grammar state `s`, indexed by size
/// (index 0 is always zero). `closed()` holds the counts of the family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountTable {
    family: Family,
    max_size: usize,
    grammar: Grammar,
    rows: Vec<Vec<Integer>>,
    closed: Vec<Integer>,
}

impl CountTable {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    /// Counts of the family, indexed by size.
    pub fn closed(&self) -> &[Integer] {
        &self.closed
    }

    pub fn count(&self, n: usize) -> &Integer {
        &self.closed[n]
    }

    /// Counts of state `s`, indexed by size up to the state's limit.
    pub fn row(&self, s: usize) -> &[Integer] {
        &self.rows[s]
    }

    pub fn rows(&self) -> &[Vec<Integer>] {
        &self.rows
    }

    /// Count of state `s` at size `n`, zero beyond the stored range.
    pub fn get(&self, s: usize, n: usize) -> &Integer {
        static ZERO: Integer = Integer::ZERO;
        self.rows[s].get(n).unwrap_or(&ZERO)
    }

    pub(crate) fn from_parts(
        family: Family,
        max_size: usize,
        rows: Vec<Vec<Integer>>,
    ) -> Result<CountTable, CountError> {
        let grammar = Grammar::new(family, max_size);
        if rows.len() != grammar.states.len() {
            return Err(CountError::Corrupt(format!("expected {} rows, found {}", grammar.states.len(), rows.len())));
        }
        for (i, (r, s)) in rows.iter().zip(&grammar.states).enumerate() {
            if r.len() != s.limit + 1 {
                return Err(CountError::Corrupt(format!("row {i} has {} entries, expected {}", r.len(), s.limit + 1)));
            }
        }
        let closed = closed_counts(&grammar, &rows, max_size);
        Ok(CountTable { family, max_size, grammar, rows, closed })
    }
}

fn closed_counts(g: &Grammar, rows: &[Vec<Integer>], n: usize) -> Vec<Integer> {
    (0..=n)
        .map(|m| {
            let mut acc = Integer::new();
            for &r in &g.roots {
                if let Some(v) = rows[r].get(m) {
                    acc += v;
                }
            }
            acc
        })
        .collect()
}

/// Closed lambda terms counted through free-variable contexts:
/// `row(d)[n]` is the number of terms of size `n` with `d` binders in reach.
pub fn count_lambda_all(max_size: usize) -> Result<CountTable, CountError> {
    count_family(Family::LambdaAll, max_size)
}

/// Exact counts of `fam` for sizes `1..=max_size`.
pub fn count_family(fam: Family, max_size: usize) -> Result<CountTable, CountError> {
    count_family_with(fam, max_size, Limits::default())
}

pub fn count_family_with(fam: Family, max_size: usize, limits: Limits) -> Result<CountTable, CountError> {
    if let Some(p) = fam.param() {
        if p > max_size as u64 {
            let note = match fam {
                Family::LambdaUnaryHeight(_) | Family::LambdaBindingLength(_) | Family::LambdaAtMostUnary(_) => {
                    "in this range the counts equal those of lambda-all"
                }
                Family::MotzkinHeightAtMost(_) => "in this range the counts equal those of motzkin",
                _ => "every count in this range is zero",
            };
            return Err(CountError::VacuousRestriction { family: fam, param: p, max_size, note });
        }
    }
    build_table(fam, max_size, limits)
}

/// Like [`count_family_with`], but parameters above `max_size` are clamped.
pub(crate) fn build_table(fam: Family, max_size: usize, limits: Limits) -> Result<CountTable, CountError> {
    if max_size == 0 {
        return Err(CountError::EmptyRange);
    }
    let grammar = Grammar::new(fam, max_size);
    let work = grammar.work();
    if work > limits.max_work {
        return Err(CountError::ResourceLimit { family: fam, requested: max_size, work, limit: limits.max_work });
    }
    let rows = run_dp(&grammar, max_size);
    let closed = closed_counts(&grammar, &rows, max_size);
    Ok(CountTable { family: fam, max_size, grammar, rows, closed })
}

fn run_dp(g: &Grammar, max_size: usize) -> Vec<Vec<Integer>> {
    let mut rows: Vec<Vec<Integer>> = g.states.iter().map(|s| Vec::with_capacity(s.limit + 1)).collect();
    for r in rows.iter_mut() {
        r.push(Integer::new());
    }
    for n in 1..=max_size {
        for (si, s) in g.states.iter().enumerate() {
            if n > s.limit {
                continue;
            }
            let mut acc = Integer::new();
            if n == 1 {
                acc += s.leaf;
            }
            if let Some(c) = s.unary {
                if let Some(v) = rows[c].get(n - 1) {
                    acc += v;
                }
            }
            for &(l, r) in &s.pairs {
                convolve_into(&mut acc, &rows[l], &rows[r], n - 1, l == r);
            }
            rows[si].push(acc);
        }
    }
    rows
}

// acc += sum over a + b = total, a, b >= 1, of left[a] * right[b]
fn convolve_into(acc: &mut Integer, left: &[Integer], right: &[Integer], total: usize, symmetric: bool) {
    if total < 2 {
        return;
    }
    if symmetric {
        let mut half = Integer::new();
        let mut a = 1;
        while 2 * a < total {
            half += &left[a] * &left[total - a];
            a += 1;
        }
        half <<= 1;
        if 2 * a == total {
            half += left[a].clone().square();
        }
        *acc += half;
    } else {
        for a in 1..total {
            if a < left.len() && total - a < right.len() {
                *acc += &left[a] * &right[total - a];
            }
        }
    }
}

/// Whether a row-wise inclusion `small <= large` holds at every size.
pub fn dominated(small: &[Integer], large: &[Integer]) -> bool {
    small.iter().zip(large).all(|(a, b)| a <= b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[u64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    #[test]
    fn closed_series() {
        let t = count_lambda_all(10).unwrap();
        assert_eq!(&t.closed()[2..], &ints(&[1, 2, 4, 13, 42, 139, 506, 1915, 7558])[..]);
        for d in 0..=10 {
            assert_eq!(t.row(d)[1], d as u64);
        }
    }

    #[test]
    fn motzkin_numbers() {
        let t = count_family(Family::Motzkin, 7).unwrap();
        assert_eq!(&t.closed()[1..], &ints(&[1, 1, 2, 4, 9, 21, 51])[..]);
    }

    #[test]
    fn exact_one_unary() {
        let t = count_family(Family::LambdaExactUnary(1), 8).unwrap();
        let v: Vec<u64> = [2, 4, 6, 8].iter().map(|&n| t.count(n).to_u64().unwrap()).collect();
        assert_eq!(v, vec![1, 1, 2, 5]);
        assert!([1, 3, 5, 7].iter().all(|&n| *t.count(n) == 0));
    }

    #[test]
    fn vacuous_parameters_rejected() {
        let e = count_family(Family::LambdaUnaryHeight(20), 10).unwrap_err();
        assert!(e.to_string().contains("lambda-all"), "{e}");
        assert!(matches!(count_family(Family::LambdaExactUnary(11), 10), Err(CountError::VacuousRestriction { .. })));
        assert!(count_family(Family::LambdaUnaryHeight(10), 10).is_ok());
    }

    #[test]
    fn resource_limit() {
        let e = count_family_with(Family::LambdaAll, 400, Limits { max_work: 1000 }).unwrap_err();
        assert!(matches!(e, CountError::ResourceLimit { .. }));
        assert!(matches!(count_family(Family::Motzkin, 0), Err(CountError::EmptyRange)));
    }

    #[test]
    fn clamped_parameters_match_unrestricted() {
        let all = count_lambda_all(12).unwrap();
        let h = build_table(Family::LambdaUnaryHeight(40), 12, Limits::default()).unwrap();
        assert_eq!(all.closed(), h.closed());
    }
}
