use rug::{Integer, Rational};

use super::SampleError;
use crate::counting::{build_table, Limits};
use crate::family::Family;

/// Distribution of the unary height over closed terms of one size.
#[derive(Clone, Debug, PartialEq)]
pub struct UnaryHeightHistogram {
    pub size: usize,
    /// Closed terms of the size.
    pub total: Integer,
    /// `exact[k]`: closed terms of unary height exactly `k`.
    pub exact: Vec<Integer>,
}

impl UnaryHeightHistogram {
    pub fn probability(&self, k: usize) -> Rational {
        Rational::from((self.exact.get(k).cloned().unwrap_or_default(), self.total.clone()))
    }

    pub fn probabilities(&self) -> Vec<Rational> {
        (0..self.exact.len()).map(|k| self.probability(k)).collect()
    }
}

/// Exact unary-height histogram of closed terms of size `n`.
///
/// Row `i` of the bounded-height system agrees with the unrestricted row
/// at every size `m <= k - i + 1`, so only the remaining cells are
/// recomputed for each bound `k`.
pub fn unary_height_histogram(n: usize) -> Result<UnaryHeightHistogram, SampleError> {
    let all = build_table(Family::LambdaAll, n.max(1), Limits::default())?;
    let total = all.count(n.max(1)).clone();
    if n == 0 || total == 0 {
        return Err(SampleError::ZeroCount { family: Family::LambdaAll, size: n });
    }
    let t = |i: usize, m: usize| all.row(i)[m].clone();
    // at_most[k] = closed terms of height <= k
    let mut at_most = vec![Integer::new(); n];
    for (k, slot) in at_most.iter_mut().enumerate().skip(1) {
        if k + 1 >= n {
            *slot = total.clone();
            continue;
        }
        // p[i][m] for i <= k, m <= n - i + 1 (at the root m <= n)
        let mut p: Vec<Vec<Integer>> = (0..=k)
            .map(|i| {
                let lim = if i == 0 { n } else { n - i + 1 };
                let keep = (k - i + 1).min(lim);
                let mut row: Vec<Integer> = (0..=keep).map(|m| t(i, m)).collect();
                row.resize(lim + 1, Integer::new());
                row
            })
            .collect();
        for m in 2..=n {
            for i in (0..=k).rev() {
                let lim = p[i].len() - 1;
                if m <= k - i + 1 || m > lim {
                    continue;
                }
                let mut acc = Integer::new();
                if i < k {
                    acc += &p[i + 1][m - 1];
                }
                let row = &p[i];
                let total = m - 1;
                let mut half = Integer::new();
                let mut a = 1;
                while 2 * a < total {
                    half += Integer::from(&row[a] * &row[total - a]);
                    a += 1;
                }
                half <<= 1;
                if 2 * a == total {
                    half += Integer::from(row[a].square_ref());
                }
                acc += half;
                p[i][m] = acc;
            }
        }
        *slot = p[0][n].clone();
    }
    let mut exact = vec![Integer::new(); n];
    for k in 1..n {
        exact[k] = Integer::from(&at_most[k] - &at_most[k - 1]);
    }
    Ok(UnaryHeightHistogram { size: n, total, exact })
}
