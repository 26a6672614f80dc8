use rug::{Integer, Rational};

use super::CountError;

/// The polynomial `P_q(z)` with `P_2 = 1` and
/// `P_q = P_{q-1} + z * sum_{l=2}^{q-2} P_l P_{q-l}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PqPolynomial {
    pub q: u64,
    /// Coefficients, lowest degree first.
    pub coeffs: Vec<Integer>,
}

impl PqPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, z: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.coeffs.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }
}

pub fn pq_polynomial(q: u64) -> Result<PqPolynomial, CountError> {
    if q < 2 {
        return Err(CountError::PqIndex(q));
    }
    let q = q as usize;
    let mut ps: Vec<Vec<Integer>> = vec![vec![], vec![], vec![Integer::from(1)]];
    for r in 3..=q {
        let mut next = ps[r - 1].clone();
        for l in 2..=r.saturating_sub(2) {
            let prod = mul(&ps[l], &ps[r - l]);
            if next.len() < prod.len() + 1 {
                next.resize(prod.len() + 1, Integer::new());
            }
            for (i, c) in prod.into_iter().enumerate() {
                next[i + 1] += c;
            }
        }
        ps.push(next);
    }
    Ok(PqPolynomial { q: q as u64, coeffs: ps.swap_remove(q) })
}

fn mul(a: &[Integer], b: &[Integer]) -> Vec<Integer> {
    let mut out = vec![Integer::new(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}
