use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// `u_0 = 0`, `u_{j+1} = u_j^2 + j + 1`.
pub fn u(j: u32) -> Integer {
    let mut v = Integer::new();
    for i in 0..j {
        v = v.square() + (i + 1);
    }
    v
}

/// `alpha_j = u_j^2`.
pub fn alpha(j: u32) -> Integer {
    u(j).square()
}

/// `N_j = u_j^2 - u_j + j`, the unary-height bounds with a double root.
pub fn n_seq(j: u32) -> Integer {
    let uj = u(j);
    Integer::from(uj.square_ref()) - &uj + j
}

/// Position of `k` among the `N_j`: `(j, k == N_j)` with `N_j <= k < N_{j+1}`.
pub fn n_interval(k: u64) -> Option<(u32, bool)> {
    if k == 0 {
        return None;
    }
    let mut j = 1;
    loop {
        let next = n_seq(j + 1);
        if next > k {
            return Some((j, n_seq(j) == k));
        }
        j += 1;
    }
}

/// `lambda_0 = 0`, `lambda_{l+1} = l + 1 + sqrt(lambda_l)`.
pub fn lambda(l: u64, prec: u32) -> Float {
    let mut v = Float::new(prec);
    for i in 0..l {
        v = v.sqrt() + (i + 1);
    }
    v
}

/// `c_1 = 1`, `c_j = 4j - 5 + 2 sqrt(c_{j-1})`.
pub fn c_seq(j: u64, prec: u32) -> Float {
    assert!(j >= 1, "c_j starts at j = 1");
    let mut v = Float::with_val(prec, 1);
    for i in 2..=j {
        v = v.sqrt() * 2u32 + (4 * i as i64 - 5);
    }
    v
}

/// `u_j^(1/2^j)`.
pub fn chi(j: u32, prec: u32) -> Float {
    let x = Float::with_val(prec.max(2 * (1 << j)), u(j));
    x.pow(Float::with_val(prec, 1) >> j)
}

/// `gamma_j / u_j` where `gamma_j = -R'_j(1/(2 u_j))` for `k = N_j`, from
/// the exact rational recurrence over the levels below the block.
pub fn gamma_ratio(j: u32) -> Rational {
    let uj = u(j);
    let nj = n_seq(j);
    let mut w = Rational::new();
    for p in 1..=j {
        let up = u(j - p + 1);
        // derivative of 1 - 4(N_j - p + 1)z^2 - 2z at z = 1/(2 u_j), plus the sqrt term
        let mut delta = Rational::from((-4 * (Integer::from(&nj - p) + 1u32), uj.clone()));
        if p > 1 {
            delta += Rational::from(-2) + Rational::from((Integer::from(2) * &up, uj.clone()));
            w = delta + w / Rational::from(Integer::from(2) * &up);
        } else {
            w = delta;
        }
    }
    -w / Rational::from(uj)
}

/// `prod_{n <= m} lambda_n / (n + sqrt(n) + 1/2)`.
pub fn omega_lambda(m: u64, prec: u32) -> Float {
    let mut lam = Float::new(prec);
    let mut ln = Float::new(prec);
    for n in 1..=m {
        lam = lam.sqrt() + n;
        let den = Float::with_val(prec, n).sqrt() + n + 0.5f64;
        ln += Float::with_val(prec, &lam / den).ln();
    }
    ln.exp()
}

/// `prod_{2 <= j <= m} c_j / (4j + 4 sqrt(j) - 3)`.
pub fn omega_c(m: u64, prec: u32) -> Float {
    let mut c = Float::with_val(prec, 1);
    let mut ln = Float::new(prec);
    for j in 2..=m {
        c = c.sqrt() * 2u32 + (4 * j as i64 - 5);
        let den = Float::with_val(prec, j).sqrt() * 4u32 + (4 * j as i64 - 3);
        ln += Float::with_val(prec, &c / den).ln();
    }
    ln.exp()
}

/// `D = C^(1/4) / (sqrt(omega) e^(zeta(1/2)/2 - 1/4) 2^(5/2) Gamma(3/4) pi^(1/4))`.
pub fn d_constant(c: &Float, omega: &Float) -> Float {
    let prec = c.prec();
    let f = |x: f64| Float::with_val(prec, x);
    let half = f(0.5);
    let zeta = Float::with_val(prec, half.zeta_ref());
    let e = (zeta / 2u32 - 0.25f64).exp();
    let gamma = f(0.75).gamma();
    let pi = Float::with_val(prec, Constant::Pi);
    let den = omega.clone().sqrt() * e * f(2.0).pow(f(2.5)) * gamma * pi.pow(f(0.25));
    Float::with_val(prec, c.clone().pow(f(0.25))) / den
}

/// Sum of `ln lambda_i` for `i = 1..=m`.
pub(crate) fn ln_lambda_product(m: u64, prec: u32) -> Float {
    let mut lam = Float::new(prec);
    let mut acc = Float::new(prec);
    for n in 1..=m {
        lam = lam.sqrt() + n;
        acc += Float::with_val(prec, lam.ln_ref());
    }
    acc
}

/// Sum of `ln c_j` for `j = 2..=m`.
pub(crate) fn ln_c_product(m: u64, prec: u32) -> Float {
    let mut c = Float::with_val(prec, 1);
    let mut acc = Float::new(prec);
    for j in 2..=m {
        c = c.sqrt() * 2u32 + (4 * j as i64 - 5);
        acc += Float::with_val(prec, c.ln_ref());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_one() {
        let n: Vec<Integer> = (1..=6).map(n_seq).collect();
        let u6: Vec<Integer> = (1..=6).map(u).collect();
        assert_eq!(n, [1u64, 8, 135, 21760, 479982377, 230404115058374088].map(Integer::from));
        assert_eq!(u6, [1u64, 3, 12, 148, 21909, 480004287].map(Integer::from));
        for j in 1..=6 {
            assert_eq!(n_seq(j), alpha(j) - alpha(j - 1));
            assert_eq!(u(j), alpha(j - 1) + j);
        }
    }

    #[test]
    fn intervals() {
        assert_eq!(n_interval(1), Some((1, true)));
        assert_eq!(n_interval(5), Some((1, false)));
        assert_eq!(n_interval(8), Some((2, true)));
        assert_eq!(n_interval(134), Some((2, false)));
        assert_eq!(n_interval(135), Some((3, true)));
        assert_eq!(n_interval(0), None);
    }

    #[test]
    fn c_and_lambda() {
        assert_eq!(c_seq(2, 64), 5);
        assert_eq!(c_seq(1, 64), 1);
        assert_eq!(lambda(1, 64), 1);
        assert_eq!(lambda(2, 64), 3);
    }

    #[test]
    fn gamma_ratio_first() {
        assert_eq!(gamma_ratio(1), 4);
    }
}
