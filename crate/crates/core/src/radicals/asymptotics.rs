use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};
use serde_json::json;

use super::chain::RadicalChain;
use super::sequences::{gamma_ratio, ln_c_product, ln_lambda_product, n_interval, n_seq, omega_lambda, u};
use super::singularity::{classify, expected_block, local_expansion, Classification};
use super::{check_precision, format_sig, RadicalError};
use crate::family::Family;

/// Above this many factors the lambda product switches to its asymptotic form.
pub const DIRECT_LAMBDA_FACTORS: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    ClosedForm,
    LocalExpansion,
}

/// Dominant singularity and coefficient asymptotics
/// `count(n) ~ h * n^subexp * rho^-n`.
#[derive(Clone, Debug, PartialEq)]
pub struct SingularityReport {
    pub family: Family,
    pub rho: Float,
    /// Consecutive vanishing radicands (empty for families without a chain).
    pub block: Vec<u64>,
    pub theta: Rational,
    pub constant_log10: Float,
    pub subexp_exponent: Rational,
    pub growth_log10: Float,
    pub method: Method,
}

impl SingularityReport {
    /// `1/rho`.
    pub fn growth(&self) -> Float {
        Float::with_val(self.rho.prec(), 1) / &self.rho
    }

    /// `(mantissa, exponent)` with `h = mantissa * 10^exponent`, mantissa in [1, 10).
    pub fn constant_parts(&self) -> (Float, i64) {
        split_log10(&self.constant_log10)
    }

    /// The constant as `d.ddd...e-N` with `digits` significant digits.
    pub fn constant_mantissa(&self, digits: usize) -> String {
        let (m, e) = self.constant_parts();
        let mut s = format_sig(&m, digits);
        let mut e = e;
        // rounding can carry the mantissa up to 10
        if s.starts_with("10") {
            s = format_sig(&(m / 10u32), digits);
            e += 1;
        }
        format!("{s}e{e}")
    }

    /// The constant itself; fine unless it under- or overflows the float range.
    pub fn constant(&self) -> Float {
        let ten = Float::with_val(self.rho.prec(), 10);
        ten.pow(&self.constant_log10)
    }

    pub fn to_json(&self, digits: usize) -> serde_json::Value {
        json!({
            "version": 1,
            "family": self.family.name(),
            "params": self.family.param(),
            "rho": format_sig(&self.rho, digits.max(20)),
            "theta": self.theta.to_string(),
            "block": self.block,
            "constant_log10": format_sig(&self.constant_log10, digits),
            "constant_mantissa": self.constant_mantissa(12),
            "subexp_exponent": self.subexp_exponent.to_string(),
            "growth": format_sig(&self.growth(), digits),
            "method": match self.method { Method::ClosedForm => "closed-form", Method::LocalExpansion => "local-expansion" },
        })
    }
}

pub(crate) fn split_log10(l: &Float) -> (Float, i64) {
    let e = Float::with_val(l.prec(), l.floor_ref());
    let frac = Float::with_val(l.prec(), l - &e);
    let m = Float::with_val(l.prec(), 10).pow(frac);
    (m, e.to_f64() as i64)
}

fn ln10(prec: u32) -> Float {
    Float::with_val(prec, 10).ln()
}

fn pi(prec: u32) -> Float {
    Float::with_val(prec, Constant::Pi)
}

fn report(
    family: Family,
    rho: Float,
    block: Vec<u64>,
    theta: Rational,
    ln_h: Float,
    subexp: Rational,
    method: Method,
) -> SingularityReport {
    let prec = rho.prec();
    let constant_log10 = ln_h / ln10(prec);
    let growth_log10 = -Float::with_val(prec, rho.log10_ref());
    SingularityReport { family, rho, block, theta, constant_log10, subexp_exponent: subexp, growth_log10, method }
}

/// Asymptotic constant from the local expansion of the outermost radicand.
///
/// With `sqrt(R_K)(rho - eps) = A + B eps^T` the generating function is
/// `const - B rho^T / (beta rho) (1 - z/rho)^T + ...`.
pub fn asym_constant_numeric(fam: Family, prec: u32) -> Result<SingularityReport, RadicalError> {
    check_precision(prec)?;
    let chain = RadicalChain::new(fam)?;
    let cls = classify(&chain, prec)?;
    numeric_from(&chain, cls)
}

fn numeric_from(chain: &RadicalChain, cls: Classification) -> Result<SingularityReport, RadicalError> {
    let prec = cls.rho.prec();
    let outer = local_expansion(chain, &cls)?;
    let root = if outer.a.is_zero() {
        (Float::new(prec), outer.b.clone().sqrt(), Rational::from(&outer.theta / 2u32))
    } else {
        let ra = outer.a.clone().sqrt();
        let b = Float::with_val(prec, &outer.b / &ra) / 2u32;
        (ra, b, outer.theta.clone())
    };
    let (_, b, t) = root;
    let tf = Float::with_val(prec, &t);
    let rho_t = Float::with_val(prec, cls.rho.clone().pow(&tf));
    let beta_rho = Float::with_val(prec, &chain.beta * &cls.rho);
    let c = -(b * rho_t) / beta_rho;
    let gamma = Float::with_val(prec, -tf).gamma();
    let h = c / gamma;
    if h <= 0 {
        return Err(RadicalError::PrecisionAlarm(format!("asymptotic constant of {} is not positive", chain.family())));
    }
    let theta = cls.theta.clone();
    let subexp = Rational::from(-1) - &t;
    debug_assert_eq!(t, theta);
    Ok(report(chain.family(), cls.rho, cls.block, theta, h.ln(), subexp, Method::LocalExpansion))
}

/// Classification for `LambdaUnaryHeight(N_j)` without walking huge chains.
fn classify_exact_nj(k: u64, j: u32, prec: u32) -> Result<Classification, RadicalError> {
    if k <= 100_000 {
        let chain = RadicalChain::new(Family::LambdaUnaryHeight(k))?;
        return classify(&chain, prec);
    }
    let rho = Float::with_val(prec, &Rational::from((Integer::from(1), u(j) * 2u32)));
    Ok(Classification { rho, block: expected_block(k).unwrap(), theta: Rational::from((1, 4)) })
}

/// `ln prod_{i=1}^{m} lambda_i`, directly or via
/// `omega sqrt(2 pi m) (m/e)^m e^(2 sqrt(m) + zeta(1/2) + K)`.
pub fn ln_lambda_product_any(m: u64, prec: u32) -> Float {
    if m <= DIRECT_LAMBDA_FACTORS {
        return ln_lambda_product(m, prec);
    }
    let omega = omega_lambda(DIRECT_LAMBDA_FACTORS, prec);
    ln_lambda_asymptotic(m, &omega, prec)
}

/// Asymptotic form of `ln prod lambda_i` given `omega`.
pub fn ln_lambda_asymptotic(m: u64, omega: &Float, prec: u32) -> Float {
    let mf = Float::with_val(prec, m);
    let half = Float::with_val(prec, 0.5);
    let zeta = Float::with_val(prec, half.zeta_ref());
    let two_pi_m = Float::with_val(prec, &mf * pi(prec)) * 2u32;
    Float::with_val(prec, omega.ln_ref())
        + Float::with_val(prec, two_pi_m.ln()) / 2u32
        + Float::with_val(prec, &mf * Float::with_val(prec, mf.ln_ref()))
        - &mf
        + mf.sqrt() * 2u32
        + zeta
        + sqrt_series_constant(prec)
}

/// `K = sum_{n >= 1} [ln(1 + 1/sqrt(n) + 1/(2n)) - 1/sqrt(n)]`.
pub fn sqrt_series_constant(prec: u32) -> Float {
    let p = prec.min(128);
    let term = |n: u64| {
        let nf = Float::with_val(p, n);
        let s = Float::with_val(p, nf.recip_sqrt_ref());
        let x = Float::with_val(p, &s + Float::with_val(p, nf.recip_ref()) / 2u32);
        Float::with_val(p, x.ln_1p_ref()) - s
    };
    let m = 200_000u64;
    let mut acc = Float::new(p);
    for n in 1..=m {
        acc += term(n);
    }
    // tail: the terms behave like -n^(-3/2)/6 + n^(-2)/8
    let mf = Float::with_val(p, m) + 0.5f64;
    let tail = -Float::with_val(p, mf.recip_sqrt_ref()) / 3u32 + Float::with_val(p, mf.recip_ref()) / 8u32;
    Float::with_val(prec, acc + tail)
}

/// `h_{N_j}` from its closed form, in natural log.
pub fn ln_h_nj(j: u32, prec: u32) -> Float {
    let uj = u(j);
    let nj = n_seq(j);
    let gamma = Float::with_val(prec, &(gamma_ratio(j) * Rational::from(&uj)));
    let m = (nj.clone() - j).to_u64().expect("lambda product length fits in u64");
    let ln2 = Float::with_val(prec, Constant::Log2);
    let two_u = Float::with_val(prec, &uj) * 2u32;
    let g34 = Float::with_val(prec, 0.75).gamma();
    let exp2 = Float::with_val(prec, Integer::from(&nj - j) + 2u32) + 0.5f64;
    gamma.ln() / 4u32 + two_u.ln() / 4u32 - exp2 * ln2 - g34.ln() - ln_lambda_product_any(m, prec) / 2u32
}

/// Asymptotic data for `fam`, by closed form where one exists.
pub fn asym_constant(fam: Family, prec: u32) -> Result<SingularityReport, RadicalError> {
    check_precision(prec)?;
    let f = |x: f64| Float::with_val(prec, x);
    let ln2 = Float::with_val(prec, Constant::Log2);
    let lnpi = pi(prec).ln();
    match fam {
        Family::LambdaAll => Err(RadicalError::ZeroRadius),
        Family::LambdaAtMostUnary(_) => Err(RadicalError::Unsupported(fam)),
        Family::LambdaExactUnary(0) | Family::LambdaUnaryHeight(0) | Family::LambdaBindingLength(0) => {
            Err(RadicalError::EmptyClass(fam))
        }
        Family::LambdaExactUnary(q) => {
            let rho = f(1.0) / (Float::with_val(prec, q).sqrt() * 2u32);
            let fact = Float::with_val(prec, Integer::from(Integer::factorial(q as u32 - 1)));
            let ln_h = ln2.clone() / 2u32 - Float::with_val(prec, &ln2 * q) - fact.ln() / 2u32 - lnpi / 2u32;
            Ok(report(fam, rho, vec![], Rational::from((1, 2)), ln_h, Rational::from((-3, 2)), Method::ClosedForm))
        }
        Family::Motzkin => {
            let ln_h = f(3.0).ln() / 2u32 - ln2 - lnpi / 2u32;
            Ok(report(
                fam,
                f(1.0) / 3u32,
                vec![],
                Rational::from((1, 2)),
                ln_h,
                Rational::from((-3, 2)),
                Method::ClosedForm,
            ))
        }
        Family::MotzkinExactUnary(q) => {
            let fact = Float::with_val(prec, Integer::from(Integer::factorial(q as u32)));
            let ln_h = (ln2.clone() - lnpi) / 2u32 - Float::with_val(prec, &ln2 * q) - fact.ln();
            let theta = Rational::from((1, 2)) - Rational::from(q);
            let subexp = Rational::from(-1) - &theta;
            Ok(report(fam, f(0.5), vec![], theta, ln_h, subexp, Method::ClosedForm))
        }
        Family::MotzkinHeightExact(k) => {
            let chain = RadicalChain::new(fam)?;
            let cls = classify(&chain, prec)?;
            let a = Rational::from((1, Integer::from(1) << (k as u32 + 1)));
            let af = Float::with_val(prec, &a);
            let g = Float::with_val(prec, -af.clone()).gamma();
            let h = -(f(2.0).pow(&af)) / g;
            let subexp = Rational::from(-1) - &a;
            Ok(report(fam, f(0.5), cls.block, a, h.ln(), subexp, Method::ClosedForm))
        }
        Family::LambdaBindingLength(k) => {
            let chain = RadicalChain::new(fam)?;
            let cls = classify(&chain, prec)?;
            let kf = Float::with_val(prec, k);
            let num = Float::with_val(prec, &kf * 2u32) + kf.sqrt();
            let ln_h = (num.ln() - f(4.0).ln() - pi(prec).ln() - ln_c_product(k + 1, prec)) / 2u32;
            Ok(report(fam, cls.rho, cls.block, cls.theta, ln_h, Rational::from((-3, 2)), Method::ClosedForm))
        }
        Family::LambdaUnaryHeight(k) => match n_interval(k) {
            Some((j, true)) => {
                let cls = classify_exact_nj(k, j, prec)?;
                let ln_h = ln_h_nj(j, prec);
                Ok(report(fam, cls.rho, cls.block, cls.theta, ln_h, Rational::from((-5, 4)), Method::ClosedForm))
            }
            _ => asym_constant_numeric(fam, prec),
        },
        Family::MotzkinHeightAtMost(_) => asym_constant_numeric(fam, prec),
    }
}

/// `log10` of the predicted count at size `n`; `-inf` off the parity class.
pub fn asym_estimate(fam: Family, n: u64, prec: u32) -> Result<Float, RadicalError> {
    let r = asym_constant(fam, prec)?;
    Ok(estimate_from(&r, n))
}

pub fn estimate_from(r: &SingularityReport, n: u64) -> Float {
    let prec = r.rho.prec();
    if !r.family.admits_size(n) {
        return Float::with_val(prec, rug::float::Special::NegInfinity);
    }
    let nf = Float::with_val(prec, n);
    let sub = Float::with_val(prec, &r.subexp_exponent) * nf.clone().log10();
    Float::with_val(prec, &r.constant_log10 + sub) + Float::with_val(prec, &r.growth_log10 * &nf)
}

/// Leading-order approximation of the singularity.
pub fn rho_approx(fam: Family, prec: u32) -> Result<Float, RadicalError> {
    match fam {
        Family::LambdaUnaryHeight(k) if k >= 1 => {
            let kf = Float::with_val(prec, k);
            Ok(Float::with_val(prec, 1) / (kf.clone().sqrt() * 2u32) - Float::with_val(prec, 1) / (kf * 4u32))
        }
        Family::LambdaBindingLength(k) if k >= 1 => {
            Ok(Float::with_val(prec, 1) / (Float::with_val(prec, k).sqrt() * 2u32 + 1u32))
        }
        _ => Err(RadicalError::Unsupported(fam)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_n1_closed_form() {
        let r = asym_constant(Family::LambdaUnaryHeight(1), 256).unwrap();
        let expect = Float::with_val(256, 2).pow(0.25f64) / (Float::with_val(256, 0.75).gamma() * 4u32);
        assert!(((r.constant() - &expect) / expect).abs() < 1e-40);
        assert_eq!(r.subexp_exponent, Rational::from((-5, 4)));
    }

    #[test]
    fn exact_unary_parity_marker() {
        let e = asym_estimate(Family::LambdaExactUnary(2), 11, 128).unwrap();
        assert!(e.is_finite());
        let e = asym_estimate(Family::LambdaExactUnary(2), 10, 128).unwrap();
        assert!(e.is_infinite() && e < 0);
    }

    #[test]
    fn unsupported() {
        assert!(matches!(asym_constant(Family::LambdaAll, 128), Err(RadicalError::ZeroRadius)));
        assert!(matches!(asym_constant(Family::LambdaAtMostUnary(2), 128), Err(RadicalError::Unsupported(_))));
    }
}
