//! Nested-radical generating functions: singularities, types and
//! coefficient asymptotics.

mod asymptotics;
mod chain;
mod poly;
pub mod sequences;
mod singularity;

use rug::Float;
use serde::Serialize;

use crate::family::Family;

pub use asymptotics::{
    asym_constant, asym_constant_numeric, asym_estimate, estimate_from, ln_h_nj, ln_lambda_asymptotic,
    ln_lambda_product_any, rho_approx, sqrt_series_constant, Method, SingularityReport, DIRECT_LAMBDA_FACTORS,
};
pub use chain::{eval_chain, ChainValue, Level, RadicalChain};
pub use poly::Poly;
pub use singularity::{
    classify, expected_block, find_rho, gamma_at_block, local_expansion, vanishing_tolerance, Classification,
    LocalExpansion,
};

pub const DEFAULT_PRECISION: u32 = 256;
pub const MIN_PRECISION: u32 = 64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RadicalError {
    #[error("precision of {0} bits is below the minimum of 64")]
    Precision(u32),
    #[error("{0} has no radical chain")]
    NoChain(Family),
    #[error("{0} is empty, so it has no dominant singularity")]
    EmptyClass(Family),
    #[error("asymptotics of {0} are not supported")]
    Unsupported(Family),
    #[error("lambda-all has radius of convergence zero: its counts grow faster than any exponential")]
    ZeroRadius,
    #[error("singularity search for {family} failed: predicate wrong at the {side} end of the bracket")]
    Bracket { family: Family, side: &'static str },
    #[error(
        "vanishing block of {family} is {numeric:?} numerically but {exact:?} by the integer test; raise the precision"
    )]
    Inconsistent { family: Family, numeric: Vec<u64>, exact: Vec<u64> },
    #[error("precision alarm: {0}")]
    PrecisionAlarm(String),
}

pub(crate) fn check_precision(prec: u32) -> Result<(), RadicalError> {
    if prec < MIN_PRECISION {
        Err(RadicalError::Precision(prec))
    } else {
        Ok(())
    }
}

/// Decimal rendering with `digits` significant digits, `1.234e-5` style.
pub fn format_sig(x: &Float, digits: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if *x > 0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let s = x.to_string_radix(10, Some(digits.max(1)));
    normalize_float_string(&s)
}

// rug prints "1.2340000e-5" or "1.234e0"; emit plain notation for moderate exponents.
fn normalize_float_string(s: &str) -> String {
    let (mant, exp) = match s.split_once('e') {
        Some((m, e)) => (m.to_string(), e.parse::<i64>().unwrap_or(0)),
        None => (s.to_string(), 0),
    };
    let neg = mant.starts_with('-');
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = mant.trim_start_matches('-').find('.').unwrap_or(mant.trim_start_matches('-').len()) as i64;
    let e10 = exp + point - 1;
    let sign = if neg { "-" } else { "" };
    if (-5..=15).contains(&e10) {
        let pos = e10 + 1;
        let body = if pos <= 0 {
            format!("0.{}{}", "0".repeat((-pos) as usize), digits)
        } else if pos as usize >= digits.len() {
            format!("{}{}", digits, "0".repeat(pos as usize - digits.len()))
        } else {
            format!("{}.{}", &digits[..pos as usize], &digits[pos as usize..])
        };
        format!("{sign}{body}")
    } else {
        format!("{sign}{}.{}e{}", &digits[..1], &digits[1..], e10)
    }
}

/// The limit constants of the unary-height and binding-length analysis.
#[derive(Clone, Debug, Serialize)]
pub struct LimitDiagnostics {
    /// `(j, u_j^(1/2^j))`.
    pub chi: Vec<(u32, f64)>,
    /// `(j, gamma_j / u_j)`.
    pub gamma_ratio: Vec<(u32, f64)>,
    pub omega_lambda: f64,
    pub omega_c: f64,
    /// `gamma_ratio` at the largest `j`, standing in for its limit.
    pub c_limit: f64,
    pub d: f64,
    /// `D * e^(-K/2)` with `K` from [`sqrt_series_constant`], the constant
    /// that actually matches `h_{N_j}` for large `j`.
    pub d_corrected: f64,
    pub factors: u64,
}

/// Evaluates the limit constants with `factors` terms in each product.
pub fn limit_diagnostics(max_j: u32, factors: u64, prec: u32) -> Result<LimitDiagnostics, RadicalError> {
    check_precision(prec)?;
    let max_j = max_j.clamp(1, 8);
    let chi = (1..=max_j).map(|j| (j, sequences::chi(j, prec).to_f64())).collect();
    let ratios: Vec<(u32, rug::Rational)> = (1..=max_j).map(|j| (j, sequences::gamma_ratio(j))).collect();
    let c = Float::with_val(prec, &ratios.last().unwrap().1);
    let omega = sequences::omega_lambda(factors, prec);
    let d = sequences::d_constant(&c, &omega);
    let k = sqrt_series_constant(prec);
    let d_corrected = Float::with_val(prec, &d * Float::with_val(prec, -k / 2u32).exp());
    Ok(LimitDiagnostics {
        chi,
        gamma_ratio: ratios.iter().map(|(j, r)| (*j, r.to_f64())).collect(),
        omega_lambda: omega.to_f64(),
        omega_c: sequences::omega_c(factors, prec).to_f64(),
        c_limit: c.to_f64(),
        d: d.to_f64(),
        d_corrected: d_corrected.to_f64(),
        factors,
    })
}
