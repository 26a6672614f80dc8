use rug::{Float, Integer, Rational};

use super::chain::RadicalChain;
use super::sequences::{n_interval, u};
use super::{check_precision, RadicalError};
use crate::family::Family;

/// `f(rho - eps) = a + b * eps^theta + ...`
#[derive(Clone, Debug, PartialEq)]
pub struct LocalExpansion {
    pub a: Float,
    pub b: Float,
    pub theta: Rational,
}

impl LocalExpansion {
    fn sqrt(&self) -> LocalExpansion {
        if self.a.is_zero() {
            LocalExpansion { a: self.a.clone(), b: self.b.clone().sqrt(), theta: Rational::from(&self.theta / 2u32) }
        } else {
            let ra = self.a.clone().sqrt();
            let b = Float::with_val(self.b.prec(), &self.b / &ra) / 2u32;
            LocalExpansion { a: ra, b, theta: self.theta.clone() }
        }
    }
}

/// Location and type of the dominant singularity.
#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub rho: Float,
    /// Consecutive 1-based levels vanishing at `rho`.
    pub block: Vec<u64>,
    pub theta: Rational,
}

/// Threshold under which a radicand value at `rho` is taken as zero.
pub fn vanishing_tolerance(prec: u32) -> Float {
    Float::with_val(prec, 1) >> (prec / 2)
}

/// Exact `1/(2 u_j)` when `fam` is `LambdaUnaryHeight(N_j)`.
fn exact_rho(fam: Family) -> Option<Rational> {
    match fam {
        Family::LambdaUnaryHeight(k) => match n_interval(k)? {
            (j, true) => Some(Rational::from((Integer::from(1), u(j) * 2u32))),
            _ => None,
        },
        _ => None,
    }
}

fn all_positive(chain: &RadicalChain, z: &Float) -> bool {
    let mut prev: Option<Float> = None;
    for lvl in chain.levels() {
        let mut v = lvl.p.eval(z);
        if let Some(r) = &prev {
            v += lvl.q.eval(z) * r.clone().sqrt();
        }
        if v <= 0 {
            return false;
        }
        prev = Some(v);
    }
    true
}

/// Dominant singularity of the chain's generating function.
///
/// Bisects the monotone predicate "every radicand is positive" and
/// returns the lower end, so all radicands are nonnegative there.
pub fn find_rho(chain: &RadicalChain, prec: u32) -> Result<Float, RadicalError> {
    check_precision(prec)?;
    let fam = chain.family();
    if let Some(r) = exact_rho(fam) {
        return Ok(Float::with_val(prec, &r));
    }
    let one = Float::with_val(prec, 1);
    let (mut lo, mut hi) = match fam {
        Family::LambdaUnaryHeight(0) | Family::LambdaBindingLength(0) => {
            return Err(RadicalError::EmptyClass(fam));
        }
        Family::LambdaUnaryHeight(k) | Family::LambdaBindingLength(k) => {
            let bound = one.clone() / (Float::with_val(prec, k).sqrt() * 2u32 + 1u32);
            (bound * (one.clone() - Float::with_val(prec, 1e-6)), one.clone() / 2u32)
        }
        _ => (one.clone() / 3u32 * (one.clone() - Float::with_val(prec, 1e-6)), one.clone() / 2u32),
    };
    if !all_positive(chain, &lo) {
        return Err(RadicalError::Bracket { family: fam, side: "lower" });
    }
    if all_positive(chain, &hi) {
        return Err(RadicalError::Bracket { family: fam, side: "upper" });
    }
    let width = prec.saturating_sub(12);
    loop {
        let gap = Float::with_val(prec, &hi - &lo);
        if gap <= Float::with_val(prec, &lo >> width) {
            break;
        }
        let mid = Float::with_val(prec, &lo + &hi) / 2u32;
        if mid == lo || mid == hi {
            break;
        }
        if all_positive(chain, &mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// What the integer test predicts for `LambdaUnaryHeight(k)`.
pub fn expected_block(k: u64) -> Option<Vec<u64>> {
    let (j, exact) = n_interval(k)?;
    let j = j as u64;
    Some(if exact { vec![j, j + 1] } else { vec![j + 1] })
}

/// Finds the dominant singularity and the block of radicands vanishing there.
pub fn classify(chain: &RadicalChain, prec: u32) -> Result<Classification, RadicalError> {
    let rho = find_rho(chain, prec)?;
    let block = vanishing_block(chain, &rho)?;
    if let Family::LambdaUnaryHeight(k) = chain.family() {
        let exact = expected_block(k).expect("k >= 1 here");
        if exact != block {
            return Err(RadicalError::Inconsistent { family: chain.family(), numeric: block, exact });
        }
    }
    let theta = Rational::from((1, Integer::from(1) << block.len() as u32));
    Ok(Classification { rho, block, theta })
}

fn vanishing_block(chain: &RadicalChain, rho: &Float) -> Result<Vec<u64>, RadicalError> {
    let prec = rho.prec();
    let tol = vanishing_tolerance(prec);
    let mut prev: Option<Float> = None;
    let mut first = None;
    for i in 1..=chain.len() {
        let lvl = chain.level(i);
        let mut v = lvl.p.eval(rho);
        if let Some(r) = &prev {
            v += lvl.q.eval(rho) * r.clone().sqrt();
        }
        if Float::with_val(prec, v.abs_ref()) < tol {
            first = Some(i);
            break;
        }
        if v < 0 {
            return Err(RadicalError::PrecisionAlarm(format!("radicand R_{i} is negative below the singularity")));
        }
        prev = Some(v);
    }
    let j =
        first.ok_or_else(|| RadicalError::PrecisionAlarm("no radicand vanishes at the computed singularity".into()))?;
    let mut block = vec![j];
    // above the first zero the inner square root contributes nothing at rho
    let mut a = Float::new(prec);
    let mut in_block = true;
    for i in j + 1..=chain.len() {
        let lvl = chain.level(i);
        let next = lvl.p.eval(rho) + lvl.q.eval(rho) * a.clone().sqrt();
        let small = Float::with_val(prec, next.abs_ref()) < tol;
        if small && in_block {
            block.push(i);
            a = Float::new(prec);
            continue;
        }
        if small || next < 0 {
            return Err(RadicalError::PrecisionAlarm(format!("radicand R_{i} vanishes apart from the block")));
        }
        in_block = false;
        a = next;
    }
    Ok(block)
}

/// Radicand values and derivatives at `z` for levels `1..=upto`.
pub(crate) fn values_and_derivatives(chain: &RadicalChain, z: &Float, upto: u64) -> Vec<(Float, Float)> {
    let prec = z.prec();
    let mut out: Vec<(Float, Float)> = Vec::new();
    for i in 1..=upto {
        let lvl = chain.level(i);
        let mut v = lvl.p.eval(z);
        let mut d = lvl.p.derivative().eval(z);
        if let Some((rv, rd)) = out.last() {
            let s = rv.clone().sqrt();
            v += lvl.q.eval(z) * &s;
            d += lvl.q.derivative().eval(z) * &s;
            d += Float::with_val(prec, lvl.q.eval(z) * rd) / (s * 2u32);
        }
        out.push((v, d));
    }
    out
}

/// Local behaviour of the outermost radicand at the singularity.
pub fn local_expansion(chain: &RadicalChain, c: &Classification) -> Result<LocalExpansion, RadicalError> {
    let rho = &c.rho;
    let prec = rho.prec();
    let tol = vanishing_tolerance(prec);
    let j = c.block[0];
    let below = values_and_derivatives(chain, rho, j);
    let gamma = -below[j as usize - 1].1.clone();
    if gamma <= 0 {
        return Err(RadicalError::PrecisionAlarm(format!("derivative of R_{j} does not decrease at the singularity")));
    }
    let mut state = LocalExpansion { a: Float::new(prec), b: gamma, theta: Rational::from(1) };
    for i in j + 1..=chain.len() {
        let lvl = chain.level(i);
        let s = state.sqrt();
        let q = lvl.q.eval(rho);
        let mut a = lvl.p.eval(rho) + Float::with_val(prec, &q * &s.a);
        if c.block.contains(&i) {
            if Float::with_val(prec, a.abs_ref()) > tol {
                return Err(RadicalError::PrecisionAlarm(format!("R_{i} should vanish but equals {}", a.to_f64())));
            }
            a = Float::new(prec);
        }
        state = LocalExpansion { a, b: q * s.b, theta: s.theta };
    }
    Ok(state)
}

/// `gamma = -R'_j(rho)` at the first vanishing level.
pub fn gamma_at_block(chain: &RadicalChain, c: &Classification) -> Float {
    let j = c.block[0];
    -values_and_derivatives(chain, &c.rho, j)[j as usize - 1].1.clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unary_height_one() {
        let chain = RadicalChain::new(Family::LambdaUnaryHeight(1)).unwrap();
        let c = classify(&chain, 256).unwrap();
        assert_eq!(c.rho, 0.5);
        assert_eq!(c.block, vec![1, 2]);
        assert_eq!(c.theta, Rational::from((1, 4)));
        assert_eq!(gamma_at_block(&chain, &c), 4);
        let e = local_expansion(&chain, &c).unwrap();
        assert!(e.a.is_zero());
        assert_eq!(e.theta, Rational::from((1, 2)));
        assert!((e.b - 2f64).abs() < 1e-60);
    }

    #[test]
    fn generic_k_blocks() {
        for (k, block) in [(2u64, vec![2u64]), (5, vec![2]), (8, vec![2, 3]), (9, vec![3])] {
            let chain = RadicalChain::new(Family::LambdaUnaryHeight(k)).unwrap();
            let c = classify(&chain, 256).unwrap();
            assert_eq!(c.block, block, "k={k}");
        }
    }

    #[test]
    fn empty_classes_rejected() {
        let chain = RadicalChain::new(Family::LambdaUnaryHeight(0)).unwrap();
        assert!(matches!(find_rho(&chain, 128), Err(RadicalError::EmptyClass(_))));
        assert!(find_rho(&chain, 32).is_err());
    }
}
