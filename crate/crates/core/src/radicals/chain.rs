use rug::{Float, Rational};

use super::poly::Poly;
use super::RadicalError;
use crate::family::Family;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    UnaryHeight,
    BindingLength,
    MotzkinAtMost,
    MotzkinExact,
}

/// One level `R_i = p_i + q_i * sqrt(R_{i-1})`; `q_1` is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level {
    pub p: Poly,
    pub q: Poly,
}

/// Nested radicals of a family; levels are numbered from 1 (innermost).
///
/// Levels are generated on demand, so chains with very many levels
/// are cheap to hold.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RadicalChain {
    family: Family,
    kind: Kind,
    k: u64,
    /// `(alpha, beta)`: the generating function is `(1 - alpha z - sqrt(R_K)) / (beta z)`.
    pub alpha: Rational,
    pub beta: Rational,
}

/// Result of [`eval_chain`].
#[derive(Clone, Debug, PartialEq)]
pub enum ChainValue {
    /// Every radicand, innermost first.
    Defined(Vec<Float>),
    /// The 1-based level whose radicand is negative first.
    UndefinedAt(u64),
}

impl RadicalChain {
    pub fn new(fam: Family) -> Result<RadicalChain, RadicalError> {
        let (kind, k) = match fam {
            Family::LambdaUnaryHeight(k) => (Kind::UnaryHeight, k),
            Family::LambdaBindingLength(k) => (Kind::BindingLength, k),
            Family::MotzkinHeightAtMost(k) => (Kind::MotzkinAtMost, k),
            Family::MotzkinHeightExact(k) => (Kind::MotzkinExact, k),
            other => return Err(RadicalError::NoChain(other)),
        };
        let alpha = if kind == Kind::BindingLength && k == 0 { 1 } else { 0 };
        Ok(RadicalChain { family: fam, kind, k, alpha: Rational::from(alpha), beta: Rational::from(2) })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    /// Number of levels `K`.
    pub fn len(&self) -> u64 {
        self.k + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn level(&self, i: u64) -> Level {
        assert!(i >= 1 && i <= self.len(), "level {i} out of range");
        let k = self.k as i128;
        let two_z = Poly(vec![Rational::new(), Rational::from(2)]);
        // 1 - 2z - 4(k - i + 1) z^2 + 2z sqrt(.)
        let unary_height_step =
            |i: u64| Level { p: Poly::quadratic(1, -2, -4 * (k - i as i128 + 1)), q: two_z.clone() };
        match self.kind {
            Kind::UnaryHeight => {
                if i == 1 {
                    Level { p: Poly::quadratic(1, 0, -4 * k), q: Poly::zero() }
                } else {
                    unary_height_step(i)
                }
            }
            Kind::BindingLength => match i {
                1 => Level { p: Poly::quadratic(1, -2, 1 - 4 * k), q: Poly::zero() },
                2 => Level { p: Poly::quadratic(1, -2, 2 - 4 * (k - 1)), q: two_z },
                _ => unary_height_step(i),
            },
            Kind::MotzkinAtMost => {
                if i == 1 {
                    Level { p: Poly::quadratic(1, 0, -4), q: Poly::zero() }
                } else {
                    Level { p: Poly::quadratic(1, -2, -4), q: two_z }
                }
            }
            Kind::MotzkinExact => {
                if i == 1 {
                    Level { p: Poly::quadratic(1, 0, -4), q: Poly::zero() }
                } else {
                    Level { p: Poly::quadratic(1, -2, 0), q: two_z }
                }
            }
        }
    }

    pub fn levels(&self) -> impl Iterator<Item = Level> + '_ {
        (1..=self.len()).map(|i| self.level(i))
    }

    /// Value of the generating function at `z` from its outermost radicand.
    pub fn gf_value(&self, z: &Float, outer: &Float) -> Float {
        let num = Float::with_val(z.prec(), 1) - Float::with_val(z.prec(), &self.alpha * z) - outer.clone().sqrt();
        num / (Float::with_val(z.prec(), &self.beta * z))
    }
}

/// Evaluates every radicand at `z`, innermost first.
pub fn eval_chain(chain: &RadicalChain, z: &Float) -> ChainValue {
    eval_levels(chain, z, chain.len())
}

pub(crate) fn eval_levels(chain: &RadicalChain, z: &Float, upto: u64) -> ChainValue {
    let mut out: Vec<Float> = Vec::with_capacity(upto.min(1 << 16) as usize);
    for i in 1..=upto {
        let lvl = chain.level(i);
        let mut v = lvl.p.eval(z);
        if let Some(prev) = out.last() {
            if !lvl.q.is_zero() {
                v += lvl.q.eval(z) * prev.clone().sqrt();
            }
        }
        if v < 0 {
            return ChainValue::UndefinedAt(i);
        }
        out.push(v);
    }
    ChainValue::Defined(out)
}
