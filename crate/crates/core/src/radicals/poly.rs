use rug::{Float, Rational};

/// Polynomial with rational coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly(pub Vec<Rational>);

impl Poly {
    pub fn zero() -> Poly {
        Poly(Vec::new())
    }

    /// `c0 + c1 z + c2 z^2` from integer coefficients.
    pub fn quadratic(c0: i64, c1: i64, c2: i128) -> Poly {
        let mut p = Poly(vec![Rational::from(c0), Rational::from(c1), Rational::from(c2)]);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(|c| *c == 0) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn eval(&self, z: &Float) -> Float {
        let mut acc = Float::new(z.prec());
        for c in self.0.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    pub fn eval_exact(&self, z: &Rational) -> Rational {
        let mut acc = Rational::new();
        for c in self.0.iter().rev() {
            acc *= z;
            acc += c;
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        let d = self.0.iter().enumerate().skip(1).map(|(i, c)| Rational::from(c * i as u64)).collect();
        let mut p = Poly(d);
        p.trim();
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn eval_and_derivative() {
        let p = Poly::quadratic(1, -2, -12);
        let z = Float::with_val(64, 0.5);
        assert_eq!(p.eval(&z), 1.0 - 1.0 - 3.0);
        assert_eq!(p.derivative(), Poly::quadratic(-2, -24, 0));
        assert_eq!(p.eval_exact(&Rational::from((1, 6))), Rational::from((1, 3)));
        assert!(Poly::quadratic(0, 0, 0).is_zero());
    }
}
