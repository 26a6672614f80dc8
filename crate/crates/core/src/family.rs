use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// A restricted class of closed lambda terms or Motzkin trees.
///
/// `q` parameters bound the number of unary nodes, `k` parameters bound
/// a height or a binding length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "name", content = "param", rename_all = "kebab-case")]
pub enum Family {
    LambdaAll,
    LambdaExactUnary(u64),
    LambdaAtMostUnary(u64),
    LambdaUnaryHeight(u64),
    LambdaBindingLength(u64),
    Motzkin,
    MotzkinExactUnary(u64),
    MotzkinHeightExact(u64),
    MotzkinHeightAtMost(u64),
}

impl Family {
    pub const NAMES: [&'static str; 9] = [
        "lambda-all",
        "lambda-exact-unary",
        "lambda-at-most-unary",
        "lambda-unary-height",
        "lambda-binding-length",
        "motzkin",
        "motzkin-exact-unary",
        "motzkin-height-exact",
        "motzkin-height-at-most",
    ];

    pub fn name(&self) -> &'static str {
        use Family::*;
        match self {
            LambdaAll => "lambda-all",
            LambdaExactUnary(_) => "lambda-exact-unary",
            LambdaAtMostUnary(_) => "lambda-at-most-unary",
            LambdaUnaryHeight(_) => "lambda-unary-height",
            LambdaBindingLength(_) => "lambda-binding-length",
            Motzkin => "motzkin",
            MotzkinExactUnary(_) => "motzkin-exact-unary",
            MotzkinHeightExact(_) => "motzkin-height-exact",
            MotzkinHeightAtMost(_) => "motzkin-height-at-most",
        }
    }

    pub fn param(&self) -> Option<u64> {
        use Family::*;
        match *self {
            LambdaAll | Motzkin => None,
            LambdaExactUnary(p)
            | LambdaAtMostUnary(p)
            | LambdaUnaryHeight(p)
            | LambdaBindingLength(p)
            | MotzkinExactUnary(p)
            | MotzkinHeightExact(p)
            | MotzkinHeightAtMost(p) => Some(p),
        }
    }

    /// Builds a family from its kebab-case name and optional parameter.
    pub fn from_parts(name: &str, param: Option<u64>) -> Result<Family, FamilyParseError> {
        use Family::*;
        let need = |p: Option<u64>| p.ok_or_else(|| FamilyParseError::MissingParam(name.to_string()));
        let fam = match name {
            "lambda-all" => LambdaAll,
            "motzkin" => Motzkin,
            "lambda-exact-unary" => LambdaExactUnary(need(param)?),
            "lambda-at-most-unary" => LambdaAtMostUnary(need(param)?),
            "lambda-unary-height" => LambdaUnaryHeight(need(param)?),
            "lambda-binding-length" => LambdaBindingLength(need(param)?),
            "motzkin-exact-unary" => MotzkinExactUnary(need(param)?),
            "motzkin-height-exact" => MotzkinHeightExact(need(param)?),
            "motzkin-height-at-most" => MotzkinHeightAtMost(need(param)?),
            other => return Err(FamilyParseError::UnknownName(other.to_string())),
        };
        if fam.param().is_none() && param.is_some() {
            return Err(FamilyParseError::UnexpectedParam(name.to_string()));
        }
        Ok(fam)
    }

    /// Motzkin families carry no binders: every leaf is `Free`.
    pub fn is_motzkin(&self) -> bool {
        matches!(
            self,
            Family::Motzkin
                | Family::MotzkinExactUnary(_)
                | Family::MotzkinHeightExact(_)
                | Family::MotzkinHeightAtMost(_)
        )
    }

    /// False when no object of size `n` can exist for parity reasons.
    ///
    /// With `q` unary and `m` binary nodes the size is `q + 2m + 1`.
    pub fn admits_size(&self, n: u64) -> bool {
        match *self {
            Family::LambdaExactUnary(q) | Family::MotzkinExactUnary(q) => n > q && (n - q) % 2 == 1,
            Family::MotzkinHeightExact(k) => n > k,
            _ => n >= 1,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.param() {
            Some(p) => write!(f, "{}:{}", self.name(), p),
            None => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FamilyParseError {
    #[error("unknown family `{0}` (expected one of: {names})", names = Family::NAMES.join(", "))]
    UnknownName(String),
    #[error("family `{0}` needs a parameter, e.g. `{0}:3`")]
    MissingParam(String),
    #[error("family `{0}` takes no parameter")]
    UnexpectedParam(String),
    #[error("bad family parameter `{0}`")]
    BadParam(String),
}

impl FromStr for Family {
    type Err = FamilyParseError;

    /// Accepts `name` or `name:param`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once(':') {
            Some((name, p)) => {
                let p = p.trim().parse::<u64>().map_err(|_| FamilyParseError::BadParam(p.to_string()))?;
                Family::from_parts(name.trim(), Some(p))
            }
            None => Family::from_parts(s, None),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_parse_roundtrip() {
        for f in [
            Family::LambdaAll,
            Family::LambdaExactUnary(3),
            Family::LambdaAtMostUnary(0),
            Family::LambdaUnaryHeight(135),
            Family::LambdaBindingLength(2),
            Family::Motzkin,
            Family::MotzkinExactUnary(4),
            Family::MotzkinHeightExact(1),
            Family::MotzkinHeightAtMost(7),
        ] {
            assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!("lambda".parse::<Family>(), Err(FamilyParseError::UnknownName(_))));
        assert!(matches!("motzkin-height-exact".parse::<Family>(), Err(FamilyParseError::MissingParam(_))));
        assert!(matches!("motzkin:3".parse::<Family>(), Err(FamilyParseError::UnexpectedParam(_))));
        assert!(matches!("lambda-unary-height:-1".parse::<Family>(), Err(FamilyParseError::BadParam(_))));
    }

    #[test]
    fn parity() {
        let f = Family::LambdaExactUnary(2);
        assert!(f.admits_size(3));
        assert!(!f.admits_size(4));
        assert!(!f.admits_size(2));
        assert!(Family::LambdaAll.admits_size(2));
    }
}
