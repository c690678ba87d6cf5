use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Rational = BigRational;

pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    let parse_int = |t: &str| {
        t.trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Parse(format!("bad integer `{t}`")))
    };
    match s.split_once('/') {
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(Rational::new(parse_int(n)?, d))
        }
        None => Ok(Rational::from_integer(parse_int(&s)?)),
    }
}

pub fn rational_to_string(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A rational written either as a JSON integer or as a string `"a/b"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalLiteral {
    Int(i64),
    Text(String),
}

impl RationalLiteral {
    pub fn to_rational(&self) -> Result<Rational> {
        match self {
            RationalLiteral::Int(i) => Ok(Rational::from_integer(BigInt::from(*i))),
            RationalLiteral::Text(s) => parse_rational(s),
        }
    }

    pub fn from_rational(q: &Rational) -> Self {
        if q.denom().is_one() {
            if let Ok(i) = i64::try_from(q.numer().clone()) {
                return RationalLiteral::Int(i);
            }
        }
        RationalLiteral::Text(rational_to_string(q))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_reduces() {
        let q = parse_rational("6/-4").unwrap();
        assert_eq!(rational_to_string(&q), "-3/2");
        assert_eq!(rational_to_string(&parse_rational(" 7 ").unwrap()), "7");
        assert_eq!(parse_rational("1/0"), Err(Error::DivisionByZero));
        assert!(parse_rational("x").is_err());
    }
}
