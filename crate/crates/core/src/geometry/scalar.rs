use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Exact rational number; always stored in lowest terms with positive denominator.
pub type Scalar = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScalarParseError {
    #[error("malformed rational {0:?}")]
    Malformed(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
    #[error("negative length {0:?}")]
    NegativeLength(String),
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"`.
pub fn parse_scalar(text: &str) -> Result<Scalar, ScalarParseError> {
    let t = text.trim();
    let (num, den) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let p: BigInt = num.parse().map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
    let q: BigInt = den.parse().map_err(|_| ScalarParseError::Malformed(text.to_string()))?;
    if q.is_zero() {
        return Err(ScalarParseError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(p, q))
}

/// Canonical text: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(x: &Scalar) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn scalar_to_f64(x: &Scalar) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(0.0)
}

/// Serde adapter for a single scalar as `"p/q"` text.
pub mod serde_scalar {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_scalar(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Scalar, D::Error> {
        let text = String::deserialize(d)?;
        parse_scalar(&text).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for a list of scalars.
pub mod serde_scalar_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[Scalar], s: S) -> Result<S::Ok, S::Error> {
        let texts: Vec<String> = xs.iter().map(format_scalar).collect();
        texts.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Scalar>, D::Error> {
        let texts = Vec::<String>::deserialize(d)?;
        texts.iter().map(|t| parse_scalar(t).map_err(serde::de::Error::custom)).collect()
    }
}

/// A length in `[0, ∞]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtScalar {
    Fin(Scalar),
    Inf,
}

impl ExtScalar {
    pub fn zero() -> Self {
        ExtScalar::Fin(Scalar::zero())
    }

    pub fn fin(x: Scalar) -> Self {
        assert!(!x.is_negative(), "lengths are nonnegative");
        ExtScalar::Fin(x)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtScalar::Fin(x) if x.is_zero())
    }

    pub fn is_inf(&self) -> bool {
        matches!(self, ExtScalar::Inf)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_inf()
    }

    /// Strictly between 0 and ∞.
    pub fn is_interior(&self) -> bool {
        matches!(self, ExtScalar::Fin(x) if !x.is_zero())
    }

    pub fn min(&self, other: &ExtScalar) -> ExtScalar {
        if self <= other {
            self.clone()
        } else {
            other.clone()
        }
    }

    /// Multiplies by a finite nonnegative factor; `∞` stays `∞` for a positive factor.
    pub fn scale(&self, factor: &Scalar) -> ExtScalar {
        match self {
            ExtScalar::Fin(x) => ExtScalar::Fin(x * factor),
            ExtScalar::Inf if factor.is_zero() => ExtScalar::zero(),
            ExtScalar::Inf => ExtScalar::Inf,
        }
    }

    pub fn parse(text: &str) -> Result<Self, ScalarParseError> {
        let t = text.trim();
        if t == "inf" || t == "∞" {
            return Ok(ExtScalar::Inf);
        }
        let x = parse_scalar(t)?;
        if x.is_negative() {
            return Err(ScalarParseError::NegativeLength(text.to_string()));
        }
        Ok(ExtScalar::Fin(x))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            ExtScalar::Fin(x) => scalar_to_f64(x),
            ExtScalar::Inf => f64::INFINITY,
        }
    }
}

impl PartialOrd for ExtScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtScalar::Fin(a), ExtScalar::Fin(b)) => a.cmp(b),
            (ExtScalar::Fin(_), ExtScalar::Inf) => Ordering::Less,
            (ExtScalar::Inf, ExtScalar::Fin(_)) => Ordering::Greater,
            (ExtScalar::Inf, ExtScalar::Inf) => Ordering::Equal,
        }
    }
}

impl Add for &ExtScalar {
    type Output = ExtScalar;
    fn add(self, rhs: &ExtScalar) -> ExtScalar {
        match (self, rhs) {
            (ExtScalar::Fin(a), ExtScalar::Fin(b)) => ExtScalar::Fin(a + b),
            _ => ExtScalar::Inf,
        }
    }
}

impl fmt::Display for ExtScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtScalar::Fin(x) => f.write_str(&format_scalar(x)),
            ExtScalar::Inf => f.write_str("inf"),
        }
    }
}

impl Serialize for ExtScalar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        ExtScalar::parse(&text).map_err(serde::de::Error::custom)
    }
}
