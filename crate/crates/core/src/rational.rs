//! Exact rational scalars and their `p/q` text form.
//!
//! Every rational that leaves the crate (JSON, CSV, text formats, CLI output)
//! is written as `numerator/denominator` in lowest terms with a positive
//! denominator, including integers (`3/1`, `0/1`). The parser also accepts a
//! bare integer.

use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// The scalar field used throughout the crate.
///
/// Arithmetic overflow of the `i128` components panics (overflow checks are
/// enabled in every profile of this workspace); it never wraps.
pub type Rational = Ratio<i128>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("invalid integer {0:?}")]
    InvalidInteger(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub fn int(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn frac(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

pub fn half() -> Rational {
    Rational::new(1, 2)
}

/// Parses `p/q` or `p` (optional leading sign on either part).
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let parse_int = |s: &str| -> Result<i128, ParseRationalError> {
        let s = s.trim();
        if s.is_empty() || s.starts_with("+-") || s.starts_with("-+") {
            return Err(ParseRationalError::InvalidInteger(s.to_string()));
        }
        s.parse::<i128>()
            .map_err(|_| ParseRationalError::InvalidInteger(s.to_string()))
    };
    match text.split_once('/') {
        None => Ok(int(parse_int(text)?)),
        Some((num, den)) => {
            let num = parse_int(num)?;
            let den = parse_int(den)?;
            if den == 0 {
                return Err(ParseRationalError::ZeroDenominator(text.to_string()));
            }
            // i128::MIN has no positive counterpart; normalizing it would overflow.
            if num == i128::MIN || den == i128::MIN {
                return Err(ParseRationalError::InvalidInteger(text.to_string()));
            }
            Ok(Rational::new(num, den))
        }
    }
}

/// Formats as `p/q`, always with an explicit denominator.
pub fn format_rational(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Display adapter for `p/q` output.
pub struct Pq<'a>(pub &'a Rational);

impl fmt::Display for Pq<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

pub fn is_integer(value: &Rational) -> bool {
    value.is_integer()
}

/// True for elements of `1/2 + Z`.
pub fn is_half_odd(value: &Rational) -> bool {
    *value.denom() == 2
}

/// `(-1)^n` for an integral rational `n`.
pub fn sign_power(exponent: &Rational) -> Rational {
    debug_assert!(exponent.is_integer(), "sign_power needs an integer exponent");
    if exponent.to_integer().rem_euclid(2) == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

pub fn lcm_of_denominators<'a>(values: impl IntoIterator<Item = &'a Rational>) -> i128 {
    values
        .into_iter()
        .fold(1i128, |acc, v| num_integer::lcm(acc, *v.denom()))
}

pub fn abs(value: &Rational) -> Rational {
    value.abs()
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Serde adapter writing a rational as a `"p/q"` string.
pub mod pq {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&format_rational(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Rational, D::Error> {
        let text = String::deserialize(deserializer)?;
        parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

/// A rational that (de)serializes as a `"p/q"` string.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PqString(pub Rational);

impl Serialize for PqString {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        pq::serialize(&self.0, serializer)
    }
}

impl<'de> Deserialize<'de> for PqString {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        pq::deserialize(deserializer).map(PqString)
    }
}
