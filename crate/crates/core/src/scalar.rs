//! Exact rational scalars.
//!
//! Every weight, shift and eigenvalue in the engine is a [`ExactScalar`]:
//! an arbitrary-precision rational kept in lowest terms with a positive
//! denominator.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::str::FromStr;

pub type ExactScalar = BigRational;

/// `num / den` as an exact scalar. Panics if `den == 0`.
pub fn rat(num: i64, den: i64) -> ExactScalar {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> ExactScalar {
    BigRational::from_integer(BigInt::from(value))
}

pub fn from_usize(value: usize) -> ExactScalar {
    BigRational::from_integer(BigInt::from(value))
}

/// Renders `p` or `p/q`.
pub fn format_scalar(value: &ExactScalar) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {0:?}")]
pub struct ScalarParseError(pub String);

/// Parses `p`, `p/q` or a terminating decimal such as `-0.25`.
///
/// Decimals are converted exactly (`0.99` is `99/100`); exponent notation
/// is rejected.
pub fn parse_scalar(text: &str) -> Result<ExactScalar, ScalarParseError> {
    let err = || ScalarParseError(text.to_string());
    let t = text.trim();
    if t.is_empty() {
        return Err(err());
    }
    if let Some((num, den)) = t.split_once('/') {
        let num = parse_int(num.trim()).ok_or_else(err)?;
        let den = parse_int(den.trim()).ok_or_else(err)?;
        if den.is_zero() {
            return Err(err());
        }
        return Ok(BigRational::new(num, den));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = whole.starts_with('-');
        let whole_digits = whole.trim_start_matches(['-', '+']);
        if !whole_digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let digits = format!("{whole_digits}{frac}");
        let mut num = BigInt::from_str(&digits).map_err(|_| err())?;
        if negative {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10), frac.len());
        return Ok(BigRational::new(num, den));
    }
    parse_int(t).map(BigRational::from_integer).ok_or_else(err)
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.trim_start_matches(['-', '+']);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

pub(crate) fn binomial(n: u32, k: u32) -> ExactScalar {
    if k > n {
        return ExactScalar::zero();
    }
    let mut acc = ExactScalar::one();
    for t in 0..k {
        acc = acc * from_usize((n - t) as usize) / from_usize((t + 1) as usize);
    }
    acc
}
