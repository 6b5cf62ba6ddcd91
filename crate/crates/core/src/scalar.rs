//! Scalar types for metric values.
//!
//! Distances between regular languages live in `{0} ∪ {λⁿ}` and are normally
//! carried as exponents (see [`crate::metric::ExponentValue`]). General
//! pseudometric tables, used to exercise the lifting operator on arbitrary
//! inputs, are generic over [`Scalar`] so the same code runs on exact
//! rationals and on floats.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

/// Exact rational numbers with arbitrary precision.
pub type Rational = BigRational;

/// Numeric type usable as a pseudometric value.
pub trait Scalar:
    Clone
    + Debug
    + PartialOrd
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Converts an exact rational into this scalar type, rounding if needed.
    fn from_rational(r: &Rational) -> Self;

    /// `|self - other|`
    fn abs_diff(&self, other: &Self) -> Self {
        if self >= other {
            self.clone() - other.clone()
        } else {
            other.clone() - self.clone()
        }
    }
}

impl Scalar for Rational {
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
}

impl Scalar for f64 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {
    fn from_rational(r: &Rational) -> Self {
        r.to_f32().unwrap_or(f32::NAN)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RationalParseError {
    #[error("empty number")]
    Empty,
    #[error("invalid number `{0}`")]
    Invalid(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.125` into an
/// exact rational. Decimal input is converted without rounding.
pub fn parse_rational(text: &str) -> Result<Rational, RationalParseError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(RationalParseError::Empty);
    }
    let invalid = || RationalParseError::Invalid(text.to_string());
    if let Some((num, den)) = text.split_once('/') {
        let num = BigInt::from_str(num.trim()).map_err(|_| invalid())?;
        let den = BigInt::from_str(den.trim()).map_err(|_| invalid())?;
        if den.is_zero() {
            return Err(RationalParseError::ZeroDenominator(text.to_string()));
        }
        return Ok(Rational::new(num, den));
    }
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((i, f)) => (i, f),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(invalid());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(invalid());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| invalid())?;
    let denom = num_traits::pow(BigInt::from(10u32), frac_part.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

/// Formats a rational in lowest terms as `p/q`, or `p` when integral.
pub fn format_rational(r: &Rational) -> String {
    // BigRational keeps itself reduced; Display prints `p` for integers.
    r.to_string()
}

/// Decimal rendering with at least six significant digits.
pub fn format_decimal(r: &Rational) -> String {
    if r.is_zero() {
        return "0".to_string();
    }
    let v = r.to_f64().unwrap_or(f64::NAN);
    if v.abs() >= 1e-3 {
        let int_digits = if v.abs() >= 1.0 {
            v.abs().log10().floor() as usize + 1
        } else {
            0
        };
        let decimals = if int_digits > 0 {
            6usize.saturating_sub(int_digits)
        } else {
            6 + leading_zeros(v)
        };
        format!("{v:.decimals$}")
    } else {
        format!("{v:.5e}")
    }
}

fn leading_zeros(v: f64) -> usize {
    let mut zeros = 0;
    let mut x = v.abs();
    while x < 0.1 && x > 0.0 {
        x *= 10.0;
        zeros += 1;
    }
    zeros
}

/// `base^exp` for a rational base.
pub fn rational_pow(base: &Rational, exp: u32) -> Rational {
    num_traits::pow(base.clone(), exp as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn parses_fractions_integers_and_decimals() {
        assert_eq!(parse_rational("1/4").unwrap(), q(1, 4));
        assert_eq!(parse_rational("2/8").unwrap(), q(1, 4));
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("0.25").unwrap(), q(1, 4));
        assert_eq!(parse_rational(".5").unwrap(), q(1, 2));
        assert_eq!(parse_rational("0.1").unwrap(), q(1, 10));
        assert_eq!(parse_rational("-0.75").unwrap(), q(-3, 4));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.2.3").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn decimal_rendering_keeps_six_significant_digits() {
        assert_eq!(format_decimal(&q(1, 4)), "0.250000");
        assert_eq!(format_decimal(&q(1, 1)), "1.00000");
        assert_eq!(format_decimal(&q(1, 3)), "0.333333");
        assert_eq!(format_decimal(&q(1, 64)), "0.0156250");
        assert_eq!(format_decimal(&q(1, 1 << 20)), "9.53674e-7");
        assert_eq!(format_decimal(&q(0, 1)), "0");
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(format_rational(&q(6, 8)), "3/4");
        assert_eq!(format_rational(&q(4, 4)), "1");
    }
}
