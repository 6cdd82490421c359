//! Exact rational values and decimal rendering.
//!
//! All centrality values in this crate are exact rationals; decimal
//! strings are produced only at the rendering boundary.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

/// Arbitrary-precision rational in canonical form (reduced, positive
/// denominator). `num_rational::BigRational` maintains the invariant.
pub type ExactRational = BigRational;

/// Rational from a signed numerator/denominator pair.
pub fn rational(num: i64, den: i64) -> ExactRational {
    ExactRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational equal to the integer `n`.
pub fn integer(n: u64) -> ExactRational {
    ExactRational::from_integer(BigInt::from(n))
}

/// `1/n` for a positive integer `n`.
pub fn reciprocal(n: u64) -> ExactRational {
    debug_assert!(n > 0);
    ExactRational::new(BigInt::from(1u8), BigInt::from(n))
}

/// Nearest `f64`, for display and tolerance checks only.
pub fn to_f64(value: &ExactRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Fixed-point decimal string with `precision` fractional digits.
/// Ties round away from zero, e.g. 1/180 at 4 digits is "0.0056".
pub fn decimal_string(value: &ExactRational, precision: usize) -> String {
    let scale = BigInt::from(10u8).pow(precision as u32);
    let scaled = (value * ExactRational::from_integer(scale.clone()))
        .round()
        .to_integer();
    let negative = scaled.is_negative();
    let magnitude = scaled.abs();
    let (int_part, frac_part) = (magnitude.clone() / &scale, magnitude % &scale);
    let sign = if negative { "-" } else { "" };
    if precision == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>precision$}")
    }
}

/// Parse a plain decimal string (`-?digits[.digits]`) back into an
/// exact rational. Returns `None` on any other shape.
pub fn parse_decimal(text: &str) -> Option<ExactRational> {
    let text = text.trim();
    let (negative, digits) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().all(|c| c.is_ascii_digit()) || !frac_part.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    let mut num: BigInt = if int_part.is_empty() {
        BigInt::zero()
    } else {
        int_part.parse().ok()?
    };
    let scale = BigInt::from(10u8).pow(frac_part.len() as u32);
    num *= &scale;
    if !frac_part.is_empty() {
        num += frac_part.parse::<BigInt>().ok()?;
    }
    if negative {
        num = -num;
    }
    Some(ExactRational::new(num, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_with_rounding_away_from_zero() {
        assert_eq!(decimal_string(&rational(1, 180), 4), "0.0056");
        assert_eq!(decimal_string(&rational(1, 180), 5), "0.00556");
        assert_eq!(decimal_string(&rational(-1, 9), 4), "-0.1111");
        assert_eq!(decimal_string(&rational(1, 5), 4), "0.2000");
        assert_eq!(decimal_string(&rational(3, 2), 0), "2");
        assert_eq!(decimal_string(&rational(19, 105), 5), "0.18095");
    }

    #[test]
    fn parses_decimals_exactly() {
        assert_eq!(parse_decimal("0.25"), Some(rational(1, 4)));
        assert_eq!(parse_decimal("-0.1111"), Some(rational(-1111, 10000)));
        assert_eq!(parse_decimal("42"), Some(rational(42, 1)));
        assert_eq!(parse_decimal("0.2.5"), None);
        assert_eq!(parse_decimal("x"), None);
    }

    #[test]
    fn round_trip_at_high_precision_is_tight() {
        let value = rational(19, 105);
        let rendered = decimal_string(&value, 12);
        let back = parse_decimal(&rendered).unwrap();
        let err = (&value - &back).abs();
        assert!(err <= rational(1, 1_000_000_000_000));
    }
}
