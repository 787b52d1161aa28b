//! Exact rational plumbing: parsing user-supplied ratios and rendering
//! decimal strings from exact values.
//!
//! All trade-off math stays in `BigRational`; decimal floats only appear
//! at presentation time, rendered here with a fixed number of significant
//! digits.

use crate::error::{Error, Result};
use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

/// Parse "a/b", a plain integer, or a decimal string into an exact
/// rational.
pub fn parse_ratio(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(Error::InvalidParams("empty ratio".into()));
    }
    if let Some((num, den)) = t.split_once('/') {
        let n = BigInt::from_str(num.trim())
            .map_err(|_| Error::InvalidParams(format!("bad numerator in {t:?}")))?;
        let d = BigInt::from_str(den.trim())
            .map_err(|_| Error::InvalidParams(format!("bad denominator in {t:?}")))?;
        if d.is_zero() {
            return Err(Error::InvalidParams(format!("zero denominator in {t:?}")));
        }
        return Ok(BigRational::new(n, d));
    }
    let (sign, digits) = match t.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = match digits.split_once('.') {
        Some((i, f)) => (i, f),
        None => (digits, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::InvalidParams(format!("no digits in {t:?}")));
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(Error::InvalidParams(format!("not a number: {t:?}")));
    }
    let mut all = String::with_capacity(int_part.len() + frac_part.len());
    all.push_str(int_part);
    all.push_str(frac_part);
    let n = BigInt::from_str(&all).expect("digits only");
    let d = BigInt::from(10u32).pow(frac_part.len() as u32);
    Ok(BigRational::new(n * sign, d))
}

/// Render in plain decimal notation, keeping `sig` significant digits in
/// total where possible (the integer part is always printed in full, never
/// truncated to scientific notation). Trailing zeros are trimmed; ties
/// round away from zero.
pub fn format_significant(x: &BigRational, sig: usize) -> String {
    assert!(sig > 0, "need at least one significant digit");
    if x.is_zero() {
        return "0".to_string();
    }
    let neg = x.is_negative();
    let a = x.abs();
    let one = BigRational::one();
    let ten = BigRational::from_integer(BigInt::from(10));
    // how many digits to keep after the decimal point
    let scale = if a >= one {
        let int_digits = a.to_integer().to_string().len();
        sig.saturating_sub(int_digits)
    } else {
        // leading zeros after the point are not significant
        let mut zeros = 0usize;
        let mut scaled = &a * &ten;
        while scaled < one {
            zeros += 1;
            scaled *= &ten;
        }
        zeros + sig
    };
    let mut pow = BigRational::one();
    for _ in 0..scale {
        pow *= &ten;
    }
    let n = (&a * &pow).round().to_integer();
    let digits = n.to_string();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if scale == 0 {
        out.push_str(&digits);
        return out;
    }
    if digits.len() > scale {
        out.push_str(&digits[..digits.len() - scale]);
    } else {
        out.push('0');
    }
    let mut frac: String = if digits.len() > scale {
        digits[digits.len() - scale..].to_string()
    } else {
        format!("{:0>width$}", digits, width = scale)
    };
    while frac.ends_with('0') {
        frac.pop();
    }
    if !frac.is_empty() {
        out.push('.');
        out.push_str(&frac);
    }
    out
}

/// The presentation default: 12 significant digits.
pub fn format_decimal(x: &BigRational) -> String {
    format_significant(x, 12)
}

/// Exact rational from an integer, for building grid values and tests.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_integers_decimals() {
        assert_eq!(parse_ratio("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_ratio("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_ratio(" 3 / 7 ").unwrap(), ratio(3, 7));
        assert_eq!(parse_ratio("3").unwrap(), ratio(3, 1));
        assert_eq!(parse_ratio("0.25").unwrap(), ratio(1, 4));
        assert_eq!(parse_ratio(".5").unwrap(), ratio(1, 2));
        assert_eq!(parse_ratio("1.").unwrap(), ratio(1, 1));
        assert_eq!(parse_ratio("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_ratio("+0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_ratio("-3/4").unwrap(), ratio(-3, 4));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "a", "1/0", "1.2.3", "1/ ", "--1", "0x10", "1e3"] {
            assert!(parse_ratio(bad).is_err(), "accepted {bad:?}");
        }
    }

    #[test]
    fn formats_exact_values_without_padding() {
        assert_eq!(format_decimal(&ratio(0, 1)), "0");
        assert_eq!(format_decimal(&ratio(1, 1)), "1");
        assert_eq!(format_decimal(&ratio(1, 2)), "0.5");
        assert_eq!(format_decimal(&ratio(1, 8)), "0.125");
        assert_eq!(format_decimal(&ratio(1, 64)), "0.015625");
        assert_eq!(format_decimal(&ratio(1, 1000)), "0.001");
        assert_eq!(format_decimal(&ratio(123_456, 1)), "123456");
        assert_eq!(format_decimal(&ratio(-1, 2)), "-0.5");
    }

    #[test]
    fn formats_repeating_values_to_twelve_digits() {
        assert_eq!(format_decimal(&ratio(1, 3)), "0.333333333333");
        assert_eq!(format_decimal(&ratio(2, 3)), "0.666666666667");
        assert_eq!(format_decimal(&ratio(5, 28)), "0.178571428571");
        assert_eq!(format_decimal(&ratio(1, 7)), "0.142857142857");
        // leading zeros after the point do not consume significance
        assert_eq!(format_decimal(&ratio(1, 30000)), "0.0000333333333333");
    }

    #[test]
    fn significance_is_counted_not_places() {
        assert_eq!(format_significant(&ratio(1, 3), 3), "0.333");
        assert_eq!(format_significant(&ratio(12345, 1), 3), "12345");
        assert_eq!(format_significant(&ratio(10, 8), 3), "1.25");
        assert_eq!(format_significant(&ratio(9999, 10000), 3), "1");
    }
}
