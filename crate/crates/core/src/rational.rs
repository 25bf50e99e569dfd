//! Exact rational scalars, plus the text conventions used by every file
//! format in the crate: `"num/den"` strings on output, and integers,
//! fractions or finite decimals on input.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

/// Shorthand for `num/den` as a [`Rational`]. Panics on a zero denominator.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Shorthand for an integer-valued [`Rational`].
pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal {text:?}: {reason}")]
pub struct ParseRationalError {
    pub text: String,
    pub reason: &'static str,
}

impl ParseRationalError {
    fn new(text: &str, reason: &'static str) -> Self {
        Self {
            text: text.to_string(),
            reason,
        }
    }
}

/// Parses `"7"`, `"-3/4"` or a finite decimal such as `"0.8"` or `"-1.25"`.
pub fn parse_rational(text: &str) -> Result<Rational, ParseRationalError> {
    let s = text.trim();
    if s.is_empty() {
        return Err(ParseRationalError::new(text, "empty"));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num = parse_int(num).ok_or_else(|| ParseRationalError::new(text, "bad numerator"))?;
        let den = parse_int(den).ok_or_else(|| ParseRationalError::new(text, "bad denominator"))?;
        if den.is_zero() {
            return Err(ParseRationalError::new(text, "zero denominator"));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let (negative, whole) = match whole.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, whole.strip_prefix('+').unwrap_or(whole)),
        };
        if (whole.is_empty() && frac.is_empty())
            || !whole.bytes().all(|b| b.is_ascii_digit())
            || !frac.bytes().all(|b| b.is_ascii_digit())
        {
            return Err(ParseRationalError::new(text, "bad decimal"));
        }
        let digits = format!("{whole}{frac}");
        let mantissa = BigInt::from_str(if digits.is_empty() { "0" } else { &digits })
            .map_err(|_| ParseRationalError::new(text, "bad decimal"))?;
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let value = Rational::new(mantissa, scale);
        return Ok(if negative { -value } else { value });
    }
    parse_int(s)
        .map(Rational::from_integer)
        .ok_or_else(|| ParseRationalError::new(text, "bad integer"))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let s = s.trim();
    let digits = s.strip_prefix(['-', '+']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Canonical exact rendering: `"n"` for integers, `"n/d"` otherwise.
pub fn format_exact(value: &Rational) -> String {
    value.to_string()
}

/// Decimal rendering with `places` digits after the point, rounding half
/// away from zero. The exact value is never altered; this is display only.
pub fn format_decimal(value: &Rational, places: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10u32), places);
    let scaled = value.abs() * Rational::from_integer(scale.clone());
    let (q, r) = scaled.numer().div_rem(scaled.denom());
    let twice_r: BigInt = r * 2;
    let rounded = if twice_r >= *scaled.denom() { q + 1 } else { q };
    let (int_part, frac_part) = rounded.div_rem(&scale);
    let sign = if value.is_negative() && !rounded.is_zero() {
        "-"
    } else {
        ""
    };
    if places == 0 {
        return format!("{sign}{int_part}");
    }
    let frac = frac_part.to_string();
    format!("{sign}{int_part}.{}{frac}", "0".repeat(places - frac.len()))
}

/// Closest `f64` to an exact rational; only for human-facing tolerances.
pub fn to_f64(value: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    if value.is_zero() {
        return 0.0;
    }
    let shift = value.numer().bits() as i64 - value.denom().bits() as i64;
    let num = value.numer().abs();
    let den = value.denom().clone();
    let scaled = if shift >= 0 {
        Rational::new(num, den << (shift as usize))
    } else {
        Rational::new(num << ((-shift) as usize), den)
    };
    let magnitude = scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift.clamp(-2000, 2000) as i32);
    if value.is_negative() {
        -magnitude
    } else {
        magnitude
    }
}

/// Largest absolute numerator or denominator, the "bit size" proxy used by
/// the magnitude bounds of the reductions.
pub fn height(value: &Rational) -> BigInt {
    let num = value.numer().abs();
    let den = value.denom().clone();
    num.max(den)
}

/// Sign of a rational as an `Ordering` against zero.
pub fn sign(value: &Rational) -> std::cmp::Ordering {
    match value.numer().sign() {
        Sign::Minus => std::cmp::Ordering::Less,
        Sign::NoSign => std::cmp::Ordering::Equal,
        Sign::Plus => std::cmp::Ordering::Greater,
    }
}

/// Wrapper that renders a slice of rationals as `(a, b, c)`.
pub struct Tuple<'a>(pub &'a [Rational]);

impl fmt::Display for Tuple<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn parses_all_literal_forms() {
        assert_eq!(parse_rational("7").unwrap(), int(7));
        assert_eq!(parse_rational("-3/4").unwrap(), rat(-3, 4));
        assert_eq!(parse_rational("6/8").unwrap(), rat(3, 4));
        assert_eq!(parse_rational("0.8").unwrap(), rat(4, 5));
        assert_eq!(parse_rational("-1.25").unwrap(), rat(-5, 4));
        assert_eq!(parse_rational(".5").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("3/-6").unwrap(), rat(-1, 2));
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "a", "1.2.3", "1/2/3", "--1", "1e3", "."] {
            assert!(parse_rational(bad).is_err(), "{bad:?} accepted");
        }
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(format_decimal(&rat(1, 2), 0), "1");
        assert_eq!(format_decimal(&rat(2, 3), 4), "0.6667");
        assert_eq!(format_decimal(&rat(-2, 3), 4), "-0.6667");
        assert_eq!(format_decimal(&rat(1, 20000), 4), "0.0001");
        assert_eq!(format_decimal(&rat(-1, 30000), 4), "0.0000");
        assert_eq!(format_decimal(&int(12), 2), "12.00");
        assert_eq!(format_decimal(&rat(4, 5), 4), "0.8000");
    }

    #[test]
    fn exact_format_is_lowest_terms() {
        assert_eq!(format_exact(&rat(10, 4)), "5/2");
        assert_eq!(format_exact(&rat(-4, 2)), "-2");
    }

    #[test]
    fn f64_of_huge_values() {
        let big = Rational::new(BigInt::one() << 3000usize, BigInt::one() << 2999usize);
        assert_eq!(to_f64(&big), 2.0);
        let tiny = Rational::new(BigInt::from(3), BigInt::one() << 2000usize);
        assert_eq!(to_f64(&tiny), 0.0);
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-15);
    }
}
