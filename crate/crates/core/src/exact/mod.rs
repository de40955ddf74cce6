//! Exact algebra over the variable `z = e^{iθ}`.
//!
//! Everything here works with [`BigRational`] coefficients, so equalities
//! between the objects below are decidable.

mod laurent;
mod rational_expr;
mod series;

pub use laurent::LaurentPoly;
pub use rational_expr::RationalExpr;
pub use series::TruncatedSeries;

pub use num_rational::BigRational;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Shorthand for the rational `num/den`.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

/// `base^exp` for any integer exponent. Panics on `0^negative`.
pub fn rpow(base: &BigRational, exp: i64) -> BigRational {
    num_traits::pow::Pow::pow(base, exp as i32)
}

pub fn to_f64(value: &BigRational) -> f64 {
    value.to_f64().unwrap_or(f64::NAN)
}

/// Parses `p/q`, `p`, or a finite decimal like `-0.25` into an exact rational.
pub fn parse_rational(text: &str) -> Option<BigRational> {
    let text = text.trim();
    if let Ok(r) = text.parse::<BigRational>() {
        return Some(r);
    }
    let (sign, body) = match text.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, text.strip_prefix('+').unwrap_or(text)),
    };
    let (whole, frac) = body.split_once('.')?;
    if whole.is_empty() && frac.is_empty() {
        return None;
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits: BigInt = format!("{whole}{frac}").parse().ok()?;
    let scale = num_traits::pow(BigInt::from(10), frac.len());
    Some(BigRational::new(digits * sign, scale))
}

/// Canonical `p/q` rendering (`p` when the denominator is one).
pub fn fmt_rational(value: &BigRational) -> String {
    value.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("3/5"), Some(rat(3, 5)));
        assert_eq!(parse_rational("-1/3"), Some(rat(-1, 3)));
        assert_eq!(parse_rational("2"), Some(int(2)));
        assert_eq!(parse_rational("0.125"), Some(rat(1, 8)));
        assert_eq!(parse_rational("-.5"), Some(rat(-1, 2)));
        assert_eq!(parse_rational("abc"), None);
        assert_eq!(parse_rational("1/0"), None);
    }

    #[test]
    fn rational_power_handles_negative_exponents() {
        assert_eq!(rpow(&rat(1, 2), -3), int(8));
        assert_eq!(rpow(&rat(2, 3), 0), int(1));
        assert_eq!(fmt_rational(&rat(6, 4)), "3/2");
        assert_eq!(fmt_rational(&int(-4)), "-4");
    }
}
