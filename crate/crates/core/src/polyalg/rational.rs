//! Exact rational scalars.
//!
//! `Rational` is `num_rational::BigRational`, which already keeps the
//! denominator positive and the fraction reduced. This module adds the text
//! form used in scenario files and JSON output.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = num_rational::BigRational;

/// Build a rational from a machine integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Build `n/d`. Panics on a zero denominator.
pub fn frac(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"-3/2"`, `"5"` or `"0"`. A leading Unicode minus sign is accepted.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let (neg, body) = if let Some(rest) = t.strip_prefix('-') {
        (true, rest)
    } else if let Some(rest) = t.strip_prefix('\u{2212}') {
        (true, rest)
    } else {
        (false, t)
    };
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match body.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (body, "1"),
    };
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit());
    if !digits(num) || !digits(den) {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = den.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(bad());
    }
    let r = Rational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// Text form: `"-3/2"`, `"5"`.
pub fn format_rational(r: &Rational) -> String {
    r.to_string()
}

/// Nearest double; saturates to infinities for huge values.
pub fn to_f64(r: &Rational) -> f64 {
    match (r.numer().to_f64(), r.denom().to_f64()) {
        (Some(n), Some(d)) if n.is_finite() && d.is_finite() => n / d,
        _ => {
            // Scale both parts down before dividing when they overflow f64.
            let shift = r.numer().bits().max(r.denom().bits()).saturating_sub(1000);
            let n = (r.numer() >> shift).to_f64().unwrap_or(f64::NAN);
            let d = (r.denom() >> shift).to_f64().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Exact square root when `r` is the square of a rational.
pub fn sqrt_exact(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3/2", "7/9", "-1"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("6/4").unwrap(), frac(3, 2));
        assert_eq!(parse_rational("\u{2212}1/2").unwrap(), frac(-1, 2));
        assert_eq!(parse_rational(" 0/5 ").unwrap(), int(0));
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "x", "1.5", "--1", "1/", "/2"] {
            assert!(parse_rational(s).is_err(), "{s}");
        }
    }

    #[test]
    fn normalization() {
        let r = frac(4, -6);
        assert_eq!(r.numer(), &BigInt::from(-2));
        assert_eq!(r.denom(), &BigInt::from(3));
    }

    #[test]
    fn exact_roots() {
        assert_eq!(sqrt_exact(&int(4)), Some(int(2)));
        assert_eq!(sqrt_exact(&frac(9, 16)), Some(frac(3, 4)));
        assert_eq!(sqrt_exact(&int(2)), None);
        assert_eq!(sqrt_exact(&int(-4)), None);
    }

    #[test]
    fn float_conversion() {
        assert_eq!(to_f64(&frac(1, 4)), 0.25);
        let big = Rational::new(BigInt::from(10).pow(400), BigInt::from(10).pow(399));
        assert!((to_f64(&big) - 10.0).abs() < 1e-12);
    }
}
