//! Text encoding of rationals: `"p/q"` or `"p"`, canonical on output.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ArithError;

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn parse_int(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// Parses `"p"` or `"p/q"` with an optional leading minus on `p`.
/// Whitespace and a zero denominator are rejected. Non-reduced input such as
/// `"2/4"` is accepted and canonicalized.
pub fn parse_rational(s: &str) -> Result<BigRational, ArithError> {
    let malformed = || ArithError::MalformedRational(s.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => {
            if d.starts_with('-') {
                return Err(malformed());
            }
            (parse_int(n).ok_or_else(malformed)?, parse_int(d).ok_or_else(malformed)?)
        }
        None => (parse_int(s).ok_or_else(malformed)?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(malformed());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text: reduced, positive denominator, denominator omitted when 1.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}
