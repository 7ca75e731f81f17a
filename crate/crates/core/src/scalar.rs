//! Exact rational scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The ground field: arbitrary-precision rationals, always in lowest terms.
pub type Scalar = BigRational;

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `-p` or `p/q`.
pub fn parse_scalar(src: &str) -> Result<Scalar> {
    let s = src.trim();
    let bad = || Error::InvalidRational(src.to_string());
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    if num.is_empty() {
        return Err(bad());
    }
    let n: BigInt = num.parse().map_err(|_| bad())?;
    let d: BigInt = match den {
        Some(d) if !d.is_empty() && !d.starts_with(['+', '-']) => d.parse().map_err(|_| bad())?,
        Some(_) => return Err(bad()),
        None => BigInt::one(),
    };
    if d.is_zero() {
        return Err(Error::ZeroDenominator(src.to_string()));
    }
    Ok(Scalar::new(n, d))
}

/// `p` for integers, `p/q` otherwise.
pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn sign_scalar(negative: bool) -> Scalar {
    if negative {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

pub(crate) fn is_negative(c: &Scalar) -> bool {
    c.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_reduces() {
        assert_eq!(parse_scalar("2/4").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar("-3").unwrap(), int(-3));
        assert_eq!(parse_scalar(" 6/-3 ").is_err(), true);
        assert_eq!(format_scalar(&ratio(-4, 6)), "-2/3");
        assert_eq!(format_scalar(&int(0)), "0");
    }

    #[test]
    fn rejects_zero_denominator() {
        assert!(matches!(parse_scalar("1/0"), Err(Error::ZeroDenominator(_))));
        assert!(parse_scalar("x").is_err());
        assert!(parse_scalar("").is_err());
    }
}
