//! Scalar abstraction shared by the checkers, the tree solver and the LP.
//!
//! Everything that only needs ordered field arithmetic is written against
//! [`Scalar`]. The exact paths (certificates, gadgets, the exact solver)
//! instantiate it with [`Rational`]; `f64` is accepted for quick numeric
//! experiments but carries no exactness guarantee.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, Zero};

use crate::error::Error;

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

pub trait Scalar:
    Clone + fmt::Debug + fmt::Display + PartialOrd + Num + Signed + FromPrimitive + Send + Sync + 'static
{
    /// Strictly above zero by order. Unlike `Signed::is_positive`, this is
    /// false for a floating-point `+0.0`.
    fn gt_zero(&self) -> bool {
        *self > Self::zero()
    }

    /// Strictly below zero by order; false for `-0.0`.
    fn lt_zero(&self) -> bool {
        *self < Self::zero()
    }

    fn from_int(v: i64) -> Self {
        Self::from_i64(v).expect("integer representable in scalar type")
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    fn half() -> Self {
        Self::ratio(1, 2)
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }

    fn min_of(a: Self, b: Self) -> Self {
        if a <= b {
            a
        } else {
            b
        }
    }

    fn pow_u32(&self, p: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..p {
            acc = acc * self.clone();
        }
        acc
    }
}

impl<T> Scalar for T where
    T: Clone
        + fmt::Debug
        + fmt::Display
        + PartialOrd
        + Num
        + Signed
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a reduced rational.
pub fn parse_rational(text: &str) -> Result<Rational, Error> {
    let text = text.trim();
    let bad = || Error::InvalidRational(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Canonical text form: integers without `/1`, otherwise `p/q` in lowest terms.
pub fn format_rational(value: &Rational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::ratio(num, den)
}

pub fn int(v: i64) -> Rational {
    Rational::from_int(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert_eq!(parse_rational("6/4").unwrap(), rational(3, 2));
        assert_eq!(parse_rational("-1/2").unwrap(), rational(-1, 2));
        assert_eq!(parse_rational(" 2 / -4 ").unwrap(), rational(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn canonical_format() {
        assert_eq!(format_rational(&rational(4, 2)), "2");
        assert_eq!(format_rational(&rational(2, -4)), "-1/2");
        assert_eq!(format_rational(&int(0)), "0");
    }

    #[test]
    fn generic_helpers_agree_across_scalars() {
        assert_eq!(f64::half(), 0.5);
        assert_eq!(Rational::half(), rational(1, 2));
        assert_eq!(int(3).pow_u32(3), int(27));
        assert_eq!(2.0f64.pow_u32(0), 1.0);
    }

    #[test]
    fn float_zero_has_no_sign() {
        assert!(!0.0f64.gt_zero() && !(-0.0f64).lt_zero());
        assert!(1e-300f64.gt_zero() && int(-1).lt_zero() && !int(0).gt_zero());
    }
}
