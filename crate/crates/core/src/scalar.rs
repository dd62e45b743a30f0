//! Coefficient traits shared by every polynomial carrier.

use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::Rational;

/// A commutative ring with exact equality.
///
/// Blanket-implemented; the polynomial containers only need ring operations
/// and an exact zero test.
pub trait Coeff:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
}

impl<T> Coeff for T where
    T: Clone
        + Debug
        + PartialEq
        + Zero
        + One
        + Neg<Output = Self>
        + Add<Output = Self>
        + Sub<Output = Self>
        + Mul<Output = Self>
{
}

/// Something that can hand out inverses of nonzero coefficients.
///
/// Over a field this is plain division. Over a localized ring the inverter
/// also records what it inverted, which is how the witness gets built.
pub trait Inverter<C> {
    type Error;

    fn invert(&mut self, c: &C) -> Result<C, Self::Error>;
}

/// Inversion in `Q`.
#[derive(Debug, Default, Clone, Copy)]
pub struct RationalField;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("division by zero")]
pub struct DivisionByZero;

impl Inverter<Rational> for RationalField {
    type Error = DivisionByZero;

    fn invert(&mut self, c: &Rational) -> Result<Rational, DivisionByZero> {
        if c.is_zero() {
            Err(DivisionByZero)
        } else {
            Ok(c.recip())
        }
    }
}

/// Parses a rational written as `p` or `p/q` (optional leading `-`).
pub fn parse_rational(s: &str) -> Option<Rational> {
    use num_bigint::BigInt;
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().ok()?;
    let den: BigInt = den.parse().ok()?;
    if den.is_zero() {
        return None;
    }
    Some(Rational::new(num, den))
}

/// `p` when the denominator is one, else `p/q`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "7", "-3", "1/2", "-5/3"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    #[test]
    fn field_inversion() {
        let mut f = RationalField;
        let two = Rational::from_integer(2.into());
        assert_eq!(f.invert(&two).unwrap(), parse_rational("1/2").unwrap());
        assert_eq!(f.invert(&Rational::zero()), Err(DivisionByZero));
    }
}
