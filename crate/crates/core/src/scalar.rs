//! Scalar fields the coefficient tower is built over.
//!
//! Everything above this module is generic over [`Scalar`]; the crate root
//! fixes the concrete choice ([`crate::Rational`]). Canonical forms rely on
//! polynomial gcds and exact zero tests, so only exact fields qualify.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Minimal field interface used by the generic polynomial routines.
///
/// Implemented by the base scalars and by [`crate::CoeffFrac`], so the
/// same gcd code serves both `Q[q0]` and `Q(q0)[z]`.
pub trait FieldElem:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
}

/// An exact scalar field (a ratio of integers).
pub trait Scalar: FieldElem + Display + 'static {
    fn from_i64(v: i64) -> Self;

    fn from_frac(num: i64, den: i64) -> Self {
        Self::from_i64(num) / Self::from_i64(den)
    }

    /// Lossless widening to a big rational (renderers and JSON).
    fn to_big(&self) -> BigRational;

    /// Narrowing; `None` when the value does not fit.
    fn from_big(v: &BigRational) -> Option<Self>;

    fn is_negative(&self) -> bool;
}

impl<I> FieldElem for Ratio<I> where
    I: Clone + Integer + Signed + Debug + Send + Sync
{
}

impl<I> Scalar for Ratio<I>
where
    I: Clone
        + Integer
        + Signed
        + Debug
        + Display
        + FromStr
        + FromPrimitive
        + ToPrimitive
        + Send
        + Sync
        + 'static,
{
    fn from_i64(v: i64) -> Self {
        Ratio::from_integer(I::from_i64(v).expect("integer type too narrow"))
    }

    fn to_big(&self) -> BigRational {
        let n: BigInt = self.numer().to_string().parse().expect("integer renders as decimal");
        let d: BigInt = self.denom().to_string().parse().expect("integer renders as decimal");
        BigRational::new(n, d)
    }

    fn from_big(v: &BigRational) -> Option<Self> {
        let n = I::from_str(&v.numer().to_string()).ok()?;
        let d = I::from_str(&v.denom().to_string()).ok()?;
        Some(Ratio::new(n, d))
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// Parses `num` and `den` decimal strings into a scalar.
pub fn scalar_from_strings<T: Scalar>(num: &str, den: &str) -> Option<T> {
    let n: BigInt = num.trim().parse().ok()?;
    let d: BigInt = den.trim().parse().ok()?;
    if d.is_zero() {
        return None;
    }
    T::from_big(&BigRational::new(n, d))
}

/// Decimal `(numerator, denominator)` strings of a scalar in lowest terms.
pub fn scalar_to_strings<T: Scalar>(v: &T) -> (String, String) {
    let b = v.to_big();
    (b.numer().to_string(), b.denom().to_string())
}

/// Compact rational formatting: `p` or `p/q`.
pub(crate) struct RatFmt<'a, T>(pub &'a T);

impl<T: Scalar> Display for RatFmt<'_, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.0.to_big();
        if b.denom().is_one() {
            write!(f, "{}", b.numer())
        } else {
            write!(f, "{}/{}", b.numer(), b.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Rational64;

    #[test]
    fn string_round_trip_big() {
        let v = BigRational::new(BigInt::from(-7), BigInt::from(207360));
        let (n, d) = scalar_to_strings(&v);
        assert_eq!((n.as_str(), d.as_str()), ("-7", "207360"));
        assert_eq!(scalar_from_strings::<BigRational>(&n, &d), Some(v));
    }

    #[test]
    fn narrow_scalar_rejects_overflow() {
        let huge = BigRational::from_integer(BigInt::from(10).pow(40));
        assert!(Rational64::from_big(&huge).is_none());
        assert_eq!(Rational64::from_frac(6, 4), Rational64::new(3, 2));
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert!(scalar_from_strings::<BigRational>("1", "0").is_none());
    }
}
