use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::frac::CoeffFrac;
use super::laurent::forward_owned;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Element `even + odd * s` of `Q(q0)[s] / (s^2 - 3 q0)`.
///
/// `s` is the positive branch point of `y`, where `z = s` and `z = -s`
/// are the two zeros of `z^2 - 3 q0`.
#[derive(Clone, PartialEq, Debug)]
pub struct SExt<T> {
    pub even: CoeffFrac<T>,
    pub odd: CoeffFrac<T>,
}

impl<T: Scalar> SExt<T> {
    pub fn new(even: CoeffFrac<T>, odd: CoeffFrac<T>) -> Self {
        Self { even, odd }
    }

    pub fn from_frac(even: CoeffFrac<T>) -> Self {
        Self { even, odd: CoeffFrac::zero() }
    }

    pub fn s() -> Self {
        Self { even: CoeffFrac::zero(), odd: CoeffFrac::one() }
    }

    fn s_squared() -> CoeffFrac<T> {
        CoeffFrac::mono(3, 1, 1)
    }

    /// `s^e = (3 q0)^(e div 2) s^(e mod 2)` for any integer `e`.
    pub fn s_pow(e: i32) -> Self {
        let half = e.div_euclid(2);
        let p = Self::s_squared().pow(half).expect("3 q0 is invertible");
        if e.rem_euclid(2) == 0 {
            Self::from_frac(p)
        } else {
            Self { even: CoeffFrac::zero(), odd: p }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.odd.is_zero()
    }

    /// Image under `s -> -s`.
    pub fn conj(&self) -> Self {
        Self { even: self.even.clone(), odd: -&self.odd }
    }

    /// `(a + b s)(a - b s) = a^2 - 3 q0 b^2`.
    pub fn norm(&self) -> CoeffFrac<T> {
        &(&self.even * &self.even) - &(&Self::s_squared() * &(&self.odd * &self.odd))
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ninv = n.inv()?;
        let c = self.conj();
        Ok(Self { even: &c.even * &ninv, odd: &c.odd * &ninv })
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// The value in `Q(q0)` when the `s`-odd part vanishes.
    pub fn into_even(self, context: &str) -> Result<CoeffFrac<T>> {
        if self.odd.is_zero() {
            Ok(self.even)
        } else {
            Err(Error::InternalConsistency(format!(
                "{context}: nonzero s-odd part {}",
                self.odd
            )))
        }
    }

    pub fn scale(&self, c: &CoeffFrac<T>) -> Self {
        Self { even: &self.even * c, odd: &self.odd * c }
    }
}

impl<T: Scalar> Add for &SExt<T> {
    type Output = SExt<T>;
    fn add(self, rhs: &SExt<T>) -> SExt<T> {
        SExt { even: &self.even + &rhs.even, odd: &self.odd + &rhs.odd }
    }
}

impl<T: Scalar> Sub for &SExt<T> {
    type Output = SExt<T>;
    fn sub(self, rhs: &SExt<T>) -> SExt<T> {
        SExt { even: &self.even - &rhs.even, odd: &self.odd - &rhs.odd }
    }
}

impl<T: Scalar> Mul for &SExt<T> {
    type Output = SExt<T>;
    fn mul(self, rhs: &SExt<T>) -> SExt<T> {
        let bb = &(&self.odd * &rhs.odd) * &SExt::<T>::s_squared();
        SExt {
            even: &(&self.even * &rhs.even) + &bb,
            odd: &(&self.even * &rhs.odd) + &(&self.odd * &rhs.even),
        }
    }
}

impl<T: Scalar> Neg for &SExt<T> {
    type Output = SExt<T>;
    fn neg(self) -> SExt<T> {
        SExt { even: -&self.even, odd: -&self.odd }
    }
}

impl<T: Scalar> Neg for SExt<T> {
    type Output = SExt<T>;
    fn neg(self) -> SExt<T> {
        -&self
    }
}

forward_owned!(SExt, Add add, Sub sub, Mul mul);

impl<T: Scalar> Zero for SExt<T> {
    fn zero() -> Self {
        Self::from_frac(CoeffFrac::zero())
    }
    fn is_zero(&self) -> bool {
        SExt::is_zero(self)
    }
}

impl<T: Scalar> One for SExt<T> {
    fn one() -> Self {
        Self::from_frac(CoeffFrac::one())
    }
}

impl<T: Scalar> fmt::Display for SExt<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.odd.is_zero()) {
            (_, true) => write!(f, "{}", self.even),
            (true, false) => write!(f, "({}) * s", self.odd),
            (false, false) => write!(f, "{} + ({}) * s", self.even, self.odd),
        }
    }
}
