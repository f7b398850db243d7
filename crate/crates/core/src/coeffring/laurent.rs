use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::scalar::{RatFmt, Scalar};
use crate::upoly;

/// Laurent polynomial `sum c_e q0^e` over a scalar field.
///
/// Time never appears as a separate symbol: `t = -6 q0^2`.
#[derive(Clone, PartialEq, Debug, Default)]
pub struct Laurent<T> {
    terms: BTreeMap<i32, T>,
}

impl<T: Scalar> Laurent<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: T, exp: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        Self { terms }
    }

    /// `c q0^exp` with `c = num/den`.
    pub fn mono(num: i64, den: i64, exp: i32) -> Self {
        Self::monomial(T::from_frac(num, den), exp)
    }

    pub fn q0() -> Self {
        Self::monomial(T::one(), 1)
    }

    /// The time variable, `t = -6 q0^2`.
    pub fn t() -> Self {
        Self::mono(-6, 1, 2)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, T)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: i32, c: T) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, c);
            }
            Some(old) => {
                let s = old + c;
                if !s.is_zero() {
                    self.terms.insert(exp, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn coeff(&self, exp: i32) -> T {
        self.terms.get(&exp).cloned().unwrap_or_else(T::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &T)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// `Some((c, e))` when this is a single nonzero monomial.
    pub fn as_monomial(&self) -> Option<(&T, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, v)| (*e, v.clone() * c.clone()))
                .collect(),
        }
    }

    /// Multiply by `q0^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Nonnegative powers always; negative powers only for monomials.
    pub fn pow(&self, n: i32) -> Option<Self> {
        if n >= 0 {
            let mut acc = Self::one();
            for _ in 0..n {
                acc = &acc * self;
            }
            return Some(acc);
        }
        let (c, e) = self.as_monomial()?;
        let inv = T::one() / c.clone();
        Self::monomial(inv, -e).pow(-n)
    }

    /// Derivative in `t` through `6 q0^2 + t = 0`, i.e. `dq0/dt = -1/(12 q0)`.
    pub fn d_dt(&self) -> Self {
        let twelfth = T::from_frac(1, 12);
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let f = -(T::from_i64(*e as i64) * twelfth.clone());
            (e - 2, c.clone() * f)
        }))
    }

    /// Ascending dense coefficients of `q0^-min * self` and the shift `min`.
    pub(crate) fn to_dense(&self) -> (Vec<T>, i32) {
        let Some(lo) = self.min_exp() else {
            return (Vec::new(), 0);
        };
        let hi = self.max_exp().unwrap_or(lo);
        let mut v = vec![T::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (v, lo)
    }

    pub(crate) fn from_dense(v: &[T], shift: i32) -> Self {
        Self::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, c)| (i as i32 + shift, c.clone())),
        )
    }

    /// Exact quotient in the Laurent ring, `None` if it does not divide.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if let Some((c, e)) = other.as_monomial() {
            return Some(self.scale(&(T::one() / c.clone())).shift(-e));
        }
        let (a, sa) = self.to_dense();
        let (b, sb) = other.to_dense();
        let (q, r) = upoly::divrem(&a, &b);
        if upoly::degree(&r).is_some() {
            return None;
        }
        Some(Self::from_dense(&q, sa - sb))
    }
}

impl<T: Scalar> Add for &Laurent<T> {
    type Output = Laurent<T>;
    fn add(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &Laurent<T> {
    type Output = Laurent<T>;
    fn sub(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl<T: Scalar> Mul for &Laurent<T> {
    type Output = Laurent<T>;
    fn mul(self, rhs: &Laurent<T>) -> Laurent<T> {
        let mut out = Laurent::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        Laurent {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ident, $($tr:ident $m:ident),*) => {$(
        impl<T: Scalar> $tr for $ty<T> {
            type Output = $ty<T>;
            fn $m(self, rhs: $ty<T>) -> $ty<T> { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Laurent, Add add, Sub sub, Mul mul);
pub(crate) use forward_owned;

impl<T: Scalar> Neg for Laurent<T> {
    type Output = Laurent<T>;
    fn neg(self) -> Laurent<T> {
        -&self
    }
}

impl<T: Scalar> Zero for Laurent<T> {
    fn zero() -> Self {
        Laurent::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Scalar> One for Laurent<T> {
    fn one() -> Self {
        Laurent::one()
    }
}

/// Canonical text: descending exponents, e.g. `7/207360 * q0^-5`.
impl<T: Scalar> fmt::Display for Laurent<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = if neg { -c.clone() } else { c.clone() };
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = mag.is_one();
            match *e {
                0 => write!(f, "{}", RatFmt(&mag))?,
                1 if unit => write!(f, "q0")?,
                1 => write!(f, "{} * q0", RatFmt(&mag))?,
                _ if unit => write!(f, "q0^{e}")?,
                _ => write!(f, "{} * q0^{e}", RatFmt(&mag))?,
            }
        }
        Ok(())
    }
}
