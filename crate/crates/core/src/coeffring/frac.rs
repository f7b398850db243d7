use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::laurent::{forward_owned, Laurent};
use crate::error::{Error, Result};
use crate::scalar::{FieldElem, Scalar};
use crate::upoly;

/// Element of `Q(q0)` as `num / den` with two Laurent polynomials.
///
/// Canonical form: monomial denominators are folded into the numerator, so
/// `den` is either `1` or a polynomial in `q0` with nonzero constant term,
/// monic, and coprime to `num`. Equality is structural on this form.
#[derive(Clone, PartialEq, Debug)]
pub struct CoeffFrac<T> {
    num: Laurent<T>,
    den: Laurent<T>,
}

impl<T: Scalar> CoeffFrac<T> {
    pub fn new(num: Laurent<T>, den: Laurent<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_elem(num: Laurent<T>) -> Self {
        Self { num, den: Laurent::one() }
    }

    /// `c q0^exp` with `c = num/den`.
    pub fn mono(num: i64, den: i64, exp: i32) -> Self {
        Self::from_elem(Laurent::mono(num, den, exp))
    }

    pub fn constant(c: T) -> Self {
        Self::from_elem(Laurent::constant(c))
    }

    pub fn q0() -> Self {
        Self::from_elem(Laurent::q0())
    }

    pub fn num(&self) -> &Laurent<T> {
        &self.num
    }

    pub fn den(&self) -> &Laurent<T> {
        &self.den
    }

    /// The numerator when the denominator is trivial.
    pub fn as_elem(&self) -> Option<&Laurent<T>> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn canonical(num: Laurent<T>, den: Laurent<T>) -> Self {
        if num.is_zero() {
            return Self::from_elem(Laurent::zero());
        }
        if let Some((c, e)) = den.as_monomial() {
            let inv = T::one() / c.clone();
            return Self::from_elem(num.scale(&inv).shift(-e));
        }
        let (d, ds) = den.to_dense();
        let (n, ns) = num.to_dense();
        let g = upoly::gcd(&n, &d);
        let (n, d) = if upoly::degree(&g).unwrap_or(0) > 0 {
            (upoly::divrem(&n, &g).0, upoly::divrem(&d, &g).0)
        } else {
            (n, d)
        };
        let lead = d[upoly::degree(&d).expect("nonzero denominator")].clone();
        let d = upoly::make_monic(&d);
        let inv = T::one() / lead;
        let num = Laurent::from_dense(&n, ns - ds).scale(&inv);
        if d.len() == 1 {
            return Self::from_elem(num);
        }
        Self { num, den: Laurent::from_dense(&d, 0) }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul_ref(&rhs.inv_unchecked()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.inv_unchecked())
    }

    fn inv_unchecked(&self) -> Self {
        Self::canonical(self.den.clone(), self.num.clone())
    }

    pub fn pow(&self, n: i32) -> Result<Self> {
        let base = if n < 0 { self.inv()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul_ref(&base);
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &T) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiply by `q0^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    /// Quotient rule on top of [`Laurent::d_dt`].
    pub fn d_dt(&self) -> Self {
        if self.den.is_one() {
            return Self::from_elem(self.num.d_dt());
        }
        let top = &(&self.num.d_dt() * &self.den) - &(&self.num * &self.den.d_dt());
        Self::canonical(top, &self.den * &self.den)
    }

    fn add_ref(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_elem(&self.num + &rhs.num);
        }
        if self.den == rhs.den {
            return Self::canonical(&self.num + &rhs.num, self.den.clone());
        }
        let top = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        Self::canonical(top, &self.den * &rhs.den)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        if self.den.is_one() && rhs.den.is_one() {
            return Self::from_elem(&self.num * &rhs.num);
        }
        Self::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> From<Laurent<T>> for CoeffFrac<T> {
    fn from(v: Laurent<T>) -> Self {
        Self::from_elem(v)
    }
}

impl<T: Scalar> Add for &CoeffFrac<T> {
    type Output = CoeffFrac<T>;
    fn add(self, rhs: &CoeffFrac<T>) -> CoeffFrac<T> {
        self.add_ref(rhs)
    }
}

impl<T: Scalar> Sub for &CoeffFrac<T> {
    type Output = CoeffFrac<T>;
    fn sub(self, rhs: &CoeffFrac<T>) -> CoeffFrac<T> {
        self.add_ref(&-rhs)
    }
}

impl<T: Scalar> Mul for &CoeffFrac<T> {
    type Output = CoeffFrac<T>;
    fn mul(self, rhs: &CoeffFrac<T>) -> CoeffFrac<T> {
        self.mul_ref(rhs)
    }
}

/// Panics on a zero divisor; use [`CoeffFrac::checked_div`] to recover.
impl<T: Scalar> Div for &CoeffFrac<T> {
    type Output = CoeffFrac<T>;
    fn div(self, rhs: &CoeffFrac<T>) -> CoeffFrac<T> {
        self.checked_div(rhs).expect("division by zero in Q(q0)")
    }
}

impl<T: Scalar> Neg for &CoeffFrac<T> {
    type Output = CoeffFrac<T>;
    fn neg(self) -> CoeffFrac<T> {
        CoeffFrac { num: -&self.num, den: self.den.clone() }
    }
}

impl<T: Scalar> Neg for CoeffFrac<T> {
    type Output = CoeffFrac<T>;
    fn neg(self) -> CoeffFrac<T> {
        -&self
    }
}

forward_owned!(CoeffFrac, Add add, Sub sub, Mul mul, Div div);

impl<T: Scalar> Zero for CoeffFrac<T> {
    fn zero() -> Self {
        Self::from_elem(Laurent::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Scalar> One for CoeffFrac<T> {
    fn one() -> Self {
        Self::from_elem(Laurent::one())
    }
}

impl<T: Scalar> FieldElem for CoeffFrac<T> {}

impl<T: Scalar> fmt::Display for CoeffFrac<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
