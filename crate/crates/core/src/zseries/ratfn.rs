use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::poly::ZLaurentPoly;
use super::trunc::{SeriesVar, TruncSeries};
use crate::coeffring::{forward_owned, CoeffFrac};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::upoly;

/// Rational function of `z` over `Q(q0)`.
///
/// Canonical form: monomial denominators are folded into the numerator;
/// otherwise `den` has lowest z-exponent 0, is monic in its top z-term and
/// shares no factor with `num`.
#[derive(Clone, PartialEq, Debug)]
pub struct ZRationalFn<T> {
    num: ZLaurentPoly<T>,
    den: ZLaurentPoly<T>,
}

impl<T: Scalar> ZRationalFn<T> {
    pub fn new(num: ZLaurentPoly<T>, den: ZLaurentPoly<T>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(num, den))
    }

    pub fn from_poly(num: ZLaurentPoly<T>) -> Self {
        Self { num, den: ZLaurentPoly::one() }
    }

    pub fn constant(c: CoeffFrac<T>) -> Self {
        Self::from_poly(ZLaurentPoly::constant(c))
    }

    pub fn num(&self) -> &ZLaurentPoly<T> {
        &self.num
    }

    pub fn den(&self) -> &ZLaurentPoly<T> {
        &self.den
    }

    /// The numerator when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&ZLaurentPoly<T>> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn canonical(num: ZLaurentPoly<T>, den: ZLaurentPoly<T>) -> Self {
        if num.is_zero() {
            return Self::from_poly(ZLaurentPoly::zero());
        }
        if let Some((c, e)) = den.as_monomial() {
            let inv = c.inv().expect("nonzero monomial");
            return Self::from_poly(num.scale(&inv).shift(-e));
        }
        let (d, ds) = den.to_dense();
        let (n, ns) = num.to_dense();
        let g = upoly::gcd(&n, &d);
        let (n, d) = if upoly::degree(&g).unwrap_or(0) > 0 {
            (upoly::divrem(&n, &g).0, upoly::divrem(&d, &g).0)
        } else {
            (n, d)
        };
        // d may now start with zeros only if g carried a z-power, which
        // cannot happen because d(0) != 0 after the shift above.
        let lead = d[upoly::degree(&d).expect("nonzero denominator")].clone();
        let inv = lead.inv().expect("nonzero leading coefficient");
        let d = upoly::make_monic(&d);
        let num = ZLaurentPoly::from_dense(&n, ns - ds).scale(&inv);
        if d.len() == 1 {
            return Self::from_poly(num);
        }
        Self { num, den: ZLaurentPoly::from_dense(&d, 0) }
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canonical(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &CoeffFrac<T>) -> Self {
        if c.is_zero() {
            return Self::from_poly(ZLaurentPoly::zero());
        }
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { num: self.num.shift(k), den: self.den.clone() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    fn quotient_rule(&self, dn: ZLaurentPoly<T>, dd: ZLaurentPoly<T>) -> Self {
        if self.den.is_one() {
            return Self::from_poly(dn);
        }
        let top = &(&dn * &self.den) - &(&self.num * &dd);
        Self::canonical(top, &self.den * &self.den)
    }

    pub fn d_dz(&self) -> Self {
        self.quotient_rule(self.num.d_dz(), self.den.d_dz())
    }

    /// `d/dx = (1/(2z)) d/dz`.
    pub fn d_dx(&self) -> Self {
        self.d_dz().shift(-1).scale(&CoeffFrac::mono(1, 2, 0))
    }

    pub fn d_dt_coeffs(&self) -> Self {
        self.quotient_rule(self.num.d_dt_coeffs(), self.den.d_dt_coeffs())
    }

    /// `d/dt` at fixed `x`; see [`ZLaurentPoly::dt_fixed_x`].
    pub fn dt_fixed_x(&self) -> Self {
        self.quotient_rule(self.num.dt_fixed_x(), self.den.dt_fixed_x())
    }

    pub fn involution(&self, form_degree: u32) -> Self {
        Self::canonical(self.num.involution(form_degree), self.den.involution(0))
    }

    /// Expansion at `z = infinity` in `zeta = 1/z`, exact below `trunc`.
    pub fn expand_at_infinity(&self, trunc: i32) -> Result<TruncSeries<T>> {
        // den = z^top * D(zeta) with D(0) != 0
        let top = self.den.max_exp().expect("nonzero denominator");
        let num = TruncSeries::from_poly(&self.num.shift(-top), SeriesVar::Zeta, trunc);
        if self.den.is_one() {
            return Ok(num);
        }
        let n0 = num.start().min(trunc - 1);
        let den = TruncSeries::from_poly(&self.den.shift(-top), SeriesVar::Zeta, trunc - n0);
        num.mul(&den.inv()?).truncate(trunc)
    }
}

impl<T: Scalar> From<ZLaurentPoly<T>> for ZRationalFn<T> {
    fn from(p: ZLaurentPoly<T>) -> Self {
        Self::from_poly(p)
    }
}

impl<T: Scalar> Add for &ZRationalFn<T> {
    type Output = ZRationalFn<T>;
    fn add(self, rhs: &ZRationalFn<T>) -> ZRationalFn<T> {
        if self.den == rhs.den {
            if self.den.is_one() {
                return ZRationalFn::from_poly(&self.num + &rhs.num);
            }
            return ZRationalFn::canonical(&self.num + &rhs.num, self.den.clone());
        }
        if rhs.den.is_one() {
            return ZRationalFn::canonical(&self.num + &(&rhs.num * &self.den), self.den.clone());
        }
        if self.den.is_one() {
            return ZRationalFn::canonical(&(&self.num * &rhs.den) + &rhs.num, rhs.den.clone());
        }
        let top = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ZRationalFn::canonical(top, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Sub for &ZRationalFn<T> {
    type Output = ZRationalFn<T>;
    fn sub(self, rhs: &ZRationalFn<T>) -> ZRationalFn<T> {
        self + &(-rhs)
    }
}

impl<T: Scalar> Mul for &ZRationalFn<T> {
    type Output = ZRationalFn<T>;
    fn mul(self, rhs: &ZRationalFn<T>) -> ZRationalFn<T> {
        if self.den.is_one() && rhs.den.is_one() {
            return ZRationalFn::from_poly(&self.num * &rhs.num);
        }
        ZRationalFn::canonical(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl<T: Scalar> Neg for &ZRationalFn<T> {
    type Output = ZRationalFn<T>;
    fn neg(self) -> ZRationalFn<T> {
        ZRationalFn { num: -&self.num, den: self.den.clone() }
    }
}

impl<T: Scalar> Neg for ZRationalFn<T> {
    type Output = ZRationalFn<T>;
    fn neg(self) -> ZRationalFn<T> {
        -&self
    }
}

forward_owned!(ZRationalFn, Add add, Sub sub, Mul mul);

impl<T: Scalar> Zero for ZRationalFn<T> {
    fn zero() -> Self {
        Self::from_poly(ZLaurentPoly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<T: Scalar> One for ZRationalFn<T> {
    fn one() -> Self {
        Self::from_poly(ZLaurentPoly::one())
    }
}

impl<T: Scalar> fmt::Display for ZRationalFn<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
