use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::coeffring::{forward_owned, CoeffFrac, Laurent, SExt};
use crate::scalar::{RatFmt, Scalar};

/// Finite Laurent polynomial in `z` with coefficients in `Q(q0)`.
#[derive(Clone, PartialEq, Debug)]
pub struct ZLaurentPoly<T> {
    terms: BTreeMap<i32, CoeffFrac<T>>,
}

impl<T: Scalar> ZLaurentPoly<T> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(CoeffFrac::one())
    }

    pub fn constant(c: CoeffFrac<T>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: CoeffFrac<T>, exp: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(exp, c);
        out
    }

    /// `(num/den) q0^qexp z^zexp`.
    pub fn mono(num: i64, den: i64, qexp: i32, zexp: i32) -> Self {
        Self::monomial(CoeffFrac::mono(num, den, qexp), zexp)
    }

    pub fn z() -> Self {
        Self::monomial(CoeffFrac::one(), 1)
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, CoeffFrac<T>)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (e, c) in it {
            out.add_term(e, c);
        }
        out
    }

    pub fn add_term(&mut self, exp: i32, c: CoeffFrac<T>) {
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exp) {
            None => {
                self.terms.insert(exp, c);
            }
            Some(old) => {
                let s = &old + &c;
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

    pub fn coeff(&self, exp: i32) -> CoeffFrac<T> {
        self.terms.get(&exp).cloned().unwrap_or_else(CoeffFrac::zero)
    }

    /// Terms in ascending z-exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i32, &CoeffFrac<T>)> {
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

    pub fn as_monomial(&self) -> Option<(&CoeffFrac<T>, i32)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(e, c)| (c, *e))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &CoeffFrac<T>) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v * c)))
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn d_dz(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|(e, c)| (e - 1, c.scale(&T::from_i64(*e as i64)))),
        )
    }

    /// `d/dx = (1/(2z)) d/dz`, from `x = z^2 - 2 q0`.
    pub fn d_dx(&self) -> Self {
        self.d_dz().shift(-1).scale(&CoeffFrac::mono(1, 2, 0))
    }

    /// Coefficientwise `d/dt`, holding `z` fixed.
    pub fn d_dt_coeffs(&self) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| (*e, c.d_dt())))
    }

    /// `d/dt` at fixed `x`: `dz/dt = (dq0/dt)/z = -1/(12 q0 z)` from
    /// `z^2 = x + 2 q0`.
    pub fn dt_fixed_x(&self) -> Self {
        let zpart = self.d_dz().shift(-1).scale(&CoeffFrac::mono(-1, 12, -1));
        &self.d_dt_coeffs() + &zpart
    }

    /// Pullback by `z -> -z`, with the sign `(-1)^form_degree` from `d(-z) = -dz`.
    pub fn involution(&self, form_degree: u32) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, c)| {
            let odd = (e.rem_euclid(2) == 1) ^ (form_degree % 2 == 1);
            (*e, if odd { -c } else { c.clone() })
        }))
    }

    /// Terms with even (`true`) or odd exponents.
    pub fn parity_part(&self, even: bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| (e.rem_euclid(2) == 0) == even)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Value at `z = s`.
    pub fn eval_s(&self) -> SExt<T> {
        let mut acc = SExt::zero();
        for (e, c) in &self.terms {
            acc = &acc + &SExt::s_pow(*e).scale(c);
        }
        acc
    }

    /// Ascending dense coefficients of `z^-min * self` and `min`.
    pub(crate) fn to_dense(&self) -> (Vec<CoeffFrac<T>>, i32) {
        let Some(lo) = self.min_exp() else {
            return (Vec::new(), 0);
        };
        let hi = self.max_exp().unwrap_or(lo);
        let mut v = vec![CoeffFrac::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.terms {
            v[(e - lo) as usize] = c.clone();
        }
        (v, lo)
    }

    pub(crate) fn from_dense(v: &[CoeffFrac<T>], shift: i32) -> Self {
        Self::from_terms(
            v.iter()
                .enumerate()
                .map(|(i, c)| (i as i32 + shift, c.clone())),
        )
    }

    /// Every coefficient as a single `c q0^a z^b` monomial, if possible.
    pub fn monomials(&self) -> Option<Vec<(i32, i32, T)>> {
        let mut out = Vec::new();
        for (ze, c) in &self.terms {
            let l: &Laurent<T> = c.as_elem()?;
            for (qe, v) in l.terms() {
                out.push((*ze, qe, v.clone()));
            }
        }
        Some(out)
    }
}

impl<T: Scalar> From<CoeffFrac<T>> for ZLaurentPoly<T> {
    fn from(c: CoeffFrac<T>) -> Self {
        Self::constant(c)
    }
}

impl<T: Scalar> Add for &ZLaurentPoly<T> {
    type Output = ZLaurentPoly<T>;
    fn add(self, rhs: &ZLaurentPoly<T>) -> ZLaurentPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl<T: Scalar> Sub for &ZLaurentPoly<T> {
    type Output = ZLaurentPoly<T>;
    fn sub(self, rhs: &ZLaurentPoly<T>) -> ZLaurentPoly<T> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, -c);
        }
        out
    }
}

impl<T: Scalar> Mul for &ZLaurentPoly<T> {
    type Output = ZLaurentPoly<T>;
    fn mul(self, rhs: &ZLaurentPoly<T>) -> ZLaurentPoly<T> {
        let mut out = ZLaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl<T: Scalar> Neg for &ZLaurentPoly<T> {
    type Output = ZLaurentPoly<T>;
    fn neg(self) -> ZLaurentPoly<T> {
        ZLaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl<T: Scalar> Neg for ZLaurentPoly<T> {
    type Output = ZLaurentPoly<T>;
    fn neg(self) -> ZLaurentPoly<T> {
        -&self
    }
}

forward_owned!(ZLaurentPoly, Add add, Sub sub, Mul mul);

impl<T: Scalar> Zero for ZLaurentPoly<T> {
    fn zero() -> Self {
        ZLaurentPoly::zero()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<T: Scalar> One for ZLaurentPoly<T> {
    fn one() -> Self {
        ZLaurentPoly::one()
    }
}

/// Descending z-exponent, then descending q0-exponent,
/// e.g. `1/96 * q0^-1 * z^-4 + 1/288 * q0^-2 * z^-2`.
impl<T: Scalar> fmt::Display for ZLaurentPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (ze, c) in self.terms.iter().rev() {
            let Some(l) = c.as_elem() else {
                if !first {
                    write!(f, " + ")?;
                }
                write!(f, "({c}) * z^{ze}")?;
                first = false;
                continue;
            };
            for (qe, v) in l.terms().rev() {
                let neg = v.is_negative();
                let mag = if neg { -v.clone() } else { v.clone() };
                match (first, neg) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                first = false;
                let mut parts = Vec::new();
                if !mag.is_one() || (qe == 0 && *ze == 0) {
                    parts.push(RatFmt(&mag).to_string());
                }
                if qe != 0 {
                    parts.push(format!("q0^{qe}"));
                }
                if *ze != 0 {
                    parts.push(format!("z^{ze}"));
                }
                write!(f, "{}", parts.join(" * "))?;
            }
        }
        Ok(())
    }
}
