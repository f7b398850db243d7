//! Multivariate Laurent polynomials in `z_0, ..., z_{n-1}` and quotients of
//! them by products of the binomials `z_i^2 - 3 q0` and `z_i^2 - z_j^2`.
//!
//! These carry the multi-point identities (differential recursion, the
//! `E`/`G` combinations, variation formulas). Equality of two quotients is
//! decided by clearing denominators, so no multivariate gcd is needed.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::coeffring::CoeffFrac;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::zseries::{ZLaurentPoly, ZRationalFn};

#[derive(Clone, PartialEq, Debug)]
pub struct MPoly<T> {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, CoeffFrac<T>>,
}

impl<T: Scalar> MPoly<T> {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: CoeffFrac<T>) -> Self {
        Self::monomial(c, vec![0; nvars])
    }

    pub fn monomial(c: CoeffFrac<T>, exps: Vec<i32>) -> Self {
        let mut out = Self::zero(exps.len());
        out.add_term(exps, c);
        out
    }

    /// `c z_i^e`.
    pub fn var_pow(nvars: usize, i: usize, e: i32, c: CoeffFrac<T>) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = e;
        Self::monomial(c, exps)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn add_term(&mut self, exps: Vec<i32>, c: CoeffFrac<T>) {
        debug_assert_eq!(exps.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&exps) {
            None => {
                self.terms.insert(exps, c);
            }
            Some(old) => {
                let s = &old + &c;
                if !s.is_zero() {
                    self.terms.insert(exps, s);
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &CoeffFrac<T>)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                let e = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &CoeffFrac<T>) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::constant(self.nvars, CoeffFrac::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn d_dz(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] -= 1;
            out.add_term(ne, c.scale(&T::from_i64(e[i] as i64)));
        }
        out
    }

    pub fn d_dt_coeffs(&self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.d_dt());
        }
        out
    }

    /// `d/dt` with every `x_i = z_i^2 - 2 q0` held fixed:
    /// coefficientwise `d/dt` plus `sum_i (-1/(12 q0 z_i)) d/dz_i`.
    pub fn dt_fixed_x(&self) -> Self {
        let mut out = self.d_dt_coeffs();
        let f = CoeffFrac::mono(-1, 12, -1);
        for (e, c) in &self.terms {
            for i in 0..self.nvars {
                if e[i] == 0 {
                    continue;
                }
                let mut ne = e.clone();
                ne[i] -= 2;
                out.add_term(ne, &c.scale(&T::from_i64(e[i] as i64)) * &f);
            }
        }
        out
    }

    /// Set every variable to the same `z`.
    pub fn principal(&self) -> ZLaurentPoly<T> {
        ZLaurentPoly::from_terms(self.terms.iter().map(|(e, c)| (e.iter().sum(), c.clone())))
    }
}

impl<T: Scalar> fmt::Display for MPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            for (v, p) in e.iter().enumerate() {
                if *p != 0 {
                    write!(f, " * z{}^{p}", v + 1)?;
                }
            }
        }
        Ok(())
    }
}

/// Binomial denominator factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Binom {
    /// `z_i^2 - 3 q0`, vanishing at `z_i = +-s`.
    Sq(usize),
    /// `z_i^2 - z_j^2` with `i < j`.
    Diff(usize, usize),
}

impl Binom {
    pub fn diff(i: usize, j: usize) -> Self {
        assert_ne!(i, j);
        Binom::Diff(i.min(j), i.max(j))
    }

    pub fn to_mpoly<T: Scalar>(self, nvars: usize) -> MPoly<T> {
        let sq = |i| MPoly::var_pow(nvars, i, 2, CoeffFrac::one());
        match self {
            Binom::Sq(i) => sq(i).sub(&MPoly::constant(nvars, CoeffFrac::mono(3, 1, 1))),
            Binom::Diff(i, j) => sq(i).sub(&sq(j)),
        }
    }
}

/// `num / prod_b b^e_b` with `e_b > 0`.
#[derive(Clone, Debug)]
pub struct RatExpr<T> {
    num: MPoly<T>,
    den: BTreeMap<Binom, u32>,
}

impl<T: Scalar> RatExpr<T> {
    pub fn from_poly(num: MPoly<T>) -> Self {
        Self { num, den: BTreeMap::new() }
    }

    pub fn new(num: MPoly<T>, den: impl IntoIterator<Item = (Binom, u32)>) -> Self {
        let den = den.into_iter().filter(|(_, e)| *e > 0).collect();
        Self { num, den }
    }

    pub fn zero(nvars: usize) -> Self {
        Self::from_poly(MPoly::zero(nvars))
    }

    pub fn nvars(&self) -> usize {
        self.num.nvars
    }

    pub fn num(&self) -> &MPoly<T> {
        &self.num
    }

    pub fn den(&self) -> &BTreeMap<Binom, u32> {
        &self.den
    }

    /// Zero iff the numerator vanishes, since every binomial is nonzero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn rebase(&self, den: &BTreeMap<Binom, u32>) -> MPoly<T> {
        let mut num = self.num.clone();
        for (b, e) in den {
            let have = self.den.get(b).copied().unwrap_or(0);
            if *e > have {
                num = num.mul(&b.to_mpoly(self.nvars()).pow(e - have));
            }
        }
        num
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return Self { num: self.num.add(&rhs.num), den: self.den.clone() };
        }
        let mut den = self.den.clone();
        for (b, e) in &rhs.den {
            let slot = den.entry(*b).or_insert(0);
            *slot = (*slot).max(*e);
        }
        Self { num: self.rebase(&den).add(&rhs.rebase(&den)), den }
    }

    pub fn neg(&self) -> Self {
        Self { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let mut den = self.den.clone();
        for (b, e) in &rhs.den {
            *den.entry(*b).or_insert(0) += e;
        }
        Self { num: self.num.mul(&rhs.num), den }
    }

    pub fn mul_poly(&self, p: &MPoly<T>) -> Self {
        Self { num: self.num.mul(p), den: self.den.clone() }
    }

    pub fn scale(&self, c: &CoeffFrac<T>) -> Self {
        Self { num: self.num.scale(c), den: self.den.clone() }
    }

    /// Divide by `b^e`.
    pub fn div_binom(&self, b: Binom, e: u32) -> Self {
        let mut den = self.den.clone();
        *den.entry(b).or_insert(0) += e;
        Self { num: self.num.clone(), den }
    }

    /// Shared quotient-rule skeleton: `D(num / prod b^e)` for a derivation
    /// `D`, given `D` on the numerator and on each binomial.
    fn derive(&self, dnum: MPoly<T>, dbinom: impl Fn(Binom) -> MPoly<T>) -> Self {
        let n = self.nvars();
        let mut den = self.den.clone();
        for e in den.values_mut() {
            *e += 1;
        }
        // num' * prod b - num * sum_b e_b b' prod_{c != b} c, all over prod b^(e+1)
        let all: Vec<Binom> = self.den.keys().copied().collect();
        let prod_except = |skip: Option<Binom>| {
            let mut p = MPoly::constant(n, CoeffFrac::one());
            for b in &all {
                if Some(*b) != skip {
                    p = p.mul(&b.to_mpoly(n));
                }
            }
            p
        };
        let mut top = dnum.mul(&prod_except(None));
        for (b, e) in &self.den {
            let term = self.num.mul(&dbinom(*b)).mul(&prod_except(Some(*b)));
            top = top.sub(&term.scale(&CoeffFrac::mono(*e as i64, 1, 0)));
        }
        Self { num: top, den }
    }

    pub fn d_dz(&self, i: usize) -> Self {
        let n = self.nvars();
        if self.den.is_empty() {
            return Self::from_poly(self.num.d_dz(i));
        }
        self.derive(self.num.d_dz(i), |b| b.to_mpoly::<T>(n).d_dz(i))
    }

    /// `d/dt` at fixed `x_0, ..., x_{n-1}`.
    pub fn dt_fixed_x(&self) -> Self {
        let n = self.nvars();
        if self.den.is_empty() {
            return Self::from_poly(self.num.dt_fixed_x());
        }
        self.derive(self.num.dt_fixed_x(), |b| b.to_mpoly::<T>(n).dt_fixed_x())
    }

    /// Set all variables equal to `z`; the differences `z_i^2 - z_j^2`
    /// must already be absent.
    pub fn principal(&self) -> Result<ZRationalFn<T>> {
        let mut den = ZLaurentPoly::one();
        let sq = &ZLaurentPoly::mono(1, 1, 0, 2) - &ZLaurentPoly::mono(3, 1, 1, 0);
        for (b, e) in &self.den {
            match b {
                Binom::Sq(_) => den = &den * &sq.pow(*e),
                Binom::Diff(..) => {
                    return Err(Error::Domain(
                        "principal specialization through a z_i^2 - z_j^2 denominator".into(),
                    ))
                }
            }
        }
        ZRationalFn::new(self.num.principal(), den)
    }
}

impl<T: Scalar> fmt::Display for RatExpr<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        write!(f, "({}) / (", self.num)?;
        for (i, (b, e)) in self.den.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            match b {
                Binom::Sq(k) => write!(f, "(z{}^2 - 3 q0)^{e}", k + 1)?,
                Binom::Diff(a, c) => write!(f, "(z{}^2 - z{}^2)^{e}", a + 1, c + 1)?,
            }
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type M = MPoly<BigRational>;
    type F = CoeffFrac<BigRational>;

    #[test]
    fn clearing_denominators_decides_equality() {
        // 1/(z1^2 - z2^2) - 1/(z1^2 - 3q0) = (z2^2 - 3q0)... over the product
        let one = RatExpr::from_poly(M::constant(2, F::one()));
        let a = one.div_binom(Binom::diff(0, 1), 1);
        let b = one.div_binom(Binom::Sq(0), 1);
        let lhs = a.sub(&b);
        let rhs = RatExpr::from_poly(Binom::diff(0, 1).to_mpoly::<BigRational>(2).neg().add(&Binom::Sq(0).to_mpoly(2)))
            .div_binom(Binom::diff(0, 1), 1)
            .div_binom(Binom::Sq(0), 1);
        assert!(lhs.sub(&rhs).is_zero());
    }

    #[test]
    fn quotient_rule() {
        // d/dz1 of 1/(z1^2 - 3q0) = -2 z1 / (z1^2 - 3q0)^2
        let r = RatExpr::from_poly(M::constant(1, F::one())).div_binom(Binom::Sq(0), 1);
        let want = RatExpr::from_poly(M::var_pow(1, 0, 1, F::mono(-2, 1, 0))).div_binom(Binom::Sq(0), 2);
        assert!(r.d_dz(0).sub(&want).is_zero());
    }

    #[test]
    fn fixed_x_time_derivative_kills_x() {
        // x1 = z1^2 - 2q0
        let x = M::var_pow(2, 0, 2, F::one()).sub(&M::constant(2, F::mono(2, 1, 1)));
        assert!(x.dt_fixed_x().is_zero());
        // z1^2 - 3 q0 = x1 - q0 has d/dt = -dq0/dt = 1/(12 q0)
        let r = RatExpr::from_poly(M::constant(2, F::one())).div_binom(Binom::Sq(0), 1);
        let want = RatExpr::from_poly(M::constant(2, F::mono(-1, 12, -1))).div_binom(Binom::Sq(0), 2);
        assert!(r.dt_fixed_x().sub(&want).is_zero());
    }

    #[test]
    fn principal_specialization() {
        let p = M::var_pow(2, 0, -1, F::one()).mul(&M::var_pow(2, 1, -2, F::one()));
        let r = RatExpr::from_poly(p).div_binom(Binom::Sq(1), 1);
        let f = r.principal().unwrap();
        assert_eq!(f.num(), &ZLaurentPoly::mono(1, 1, 0, -3));
        assert!(RatExpr::from_poly(M::constant(2, F::one())).div_binom(Binom::diff(0, 1), 1).principal().is_err());
    }
}
