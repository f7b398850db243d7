use num_traits::{One, Zero};

use super::poly::ZLaurentPoly;
use crate::coeffring::CoeffFrac;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Expansion variable of a [`TruncSeries`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SeriesVar {
    /// Ascending powers of `z` (expansion at `z = 0`).
    Z,
    /// Ascending powers of `zeta = 1/z` (expansion at `z = infinity`).
    Zeta,
}

/// Truncated Laurent series: coefficients of `v^start, ..., v^(trunc-1)`
/// are exact, everything from `v^trunc` on is unknown.
#[derive(Clone, PartialEq, Debug)]
pub struct TruncSeries<T> {
    var: SeriesVar,
    start: i32,
    coeffs: Vec<CoeffFrac<T>>,
    trunc: i32,
}

impl<T: Scalar> TruncSeries<T> {
    pub fn new(var: SeriesVar, start: i32, mut coeffs: Vec<CoeffFrac<T>>, trunc: i32) -> Self {
        let len = (trunc - start).max(0) as usize;
        coeffs.resize(len, CoeffFrac::zero());
        Self { var, start: start.min(trunc), coeffs, trunc }
    }

    pub fn zero(var: SeriesVar, trunc: i32) -> Self {
        Self::new(var, trunc, Vec::new(), trunc)
    }

    /// Exact terms of `p` below `trunc`; in the `Zeta` variable `z^e`
    /// becomes `zeta^-e`.
    pub fn from_poly(p: &ZLaurentPoly<T>, var: SeriesVar, trunc: i32) -> Self {
        let mapped: Vec<(i32, &CoeffFrac<T>)> = p
            .terms()
            .map(|(e, c)| (if var == SeriesVar::Z { e } else { -e }, c))
            .filter(|(e, _)| *e < trunc)
            .collect();
        let start = mapped.iter().map(|(e, _)| *e).min().unwrap_or(trunc);
        let mut out = Self::new(var, start, Vec::new(), trunc);
        for (e, c) in mapped {
            out.coeffs[(e - start) as usize] = c.clone();
        }
        out
    }

    pub fn var(&self) -> SeriesVar {
        self.var
    }

    pub fn start(&self) -> i32 {
        self.start
    }

    pub fn trunc(&self) -> i32 {
        self.trunc
    }

    pub fn coeff(&self, e: i32) -> Result<CoeffFrac<T>> {
        if e >= self.trunc {
            return Err(Error::InsufficientTruncation { needed: e, known: self.trunc });
        }
        if e < self.start {
            return Ok(CoeffFrac::zero());
        }
        Ok(self.coeffs[(e - self.start) as usize].clone())
    }

    /// Known `(exponent, coefficient)` pairs with nonzero coefficient.
    pub fn nonzero_terms(&self) -> impl Iterator<Item = (i32, &CoeffFrac<T>)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.start + i as i32, c))
    }

    fn lowest_nonzero(&self) -> Option<i32> {
        self.nonzero_terms().next().map(|(e, _)| e)
    }

    /// Forget everything from `v^t` on.
    pub fn truncate(&self, t: i32) -> Result<Self> {
        if t > self.trunc {
            return Err(Error::InsufficientTruncation { needed: t - 1, known: self.trunc });
        }
        let keep = (t - self.start).max(0) as usize;
        Ok(Self::new(self.var, self.start, self.coeffs[..keep].to_vec(), t))
    }

    fn same_var(&self, rhs: &Self) {
        assert_eq!(self.var, rhs.var, "series in different variables");
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.same_var(rhs);
        let start = self.start.min(rhs.start);
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = Self::new(self.var, start, Vec::new(), trunc);
        for src in [self, rhs] {
            for (e, c) in src.nonzero_terms().filter(|(e, _)| *e < trunc) {
                let i = (e - start) as usize;
                out.coeffs[i] = &out.coeffs[i] + c;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { coeffs: self.coeffs.iter().map(|c| -c).collect(), ..self.clone() }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.same_var(rhs);
        let start = self.start + rhs.start;
        let trunc = (self.start + rhs.trunc).min(rhs.start + self.trunc);
        let mut out = Self::new(self.var, start, Vec::new(), trunc);
        for (e1, c1) in self.nonzero_terms() {
            for (e2, c2) in rhs.nonzero_terms() {
                let e = e1 + e2;
                if e >= trunc {
                    break;
                }
                let i = (e - start) as usize;
                out.coeffs[i] = &out.coeffs[i] + &(c1 * c2);
            }
        }
        out
    }

    pub fn scale(&self, c: &CoeffFrac<T>) -> Self {
        Self { coeffs: self.coeffs.iter().map(|v| v * c).collect(), ..self.clone() }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { start: self.start + k, trunc: self.trunc + k, ..self.clone() }
    }

    /// Multiplicative inverse; the lowest known coefficient must be nonzero
    /// somewhere below the truncation.
    pub fn inv(&self) -> Result<Self> {
        let lo = self.lowest_nonzero().ok_or(Error::DivisionByZero)?;
        let a0 = self.coeff(lo)?.inv()?;
        let len = (self.trunc - lo) as usize;
        let a: Vec<CoeffFrac<T>> = (0..len).map(|i| self.coeffs[(lo - self.start) as usize + i].clone()).collect();
        let mut b: Vec<CoeffFrac<T>> = Vec::with_capacity(len);
        b.push(a0.clone());
        for k in 1..len {
            let mut acc = CoeffFrac::zero();
            for i in 1..=k {
                if !a[i].is_zero() {
                    acc = &acc + &(&a[i] * &b[k - i]);
                }
            }
            b.push(-&(&acc * &a0));
        }
        Ok(Self::new(self.var, -lo, b, -lo + len as i32))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.mul(&rhs.inv()?))
    }
}

/// `1/(z^2 - a) = -(1/a) sum_k (z^2/a)^k`, exact below `z^order`.
pub fn geom_expand<T: Scalar>(a: &CoeffFrac<T>, order: i32) -> Result<TruncSeries<T>> {
    if a.is_zero() {
        return Err(Error::PoleAtExpansionPoint("1/(z^2 - a) with a = 0".into()));
    }
    if order < 0 {
        return Err(Error::Domain(format!("negative expansion order {order}")));
    }
    let ainv = a.inv()?;
    let mut coeffs = Vec::with_capacity(order as usize);
    let mut p = -&ainv;
    for e in 0..order {
        if e % 2 == 0 {
            coeffs.push(p.clone());
            p = &p * &ainv;
        } else {
            coeffs.push(CoeffFrac::zero());
        }
    }
    Ok(TruncSeries::new(SeriesVar::Z, 0, coeffs, order))
}

/// Coefficient of `z^-1` of a series expanded at `z = 0`.
pub fn residue_at_zero<T: Scalar>(s: &TruncSeries<T>) -> Result<CoeffFrac<T>> {
    if s.var() != SeriesVar::Z {
        return Err(Error::Domain("residue at zero needs a z-ascending series".into()));
    }
    s.coeff(-1)
}

/// `(1 + u)^alpha = sum_k binom(alpha, k) u^k` for `u` vanishing at the
/// expansion point.
pub fn puiseux_binomial<T: Scalar>(u: &TruncSeries<T>, alpha: &T) -> Result<TruncSeries<T>> {
    let lo = u.lowest_nonzero().unwrap_or(u.trunc());
    if lo < 1 {
        return Err(Error::Domain("binomial series needs u = O(v)".into()));
    }
    let trunc = u.trunc();
    let one = TruncSeries::new(u.var(), 0, vec![CoeffFrac::one()], trunc);
    let mut out = one.clone();
    let mut upow = one;
    let mut binom = T::one();
    let mut k = 1;
    while k * lo < trunc {
        binom = binom * (alpha.clone() - T::from_i64(k as i64 - 1)) / T::from_i64(k as i64);
        upow = upow.mul(u);
        out = out.add(&upow.scale(&CoeffFrac::constant(binom.clone())));
        k += 1;
    }
    Ok(out)
}
