use num_traits::{One, Zero};

use super::poly::ZLaurentPoly;
use super::ratfn::ZRationalFn;
use crate::coeffring::CoeffFrac;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Truncated series in `hbar` with rational-function coefficients:
/// `sum_{k = base}^{trunc - 1} hbar^k c_k`.
#[derive(Clone, PartialEq, Debug)]
pub struct HSeries<T> {
    base: i32,
    coeffs: Vec<ZRationalFn<T>>,
    trunc: i32,
}

impl<T: Scalar> HSeries<T> {
    pub fn new(base: i32, mut coeffs: Vec<ZRationalFn<T>>, trunc: i32) -> Self {
        let len = (trunc - base).max(0) as usize;
        coeffs.resize(len, ZRationalFn::zero());
        Self { base: base.min(trunc), coeffs, trunc }
    }

    pub fn zero(trunc: i32) -> Self {
        Self::new(trunc, Vec::new(), trunc)
    }

    /// `c hbar^k`, known below `hbar^trunc`.
    pub fn term(c: ZRationalFn<T>, k: i32, trunc: i32) -> Self {
        if k >= trunc {
            return Self::zero(trunc);
        }
        Self::new(k, vec![c], trunc)
    }

    pub fn base(&self) -> i32 {
        self.base
    }

    pub fn trunc(&self) -> i32 {
        self.trunc
    }

    pub fn coeff(&self, k: i32) -> Result<ZRationalFn<T>> {
        if k >= self.trunc {
            return Err(Error::InsufficientTruncation { needed: k, known: self.trunc });
        }
        if k < self.base {
            return Ok(ZRationalFn::zero());
        }
        Ok(self.coeffs[(k - self.base) as usize].clone())
    }

    /// `(k, c_k)` for every known order.
    pub fn orders(&self) -> impl Iterator<Item = (i32, &ZRationalFn<T>)> {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.base + i as i32, c))
    }

    pub fn truncate(&self, t: i32) -> Result<Self> {
        if t > self.trunc {
            return Err(Error::InsufficientTruncation { needed: t - 1, known: self.trunc });
        }
        let keep = (t - self.base).max(0) as usize;
        Ok(Self::new(self.base, self.coeffs[..keep].to_vec(), t))
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let base = self.base.min(rhs.base);
        let trunc = self.trunc.min(rhs.trunc);
        let mut out = Self::new(base, Vec::new(), trunc);
        for src in [self, rhs] {
            for (k, c) in src.orders().filter(|(k, _)| *k < trunc) {
                let i = (k - out.base) as usize;
                out.coeffs[i] = &out.coeffs[i] + c;
            }
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let base = self.base + rhs.base;
        let trunc = (self.base + rhs.trunc).min(rhs.base + self.trunc);
        let mut out = Self::new(base, Vec::new(), trunc);
        for (k1, c1) in self.orders().filter(|(_, c)| !c.is_zero()) {
            for (k2, c2) in rhs.orders().filter(|(_, c)| !c.is_zero()) {
                let k = k1 + k2;
                if k >= trunc {
                    break;
                }
                let i = (k - out.base) as usize;
                out.coeffs[i] = &out.coeffs[i] + &(c1 * c2);
            }
        }
        out
    }

    /// Multiply every coefficient by `c`.
    pub fn scale(&self, c: &ZRationalFn<T>) -> Self {
        self.map(|v| v * c)
    }

    /// Multiply by `hbar^k`.
    pub fn shift_h(&self, k: i32) -> Self {
        Self { base: self.base + k, trunc: self.trunc + k, coeffs: self.coeffs.clone() }
    }

    /// Apply `f` to every coefficient (for linear operators such as `d/dx`).
    pub fn map(&self, f: impl Fn(&ZRationalFn<T>) -> ZRationalFn<T>) -> Self {
        Self { base: self.base, coeffs: self.coeffs.iter().map(f).collect(), trunc: self.trunc }
    }

    pub fn d_dx(&self) -> Self {
        self.map(ZRationalFn::d_dx)
    }

    pub fn dt_fixed_x(&self) -> Self {
        self.map(ZRationalFn::dt_fixed_x)
    }

    /// `log(1 + h)` for `h = O(hbar)`.
    pub fn log1p(&self) -> Result<Self> {
        if let Some((k, _)) = self.orders().find(|(k, c)| *k < 1 && !c.is_zero()) {
            return Err(Error::Normalization(format!(
                "log(1 + h) needs h = O(hbar), found order {k}"
            )));
        }
        let trunc = self.trunc;
        let mut out = Self::zero(trunc);
        let mut pow = Self::term(ZRationalFn::one(), 0, trunc);
        let mut j = 1;
        while j < trunc {
            pow = pow.mul(self);
            let sign = if j % 2 == 1 { 1 } else { -1 };
            let c = ZRationalFn::constant(CoeffFrac::mono(sign, j as i64, 0));
            out = out.add(&pow.scale(&c));
            j += 1;
        }
        Ok(out)
    }
}

/// `-(1/2) d/dx log(h)` for an `h` whose `hbar^0` coefficient is exactly `z`
/// and which has no negative orders.
///
/// `log h = log z + log(1 + (h/z - 1))`; only the derivative is formed, so
/// no logarithm branch is ever chosen.
pub fn hseries_log_dx<T: Scalar>(h: &HSeries<T>) -> Result<HSeries<T>> {
    let z = ZRationalFn::from_poly(ZLaurentPoly::z());
    if h.coeff(0)? != z {
        return Err(Error::Normalization(format!(
            "leading hbar coefficient must be z, found {}",
            h.coeff(0)?
        )));
    }
    let zinv = ZRationalFn::from_poly(ZLaurentPoly::mono(1, 1, 0, -1));
    let u = h.scale(&zinv).sub(&HSeries::term(ZRationalFn::one(), 0, h.trunc()));
    let dlog = u.log1p()?.d_dx();
    let dlogz = HSeries::term(ZRationalFn::from_poly(ZLaurentPoly::mono(1, 2, 0, -2)), 0, h.trunc());
    let half = ZRationalFn::constant(CoeffFrac::mono(-1, 2, 0));
    Ok(dlogz.add(&dlog).scale(&half))
}
