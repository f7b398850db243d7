//! The isomonodromy side: the formal Painlevé I solution `q(t, hbar)`, the
//! Hamiltonian value `sigma`, the scalar Lax coefficients `f`, `g`, the
//! Riccati solutions `P^(+-)` and the checks built on them.
//!
//! All functions of `x` are written in `z` with `x = z^2 - 2 q0`, so
//! `sqrt(x + 2 q0) = z` and half-integer powers become integer powers.

use num_traits::{One, Zero};

use crate::coeffring::{CoeffFrac, Laurent};
use crate::curve::CurveData;
use crate::error::{Error, Result};
use crate::openfe::SpecializedS;
use crate::report::{CheckResult, Residuals};
use crate::scalar::Scalar;
use crate::zseries::{puiseux_binomial, HSeries, SeriesVar, TruncSeries, ZLaurentPoly, ZRationalFn, hseries_log_dx};

/// `q = sum hbar^(2n) q_(2n)`, `p = hbar dq/dt = sum hbar^(2n+1) p_(2n+1)` and
/// `sigma = p^2/2 - 2 q^3 - t q = sum hbar^(2n) sigma_(2n)` for `n <= n_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct PainleveSeries<T> {
    pub n_max: u32,
    pub q: Vec<Laurent<T>>,
    pub p: Vec<Laurent<T>>,
    pub sigma: Vec<Laurent<T>>,
}

/// Dense product of two `hbar`-series, kept below `len`.
fn hmul<T: Scalar>(a: &[Laurent<T>], b: &[Laurent<T>], len: usize) -> Vec<Laurent<T>> {
    let mut out = vec![Laurent::zero(); len];
    for (i, x) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
        for (j, y) in b.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

pub fn painleve_series<T: Scalar>(n_max: u32) -> PainleveSeries<T> {
    let mut q = vec![Laurent::q0()];
    for k in 0..n_max as usize {
        // 12 q0 q_(2k+2) = q_(2k)'' - 6 sum_{a+b=k+1, a,b>0} q_(2a) q_(2b)
        let mut rhs = q[k].d_dt().d_dt();
        for a in 1..=k {
            rhs = &rhs - &(&q[a] * &q[k + 1 - a]).scale(&T::from_i64(6));
        }
        let next = rhs.shift(-1).scale(&T::from_frac(1, 12));
        q.push(next);
    }
    let p: Vec<Laurent<T>> = q.iter().map(Laurent::d_dt).collect();

    let len = 2 * n_max as usize + 1;
    let mut qh = vec![Laurent::zero(); len];
    let mut ph = vec![Laurent::zero(); len];
    for n in 0..=n_max as usize {
        qh[2 * n] = q[n].clone();
        if 2 * n + 1 < len {
            ph[2 * n + 1] = p[n].clone();
        }
    }
    let q2 = hmul(&qh, &qh, len);
    let q3 = hmul(&q2, &qh, len);
    let p2 = hmul(&ph, &ph, len);
    let t = Laurent::t();
    let h: Vec<Laurent<T>> = (0..len)
        .map(|i| &(&p2[i].scale(&T::from_frac(1, 2)) - &q3[i].scale(&T::from_i64(2))) - &(&t * &qh[i]))
        .collect();
    let sigma = (0..=n_max as usize).map(|n| h[2 * n].clone()).collect();
    PainleveSeries { n_max, q, p, sigma }
}

impl<T: Scalar> PainleveSeries<T> {
    fn hconst(c: &Laurent<T>) -> ZRationalFn<T> {
        ZRationalFn::constant(CoeffFrac::from_elem(c.clone()))
    }

    fn need(&self, trunc: i32) -> Result<()> {
        if trunc > 2 * self.n_max as i32 + 2 {
            return Err(Error::InsufficientTruncation { needed: trunc - 1, known: 2 * self.n_max as i32 + 2 });
        }
        Ok(())
    }

    /// `q` as an `hbar`-series, exact below `hbar^trunc`.
    pub fn q_series(&self, trunc: i32) -> Result<HSeries<T>> {
        self.need(trunc)?;
        let mut out = HSeries::zero(trunc);
        for (n, c) in self.q.iter().enumerate() {
            out = out.add(&HSeries::term(Self::hconst(c), 2 * n as i32, trunc));
        }
        Ok(out)
    }

    pub fn p_series(&self, trunc: i32) -> Result<HSeries<T>> {
        self.need(trunc)?;
        let mut out = HSeries::zero(trunc);
        for (n, c) in self.p.iter().enumerate() {
            out = out.add(&HSeries::term(Self::hconst(c), 2 * n as i32 + 1, trunc));
        }
        Ok(out)
    }

    /// `1/(x - q) = sum_j (q - q0)^j / (x - q0)^(j+1)`.
    pub fn inv_x_minus_q(&self, trunc: i32) -> Result<HSeries<T>> {
        let delta = self.q_series(trunc)?.sub(&HSeries::term(Self::hconst(&Laurent::q0()), 0, trunc));
        let xq = ZRationalFn::from_poly(CurveData::<T>::new().x_minus_q0());
        let inv = xq.inv()?;
        let mut out = HSeries::zero(trunc);
        let mut pow = HSeries::term(inv.clone(), 0, trunc);
        let mut j = 0;
        while 2 * j < trunc {
            out = out.add(&pow);
            pow = pow.mul(&delta).scale(&inv);
            j += 1;
        }
        Ok(out)
    }

    /// `4x^3 + 2tx + p^2 - 4q^3 - 2tq`.
    pub fn potential(&self, trunc: i32) -> Result<HSeries<T>> {
        let x = CurveData::<T>::new().x_of_z;
        let t = CoeffFrac::from_elem(Laurent::t());
        let xpart = (&(&(&x * &x) * &x).scale(&CoeffFrac::mono(4, 1, 0)) + &x.scale(&(&t + &t))).clone();
        let q = self.q_series(trunc)?;
        let p = self.p_series(trunc)?;
        let c = |v: &CoeffFrac<T>| ZRationalFn::constant(v.clone());
        Ok(HSeries::term(ZRationalFn::from_poly(xpart), 0, trunc)
            .add(&p.mul(&p))
            .sub(&q.mul(&q).mul(&q).scale(&c(&CoeffFrac::mono(4, 1, 0))))
            .sub(&q.scale(&c(&(&t + &t)))))
    }
}

/// Coefficients of `((hbar d/dx)^2 + f hbar d/dx + g) psi = 0` together with
/// `A_11 = p` and `A_12 = 4(x - q)`.
#[derive(Clone, Debug)]
pub struct ScalarLax<T> {
    pub f: HSeries<T>,
    pub g: HSeries<T>,
    pub a11: HSeries<T>,
    pub a12: HSeries<T>,
}

/// `f = -hbar/(x - q)`, `g = -(4x^3 + 2tx + p^2 - 4q^3 - 2tq) + hbar p/(x - q)`,
/// exact through `hbar^n`.
pub fn scalar_lax<T: Scalar>(n: u32, ps: &PainleveSeries<T>) -> Result<ScalarLax<T>> {
    let trunc = n as i32 + 1;
    let inv = ps.inv_x_minus_q(trunc)?;
    let p = ps.p_series(trunc)?;
    let f = inv.shift_h(1).truncate(trunc)?.neg();
    let g = ps.potential(trunc)?.neg().add(&p.mul(&inv).shift_h(1).truncate(trunc)?);
    let curve = CurveData::<T>::new();
    let four = ZRationalFn::constant(CoeffFrac::mono(4, 1, 0));
    let a12 = HSeries::term(ZRationalFn::from_poly(curve.x_of_z), 0, trunc)
        .sub(&ps.q_series(trunc)?)
        .scale(&four);
    Ok(ScalarLax { f, g, a11: p, a12 })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Plus,
    Minus,
}

/// `P_0, ..., P_n` of `P^(+-) = sum hbar^(m-1) P_m` from
/// `sum_{a+b=m+1} P_a P_b + dP_m/dx + sum_{c>=1} f_c P_(m+1-c) + g_(m+1) = 0`.
///
/// Every `P_m` must be a Laurent polynomial in `z`: a leftover
/// `z^2 - 3 q0` denominator would be a pole at the double turning point.
#[allow(non_snake_case)]
pub fn riccati_P<T: Scalar>(n: u32, lax: &ScalarLax<T>, branch: Branch) -> Result<HSeries<T>> {
    let curve = CurveData::<T>::new();
    let p0 = (&curve.x_minus_q0() * &ZLaurentPoly::z()).scale(&CoeffFrac::mono(2, 1, 0));
    let p0 = ZRationalFn::from_poly(if branch == Branch::Plus { p0 } else { -p0 });
    let two_p0 = p0.scale(&CoeffFrac::mono(2, 1, 0));
    let mut ps = vec![p0];
    for m in 0..n as usize {
        let mut acc = ps[m].d_dx();
        for a in 1..=m {
            acc = &acc + &(&ps[a] * &ps[m + 1 - a]);
        }
        for c in 1..=m + 1 {
            acc = &acc + &(&lax.f.coeff(c as i32)? * &ps[m + 1 - c]);
        }
        acc = &acc + &lax.g.coeff(m as i32 + 1)?;
        let next = (-acc).checked_div(&two_p0)?;
        if next.as_poly().is_none() {
            return Err(Error::InternalConsistency(format!(
                "P_{} has a pole at the double turning point: {next}",
                m + 1
            )));
        }
        ps.push(next);
    }
    Ok(HSeries::new(-1, ps, n as i32))
}

/// `(P_odd, P_even)`: odd and even parts in `z`, i.e. `(P^(+) - P^(-))/2` and
/// `(P^(+) + P^(-))/2` with `P^(-)(z) = P^(+)(-z)`.
pub fn parity_split<T: Scalar>(p: &HSeries<T>) -> (HSeries<T>, HSeries<T>) {
    let minus = minus_branch(p);
    let half = ZRationalFn::constant(CoeffFrac::mono(1, 2, 0));
    (p.sub(&minus).scale(&half), p.add(&minus).scale(&half))
}

/// `P^(-)` from `P^(+)` by `z -> -z`.
pub fn minus_branch<T: Scalar>(p: &HSeries<T>) -> HSeries<T> {
    p.map(|c| c.involution(0))
}

/// `-(1/2) d/dx log(hbar P_odd / (2 (x - q)))`, to be compared with `P_even`.
pub fn odd_even_rhs<T: Scalar>(p_odd: &HSeries<T>, ps: &PainleveSeries<T>) -> Result<HSeries<T>> {
    let trunc = p_odd.trunc() + 1;
    let arg = p_odd
        .shift_h(1)
        .mul(&ps.inv_x_minus_q(trunc)?)
        .scale(&ZRationalFn::constant(CoeffFrac::mono(1, 2, 0)));
    hseries_log_dx(&arg)
}

/// `1/h` for `h` with an invertible lowest coefficient at `hbar^0`.
fn hseries_inv<T: Scalar>(h: &HSeries<T>) -> Result<HSeries<T>> {
    let c0 = h.coeff(0)?;
    if h.orders().any(|(k, c)| k < 0 && !c.is_zero()) || c0.is_zero() {
        return Err(Error::Normalization("inverse needs a unit at hbar^0".into()));
    }
    let inv0 = c0.inv()?;
    let trunc = h.trunc();
    let one = HSeries::term(ZRationalFn::one(), 0, trunc);
    let u = h.scale(&inv0).sub(&one);
    let mut out = HSeries::zero(trunc);
    let mut pow = one;
    let mut k = 0;
    while k < trunc {
        out = out.add(&pow);
        pow = pow.mul(&u).neg();
        k += 1;
    }
    Ok(out.scale(&inv0))
}

fn record_orders<T: Scalar>(res: &mut Residuals, what: &str, d: &HSeries<T>, hi: i32) -> Result<()> {
    for (k, c) in d.orders() {
        if k <= hi && !c.is_zero() {
            res.record(format!("{what}, hbar^{k}"), c);
        }
    }
    Ok(())
}

/// `hbar dP/dt = d/dx ((hbar P - p)/(2(x - q)))` at fixed `x`, and the
/// `P_odd` form `dP_odd/dt = d/dx (P_odd/(2(x - q)))`.
pub fn podd_t_check<T: Scalar>(n: u32) -> Result<CheckResult> {
    let mut res = Residuals::new(
        "p-time-derivative",
        "t-derivative of the Riccati solution at fixed x is an x-derivative",
    );
    let ps = painleve_series::<T>(n / 2 + 1);
    let lax = scalar_lax(n, &ps)?;
    let p = riccati_P(n, &lax, Branch::Plus)?;
    let trunc = p.trunc() + 1;
    let inv = ps.inv_x_minus_q(trunc)?;
    let half = ZRationalFn::constant(CoeffFrac::mono(1, 2, 0));

    let lhs = p.dt_fixed_x().shift_h(1);
    let rhs = p.shift_h(1).sub(&ps.p_series(trunc)?).mul(&inv).scale(&half).d_dx();
    record_orders(&mut res, "full P", &lhs.sub(&rhs), trunc - 1)?;

    let (odd, _) = parity_split(&p);
    let lhs = odd.dt_fixed_x();
    let rhs = odd.mul(&inv).scale(&half).d_dx();
    record_orders(&mut res, "P_odd", &lhs.sub(&rhs), p.trunc() - 1)?;
    Ok(res.finish(format!("hbar orders 0..={}", trunc - 1)))
}

/// `x^(k/2)` at `z = infinity` as a series in `zeta = 1/z`:
/// `z^k (1 - 2 q0 zeta^2)^(k/2)`.
fn half_power_at_infinity<T: Scalar>(k: i32, trunc: i32) -> Result<TruncSeries<T>> {
    let u = TruncSeries::from_poly(&ZLaurentPoly::mono(-2, 1, 1, -2), SeriesVar::Zeta, trunc + k);
    Ok(puiseux_binomial(&u, &T::from_frac(k as i64, 2))?.shift(-k).truncate(trunc)?)
}

/// `sigma_(2n)` read off from the `x^(-3/2)` coefficients of `P^(+)` at
/// `x = infinity`, after removing `2 x^(3/2) + (t/2) x^(-1/2)` from `P_0`
/// and `-x^(-1)/4` from `P_1`. Entry `n` belongs to `P_(2n)`.
pub fn asymp_sigma_extract<T: Scalar>(p: &HSeries<T>) -> Result<Vec<Laurent<T>>> {
    let trunc = 4;
    let t = CoeffFrac::from_elem(Laurent::t());
    let mut out = Vec::new();
    for (k, pm) in p.orders() {
        let m = k + 1;
        let mut d = pm.expand_at_infinity(trunc)?;
        match m {
            0 => {
                d = d
                    .sub(&half_power_at_infinity(3, trunc)?.scale(&CoeffFrac::mono(2, 1, 0)))
                    .sub(&half_power_at_infinity(-1, trunc)?.scale(&t.scale(&T::from_frac(1, 2))));
            }
            1 => {
                d = d.sub(&half_power_at_infinity(-2, trunc)?.scale(&CoeffFrac::mono(-1, 4, 0)));
            }
            _ => {}
        }
        for e in d.start()..3 {
            let c = d.coeff(e)?;
            if !c.is_zero() {
                return Err(Error::InternalConsistency(format!(
                    "P_{m} at infinity differs from the expected leading terms at zeta^{e}: {c}"
                )));
            }
        }
        let c = d.coeff(3)?.scale(&T::from_i64(2));
        if m % 2 == 1 {
            if !c.is_zero() {
                return Err(Error::InternalConsistency(format!("P_{m} has an x^(-3/2) term {c}")));
            }
            continue;
        }
        out.push(c.as_elem().cloned().ok_or_else(|| Error::Normalization(format!("sigma from P_{m} = {c}")))?);
    }
    Ok(out)
}

/// `W_1 = P^(+) + (A_12/(2 hbar P_odd)) d/dx ((hbar P^(+) - A_11)/A_12)`.
#[allow(non_snake_case)]
pub fn jmu_W1<T: Scalar>(n: u32, ps: &PainleveSeries<T>) -> Result<HSeries<T>> {
    let lax = scalar_lax(n + 1, ps)?;
    let p = riccati_P(n + 1, &lax, Branch::Plus)?;
    let trunc = p.trunc() + 1;
    let a12 = lax.a12.truncate(trunc)?;
    let inv_a12 = ps.inv_x_minus_q(trunc)?.scale(&ZRationalFn::constant(CoeffFrac::mono(1, 4, 0)));
    let inner = p.shift_h(1).sub(&lax.a11.truncate(trunc)?).mul(&inv_a12).d_dx();
    let (odd, _) = parity_split(&p);
    let inv_odd = hseries_inv(&odd.shift_h(1))?;
    let corr = a12.mul(&inv_odd).mul(&inner).scale(&ZRationalFn::constant(CoeffFrac::mono(1, 2, 0)));
    Ok(p.add(&corr).truncate(n as i32)?)
}

/// `-2 Res_{x=inf} (1/hbar) x^(1/2) W_1 dx = sigma/hbar^2`, through `hbar^(n-1)` of `W_1`.
pub fn jmu_tau_check<T: Scalar>(n: u32) -> Result<CheckResult> {
    let mut res = Residuals::new(
        "jmu-tau",
        "residue of x^(1/2) W_1 dx at infinity reproduces sigma",
    );
    let ps = painleve_series::<T>(n / 2 + 1);
    let w1 = jmu_W1(n, &ps)?;
    let sqrt_x = half_power_at_infinity(1, 6)?;
    let mut last = -2;
    for (k, w) in w1.orders() {
        // -2 Res_{x=inf} x^(1/2) w dx = -Res_{z=inf} x^(1/2) w 2z dz = 2 [zeta^2] x^(1/2) w
        let v = sqrt_x.mul(&w.expand_at_infinity(4)?).coeff(2)?.scale(&T::from_i64(2));
        let order = k - 1;
        let want = if order % 2 == 0 {
            CoeffFrac::from_elem(ps.sigma[((order + 2) / 2) as usize].clone())
        } else {
            CoeffFrac::zero()
        };
        if v != want {
            res.record(format!("hbar^{order}"), &v - &want);
        }
        last = order;
    }
    Ok(res.finish(format!("hbar orders -2..={last}")))
}

/// `hbar dS/dx` and friends from `S_0, ..., S_(n+1)`.
struct SSeries<T> {
    dx: HSeries<T>,
    dxx: HSeries<T>,
    dt: HSeries<T>,
}

fn s_series<T: Scalar>(s: &[SpecializedS<T>]) -> SSeries<T> {
    let trunc = s.len() as i32 - 1;
    let build = |f: &dyn Fn(&SpecializedS<T>) -> ZLaurentPoly<T>| {
        HSeries::new(-1, s.iter().map(|sm| ZRationalFn::from_poly(f(sm))).collect(), trunc)
    };
    SSeries {
        dx: build(&|sm| sm.d_dx()),
        dxx: build(&|sm| sm.d_dx().d_dx()),
        dt: build(&|sm| sm.dt_fixed_x()),
    }
}

/// `S = sum hbar^(m-1) S_m` with `s[m] = S_m` for `m <= n + 1` satisfies
/// (a) `hbar^2 (S_x^2 + S_xx) = (hbar/(x-q))(hbar S_x - p) + (4x^3 + 2tx + p^2 - 4q^3 - 2tq)`,
/// (b) `hbar S_t = (hbar S_x - p)/(2(x-q))`,
/// (c) `dS_m/dx = P_m`.
pub fn quantum_curve_check<T: Scalar>(n: u32, s: &[SpecializedS<T>], ps: &PainleveSeries<T>) -> Result<CheckResult> {
    if s.len() < n as usize + 2 {
        return Err(Error::Dependency(format!("need S_0..S_{}, got {} terms", n + 1, s.len())));
    }
    let mut res = Residuals::new("quantum-curve", "S from topological recursion solves both isomonodromy equations");
    let ss = s_series(&s[..n as usize + 2]);
    let trunc = n as i32 + 2;
    let inv = ps.inv_x_minus_q(trunc)?;
    let p = ps.p_series(trunc)?;
    let hsx_p = ss.dx.shift_h(1).sub(&p);

    let lhs = ss.dx.mul(&ss.dx).add(&ss.dxx).shift_h(2);
    let rhs = inv.mul(&hsx_p).shift_h(1).add(&ps.potential(trunc)?);
    record_orders(&mut res, "(a)", &lhs.sub(&rhs), trunc - 1)?;

    let lhs = ss.dt.shift_h(1);
    let rhs = hsx_p.mul(&inv).scale(&ZRationalFn::constant(CoeffFrac::mono(1, 2, 0)));
    record_orders(&mut res, "(b)", &lhs.sub(&rhs), trunc - 1)?;

    let lax = scalar_lax(n + 1, ps)?;
    let pp = riccati_P(n + 1, &lax, Branch::Plus)?;
    for m in 0..=n + 1 {
        let d = &ss.dx.coeff(m as i32 - 1)? - &pp.coeff(m as i32 - 1)?;
        if !d.is_zero() {
            res.record(format!("(c) m = {m}"), d);
        }
    }
    Ok(res.finish(format!("hbar orders 0..={}, dS_m/dx = P_m for m <= {}", trunc - 1, n + 1)))
}

/// For even `m >= 2`, the half-contour integral of `P_m dx` from the branch
/// point agrees with the integral from infinity: the termwise primitive of
/// `P_m dx/dz` is odd in `z` and decays.
pub fn branch_point_integral_check<T: Scalar>(p: &HSeries<T>) -> Result<CheckResult> {
    let mut res = Residuals::new(
        "branch-point-integral",
        "integral of P_m dx from the branch point equals the integral from infinity for even m",
    );
    let dxdz = CurveData::<T>::new().dx_dz();
    let mut top = 0;
    for (k, pm) in p.orders() {
        let m = k + 1;
        if m < 2 || m % 2 == 1 {
            continue;
        }
        top = m;
        let integrand = pm.as_poly().ok_or_else(|| Error::Domain(format!("P_{m} is not a Laurent polynomial")))? * &dxdz;
        if !integrand.coeff(-1).is_zero() {
            res.record(format!("m = {m}, logarithmic term"), integrand.coeff(-1));
            continue;
        }
        let prim = ZLaurentPoly::from_terms(
            integrand.terms().map(|(e, c)| (e + 1, c.scale(&(T::one() / T::from_i64(e as i64 + 1))))),
        );
        // (1/2)(A(z) - A(-z)) against A(z) - A(infinity)
        let from_v = (&prim - &prim.involution(0)).scale(&CoeffFrac::mono(1, 2, 0));
        if prim.max_exp().is_some_and(|e| e >= 0) {
            res.record(format!("m = {m}, no decay at infinity"), &prim);
            continue;
        }
        if from_v != prim {
            res.record(format!("m = {m}"), &from_v - &prim);
        }
    }
    Ok(res.finish(format!("even m in 2..={top}")))
}

/// `dF_g/dt = sigma_(2g)` for `g <= gmax`, given the `t`-derivatives of the
/// closed free energies.
pub fn tau_check<T: Scalar>(dfdt: &[Laurent<T>], ps: &PainleveSeries<T>) -> CheckResult {
    let mut res = Residuals::new("tau", "dF_g/dt equals the Hamiltonian coefficient sigma_2g");
    for (g, d) in dfdt.iter().enumerate() {
        let want = &ps.sigma[g];
        if d != want {
            res.record(format!("g = {g}"), d - want);
        }
    }
    res.finish(format!("g <= {}", dfdt.len().saturating_sub(1)))
}

/// `q_(2k)` is a single monomial `c q0^(1-5k)` and the odd `hbar`-orders of
/// `p^2/2 - 2 q^3 - t q` vanish.
pub fn painleve_structure_check<T: Scalar>(ps: &PainleveSeries<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("painleve-structure", "q_2k is a monomial in q0 of degree 1 - 5k and sigma is even in hbar");
    for (k, q) in ps.q.iter().enumerate() {
        match q.as_monomial() {
            Some((_, e)) if e == 1 - 5 * k as i32 => {}
            _ => res.record(format!("q_{}", 2 * k), q),
        }
    }
    let trunc = 2 * ps.n_max as i32 + 2;
    let q = ps.q_series(trunc)?;
    let p = ps.p_series(trunc)?;
    let c = |v: CoeffFrac<T>| ZRationalFn::constant(v);
    let sigma = p
        .mul(&p)
        .scale(&c(CoeffFrac::mono(1, 2, 0)))
        .sub(&q.mul(&q).mul(&q).scale(&c(CoeffFrac::mono(2, 1, 0))))
        .sub(&q.scale(&c(CoeffFrac::from_elem(Laurent::t()))));
    for (k, v) in sigma.orders() {
        if k % 2 != 0 && !v.is_zero() {
            res.record(format!("sigma_{k}"), v);
        }
    }
    Ok(res.finish(format!("k <= {}", ps.n_max)))
}

/// The minus branch solved from its own recursion is the `z -> -z` image of
/// the plus branch.
pub fn minus_branch_check<T: Scalar>(n: u32, lax: &ScalarLax<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("riccati-branches", "P^(-)(z) = P^(+)(-z), both solved independently");
    let plus = riccati_P(n, lax, Branch::Plus)?;
    let minus = riccati_P(n, lax, Branch::Minus)?;
    record_orders(&mut res, "P^(-) - P^(+)(-z)", &minus.sub(&minus_branch(&plus)), n as i32)?;
    Ok(res.finish(format!("P_0..P_{n}")))
}

/// `P_even = -(1/2) d/dx log(hbar P_odd / (2(x - q)))`.
pub fn odd_even_check<T: Scalar>(n: u32, ps: &PainleveSeries<T>, lax: &ScalarLax<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("odd-even", "the even part of P is a log-derivative of the odd part");
    let p = riccati_P(n, lax, Branch::Plus)?;
    let (odd, even) = parity_split(&p);
    let rhs = odd_even_rhs(&odd, ps)?.truncate(p.trunc())?;
    record_orders(&mut res, "P_even", &even.sub(&rhs), n as i32)?;
    Ok(res.finish(format!("hbar orders -1..={}", p.trunc() - 1)))
}

/// `sigma_(2k)` read off the large-`x` behaviour of `P^(+)` equals the
/// Hamiltonian value.
pub fn asymp_sigma_check<T: Scalar>(n: u32, ps: &PainleveSeries<T>, lax: &ScalarLax<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("asymptotic-sigma", "x^(-3/2) coefficients of P at infinity give sigma");
    let p = riccati_P(n, lax, Branch::Plus)?;
    let got = asymp_sigma_extract(&p)?;
    for (k, v) in got.iter().enumerate() {
        if v != &ps.sigma[k] {
            res.record(format!("sigma_{}", 2 * k), v - &ps.sigma[k]);
        }
    }
    Ok(res.finish(format!("sigma_0..sigma_{}", 2 * (got.len().max(1) - 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = Laurent<BigRational>;
    type P = ZLaurentPoly<BigRational>;

    #[test]
    fn painleve_coefficients() {
        let ps = painleve_series::<BigRational>(2);
        assert_eq!(ps.q[1], L::mono(-1, 1728, -4));
        assert_eq!(ps.q[2], L::mono(-49, 5971968, -9));
        assert_eq!(ps.p[0], L::mono(-1, 12, -1));
        assert_eq!(ps.sigma, vec![L::mono(4, 1, 3), L::mono(1, 288, -2), L::mono(7, 497664, -7)]);
    }

    #[test]
    fn riccati_low_orders() {
        let ps = painleve_series::<BigRational>(2);
        let lax = scalar_lax(3, &ps).unwrap();
        let p = riccati_P(3, &lax, Branch::Plus).unwrap();
        assert_eq!(p.coeff(0).unwrap().as_poly().unwrap(), &P::mono(-1, 4, 0, -2));
        let p2 = &P::mono(1, 576, -2, -3) + &P::mono(15, 576, -1, -5);
        assert_eq!(p.coeff(1).unwrap().as_poly().unwrap(), &p2);
    }

    #[test]
    fn minus_branch_is_the_involution() {
        let ps = painleve_series::<BigRational>(3);
        let lax = scalar_lax(5, &ps).unwrap();
        let plus = riccati_P(5, &lax, Branch::Plus).unwrap();
        let minus = riccati_P(5, &lax, Branch::Minus).unwrap();
        assert_eq!(minus_branch(&plus), minus);
    }

    #[test]
    fn odd_even_relation() {
        let ps = painleve_series::<BigRational>(3);
        let lax = scalar_lax(6, &ps).unwrap();
        let p = riccati_P(6, &lax, Branch::Plus).unwrap();
        let (odd, even) = parity_split(&p);
        let rhs = odd_even_rhs(&odd, &ps).unwrap();
        for k in 0..p.trunc() {
            assert_eq!(rhs.coeff(k).unwrap(), even.coeff(k).unwrap(), "hbar^{k}");
        }
    }

    #[test]
    fn asymptotics_and_residue_at_infinity() {
        let ps = painleve_series::<BigRational>(3);
        let lax = scalar_lax(5, &ps).unwrap();
        let p = riccati_P(5, &lax, Branch::Plus).unwrap();
        let s = asymp_sigma_extract(&p).unwrap();
        assert_eq!(s, ps.sigma[..3].to_vec());
        let j = jmu_tau_check::<BigRational>(5).unwrap();
        assert!(j.passed(), "{:?}", j.failure);
        assert!(podd_t_check::<BigRational>(4).unwrap().passed());
        assert!(branch_point_integral_check(&p).unwrap().passed());
    }

    #[test]
    fn quantum_curve_and_tau_low_order() {
        use crate::openfe::principal_special;
        use crate::toprec::{closed_F, WCache};
        let cache = WCache::<BigRational>::new();
        let ps = painleve_series::<BigRational>(3);
        let s: Vec<_> = (0..=5).map(|m| principal_special(m, &cache).unwrap()).collect();
        let r = quantum_curve_check(4, &s, &ps).unwrap();
        assert!(r.passed(), "{:?}", r.failure);
        let dfdt: Vec<_> = (0..=3).map(|g| closed_F(g, &cache).unwrap().d_dt().unwrap()).collect();
        assert!(tau_check(&dfdt, &ps).passed());
    }
}
