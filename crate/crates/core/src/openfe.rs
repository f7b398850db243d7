//! Open free energies `F_{g,n}`, their principal specializations `S_m`, and
//! the multi-point identities built from them: the differential recursion,
//! the `E_{g,n}` formula for `d/dt F_{g,n}` and the `G_{g,n}` combinations.
//!
//! Evaluations at the zero `s = sqrt(3 q0)` of `y` go through [`SExt`];
//! every such evaluation must come out free of `s`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::coeffring::{CoeffFrac, SExt};
use crate::curve::CurveData;
use crate::error::{Error, Result};
use crate::mpoly::{Binom, MPoly, RatExpr};
use crate::report::{CheckResult, Residuals};
use crate::scalar::Scalar;
use crate::toprec::{compute_W, distinct_permutations, dFg_dt, euler, is_stable, Key, StableW, WCache};
use crate::zseries::{ZLaurentPoly, ZRationalFn};

/// `sum_k c_k prod z_i^(1 - 2 k_i)` over the permutation orbits of the keys.
#[derive(Clone, Debug, PartialEq)]
pub struct OpenF<T> {
    g: u32,
    n: u32,
    terms: BTreeMap<Key, CoeffFrac<T>>,
}

impl<T: Scalar> OpenF<T> {
    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Key, CoeffFrac<T>> {
        &self.terms
    }

    pub fn get(&self, k: &[u32]) -> CoeffFrac<T> {
        let mut s = k.to_vec();
        s.sort_unstable();
        self.terms.get(&s).cloned().unwrap_or_else(CoeffFrac::zero)
    }

    /// `d_{z_1} ... d_{z_n}` back to the differential.
    pub fn to_w(&self) -> Result<StableW<T>> {
        let terms = self
            .terms
            .iter()
            .map(|(k, c)| {
                let f = k.iter().fold(T::one(), |acc, &v| acc * T::from_i64(1 - 2 * v as i64));
                (k.clone(), c.scale(&f))
            })
            .collect();
        StableW::new(self.g, self.n, terms)
    }

    /// All `n` variables kept distinct.
    pub fn expand(&self) -> MPoly<T> {
        let slots: Vec<Slot> = (0..self.n as usize).map(|i| Slot::Var(i, 0)).collect();
        eval_open(self, &slots, self.n as usize).expect("no s-evaluation involved")
    }

    /// `F(z, ..., z)`.
    pub fn principal(&self) -> ZLaurentPoly<T> {
        ZLaurentPoly::from_terms(self.terms.iter().map(|(k, c)| {
            let orbit = distinct_permutations(k).len() as i64;
            let e: i32 = k.iter().map(|&v| 1 - 2 * v as i32).sum();
            (e, c.scale(&T::from_i64(orbit)))
        }))
    }
}

impl<T: Scalar> fmt::Display for OpenF<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "F_{{{},{}}}", self.g, self.n)?;
        for (k, c) in &self.terms {
            writeln!(f, "  {k:?}: {c}")?;
        }
        Ok(())
    }
}

/// `F_{g,n} = 2^-n int_{-z_1}^{z_1} ... int_{-z_n}^{z_n} W_{g,n}`, which acts on
/// each variable as `z^(-2k) -> z^(1-2k)/(1-2k)`.
#[allow(non_snake_case)]
pub fn integrate_W_to_F<T: Scalar>(w: &StableW<T>) -> OpenF<T> {
    let terms = w
        .terms()
        .iter()
        .map(|(k, c)| {
            let d = k.iter().fold(T::one(), |acc, &v| acc * T::from_i64(1 - 2 * v as i64));
            (k.clone(), c.scale(&(T::one() / d)))
        })
        .collect();
    OpenF { g: w.g(), n: w.n(), terms }
}

pub fn open_free_energy<T: Scalar>(g: u32, n: u32, cache: &WCache<T>) -> Result<OpenF<T>> {
    let w = compute_W(g, n, cache)?;
    Ok(integrate_W_to_F(&w))
}

/// `S_m = sum_{2g-2+n = m-1} F_{g,n}(z, ..., z)/n!`.
#[derive(Clone, Debug, PartialEq)]
pub enum SpecializedS<T> {
    /// `m = 0` (`(4/5) z^5 - 4 q0 z^3`) and `m >= 2`.
    Poly { m: u32, value: ZLaurentPoly<T> },
    /// `S_1 = -(1/2) log z`, kept only through its derivatives.
    HalfLog,
}

impl<T: Scalar> SpecializedS<T> {
    pub fn m(&self) -> u32 {
        match self {
            SpecializedS::Poly { m, .. } => *m,
            SpecializedS::HalfLog => 1,
        }
    }

    pub fn value(&self) -> Option<&ZLaurentPoly<T>> {
        match self {
            SpecializedS::Poly { value, .. } => Some(value),
            SpecializedS::HalfLog => None,
        }
    }

    pub fn d_dx(&self) -> ZLaurentPoly<T> {
        match self {
            SpecializedS::Poly { value, .. } => value.d_dx(),
            // (1/(2z)) d/dz (-(1/2) log z)
            SpecializedS::HalfLog => ZLaurentPoly::mono(-1, 4, 0, -2),
        }
    }

    /// `d/dt` at fixed `x`.
    pub fn dt_fixed_x(&self) -> ZLaurentPoly<T> {
        match self {
            SpecializedS::Poly { value, .. } => value.dt_fixed_x(),
            // -(1/2) (1/z) dz/dt with dz/dt = -1/(12 q0 z)
            SpecializedS::HalfLog => ZLaurentPoly::mono(1, 24, -1, -2),
        }
    }
}

impl<T: Scalar> fmt::Display for SpecializedS<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecializedS::Poly { value, .. } => write!(f, "{value}"),
            SpecializedS::HalfLog => write!(f, "-1/2 * log(z)"),
        }
    }
}

pub fn principal_special<T: Scalar>(m: u32, cache: &WCache<T>) -> Result<SpecializedS<T>> {
    match m {
        0 => Ok(SpecializedS::Poly { m, value: CurveData::<T>::new().phi_of_z }),
        1 => Ok(SpecializedS::HalfLog),
        _ => {
            let chi = m as i32 - 1;
            let mut value = ZLaurentPoly::zero();
            let mut fact = T::one();
            for n in 1..=(chi + 2) as u32 {
                fact = fact * T::from_i64(n as i64);
                if (chi + 2 - n as i32) % 2 != 0 {
                    continue;
                }
                let g = ((chi + 2 - n as i32) / 2) as u32;
                let f = open_free_energy(g, n, cache)?;
                value = &value + &f.principal().scale(&CoeffFrac::constant(T::one() / fact.clone()));
            }
            if let Some(e) = value.max_exp().filter(|&e| e >= 0) {
                return Err(Error::InternalConsistency(format!("S_{m} has a z^{e} term")));
            }
            Ok(SpecializedS::Poly { m, value })
        }
    }
}

/// Where one argument of an open free energy is placed: variable `i`
/// differentiated `d` times, or the point `s` after `d` derivatives.
#[derive(Clone, Copy, Debug)]
enum Slot {
    Var(usize, u32),
    S(u32),
}

fn falling(e: i32, d: u32) -> i64 {
    (0..d as i32).map(|i| (e - i) as i64).product()
}

/// `F` with its arguments placed in `slots`, as a polynomial in `nvars`
/// variables. Fails if an odd power of `s` survives.
fn eval_open<T: Scalar>(f: &OpenF<T>, slots: &[Slot], nvars: usize) -> Result<MPoly<T>> {
    debug_assert_eq!(slots.len(), f.n as usize);
    let mut even = MPoly::zero(nvars);
    let mut odd = MPoly::zero(nvars);
    for (k, c) in &f.terms {
        for p in distinct_permutations(k) {
            let mut exps = vec![0; nvars];
            let mut val = SExt::from_frac(c.clone());
            for (slot, &kv) in slots.iter().zip(&p) {
                let e = 1 - 2 * kv as i32;
                match *slot {
                    Slot::Var(i, d) => {
                        val = val.scale(&CoeffFrac::mono(falling(e, d), 1, 0));
                        exps[i] += e - d as i32;
                    }
                    Slot::S(d) => {
                        val = (&val * &SExt::s_pow(e - d as i32)).scale(&CoeffFrac::mono(falling(e, d), 1, 0));
                    }
                }
            }
            even.add_term(exps.clone(), val.even);
            odd.add_term(exps, val.odd);
        }
    }
    if !odd.is_zero() {
        return Err(Error::InternalConsistency(format!(
            "F_{{{},{}}} at s keeps an s-odd part {odd}",
            f.g, f.n
        )));
    }
    Ok(even)
}

fn var_slots(idx: &[usize]) -> impl Iterator<Item = Slot> + '_ {
    idx.iter().map(|&i| Slot::Var(i, 0))
}

/// `d^2/du_1 du_2 ( F_{g-1,|R|+2}(u_1, u_2, z_R) + sum^stable F_{g_1}(u_1, z_I) F_{g_2}(u_2, z_J) )`
/// with both `u` placed at `u`.
fn dd_bracket<T: Scalar>(g: u32, rest: &[usize], u: Slot, nvars: usize, cache: &WCache<T>) -> Result<MPoly<T>> {
    let r = rest.len() as u32;
    let mut out = MPoly::zero(nvars);
    if g >= 1 && is_stable(g - 1, r + 2) {
        let f = open_free_energy(g - 1, r + 2, cache)?;
        let slots: Vec<Slot> = [u, u].into_iter().chain(var_slots(rest)).collect();
        out = out.add(&eval_open(&f, &slots, nvars)?);
    }
    for g1 in 0..=g {
        for mask in 0u32..(1 << r) {
            let (mut ii, mut jj) = (Vec::new(), Vec::new());
            for (p, &v) in rest.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    ii.push(v)
                } else {
                    jj.push(v)
                }
            }
            let (n1, n2) = (ii.len() as u32 + 1, jj.len() as u32 + 1);
            if !is_stable(g1, n1) || !is_stable(g - g1, n2) {
                continue;
            }
            let f1 = open_free_energy(g1, n1, cache)?;
            let f2 = open_free_energy(g - g1, n2, cache)?;
            let s1: Vec<Slot> = std::iter::once(u).chain(var_slots(&ii)).collect();
            let s2: Vec<Slot> = std::iter::once(u).chain(var_slots(&jj)).collect();
            out = out.add(&eval_open(&f1, &s1, nvars)?.mul(&eval_open(&f2, &s2, nvars)?));
        }
    }
    Ok(out)
}

/// `1/(2 y(z_i) x'(z_i)) = 1/(8 z_i^2 (z_i^2 - 3 q0))`.
fn inv_two_y_dx<T: Scalar>(nvars: usize, i: usize) -> RatExpr<T> {
    RatExpr::from_poly(MPoly::var_pow(nvars, i, -2, CoeffFrac::mono(1, 8, 0))).div_binom(Binom::Sq(i), 1)
}

/// `-2 z_j / (z_j^2 - 3 q0)`.
fn s_weight<T: Scalar>(nvars: usize, j: usize) -> RatExpr<T> {
    RatExpr::from_poly(MPoly::var_pow(nvars, j, 1, CoeffFrac::mono(-2, 1, 0))).div_binom(Binom::Sq(j), 1)
}

fn s_prefactor<T: Scalar>() -> Result<CoeffFrac<T>> {
    CurveData::<T>::new().s_prefactor()
}

fn check_diffrec_range(g: u32, n: u32) -> Result<()> {
    if n == 0 || euler(g, n) < 2 {
        return Err(Error::Domain(format!("the differential recursion needs 2g - 2 + n >= 2, got ({g}, {n})")));
    }
    Ok(())
}

/// The right side of the differential recursion for `dF_{g,n}/dz_1`, split
/// into the two-point terms, the `u = z_1` bracket, and the terms from the
/// poles of the kernel at `z = +-s`.
struct DiffRecParts<T> {
    j_terms: RatExpr<T>,
    diag: RatExpr<T>,
    s_terms: RatExpr<T>,
}

fn diffrec_parts<T: Scalar>(g: u32, n: u32, cache: &WCache<T>, with_diag: bool) -> Result<DiffRecParts<T>> {
    check_diffrec_range(g, n)?;
    let nv = n as usize;
    let rest: Vec<usize> = (1..nv).collect();
    let mut j_terms = RatExpr::zero(nv);
    let mut s_inner = RatExpr::zero(nv);

    if n >= 2 {
        let f = open_free_energy(g, n - 1, cache)?;
        for j in 1..nv {
            let others: Vec<usize> = rest.iter().copied().filter(|&i| i != j).collect();
            if with_diag {
                let at1: Vec<Slot> = std::iter::once(Slot::Var(0, 1)).chain(var_slots(&others)).collect();
                let atj: Vec<Slot> = std::iter::once(Slot::Var(j, 1)).chain(var_slots(&others)).collect();
                let a = inv_two_y_dx(nv, 0).mul_poly(&eval_open(&f, &at1, nv)?);
                let b = inv_two_y_dx(nv, j).mul_poly(&eval_open(&f, &atj, nv)?);
                let w = RatExpr::from_poly(MPoly::var_pow(nv, j, 1, CoeffFrac::mono(-2, 1, 0)))
                    .div_binom(Binom::diff(0, j), 1);
                j_terms = j_terms.add(&w.mul(&a.sub(&b)));
            }
            let ats: Vec<Slot> = std::iter::once(Slot::S(1)).chain(var_slots(&others)).collect();
            s_inner = s_inner.add(&s_weight(nv, j).mul_poly(&eval_open(&f, &ats, nv)?));
        }
    }
    let diag = if with_diag {
        inv_two_y_dx(nv, 0)
            .mul_poly(&dd_bracket(g, &rest, Slot::Var(0, 1), nv, cache)?)
            .neg()
    } else {
        RatExpr::zero(nv)
    };
    s_inner = s_inner.add(&RatExpr::from_poly(dd_bracket(g, &rest, Slot::S(1), nv, cache)?));
    let s_terms = s_inner.scale(&s_prefactor()?).div_binom(Binom::Sq(0), 1);
    Ok(DiffRecParts { j_terms, diag, s_terms })
}

/// The two equivalent expressions for `G_{g,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GRoute {
    /// `dF/dz_1` minus the two-point terms plus the `u = z_1` bracket.
    Subtracted,
    /// Only the contributions of the poles at `z = +-s`.
    SPoles,
}

#[allow(non_snake_case)]
pub fn compute_G<T: Scalar>(g: u32, n: u32, route: GRoute, cache: &WCache<T>) -> Result<RatExpr<T>> {
    match route {
        GRoute::SPoles => Ok(diffrec_parts(g, n, cache, false)?.s_terms),
        GRoute::Subtracted => {
            let p = diffrec_parts(g, n, cache, true)?;
            let f = open_free_energy(g, n, cache)?;
            let d1 = RatExpr::from_poly(f.expand().d_dz(0));
            Ok(d1.sub(&p.j_terms).sub(&p.diag))
        }
    }
}

/// `G_{g,n}(z, ..., z)` from the pole-at-`s` route, which has no `z_i^2 - z_j^2` factors.
#[allow(non_snake_case)]
pub fn principal_G<T: Scalar>(g: u32, n: u32, cache: &WCache<T>) -> Result<ZRationalFn<T>> {
    compute_G(g, n, GRoute::SPoles, cache)?.principal()
}

/// The right side of the formula `d/dt F_{g,n} = E_{g,n}` at fixed `x_i`.
#[allow(non_snake_case)]
pub fn compute_E<T: Scalar>(g: u32, n: u32, cache: &WCache<T>) -> Result<RatExpr<T>> {
    if n == 0 || euler(g, n) < 1 {
        return Err(Error::Domain(format!("E_{{{g},{n}}} needs n >= 1 and 2g - 2 + n >= 1")));
    }
    let nv = n as usize;
    let all: Vec<usize> = (0..nv).collect();
    let f = open_free_energy(g, n, cache)?;
    let fx = f.expand();
    let mut out = RatExpr::zero(nv);
    let mut s_inner = RatExpr::zero(nv);
    for j in 0..nv {
        let w = inv_two_y_dx(nv, j).mul_poly(&MPoly::var_pow(nv, j, 1, CoeffFrac::mono(2, 1, 0)));
        out = out.add(&w.mul_poly(&fx.d_dz(j)));
        let others: Vec<usize> = all.iter().copied().filter(|&i| i != j).collect();
        let ats: Vec<Slot> = std::iter::once(Slot::S(1)).chain(var_slots(&others)).collect();
        s_inner = s_inner.add(&s_weight(nv, j).mul_poly(&eval_open(&f, &ats, nv)?));
    }
    // F_{g-1,n+2}(u1, u2, z_1..z_n) and splittings of all n variables
    s_inner = s_inner.add(&RatExpr::from_poly(dd_bracket(g, &all, Slot::S(1), nv, cache)?));
    Ok(out.add(&s_inner.scale(&s_prefactor()?)))
}

/// `dF_{g,n}/dz_1` against the full right side of the differential recursion.
pub fn diffrec_check<T: Scalar>(g: u32, n: u32, cache: &WCache<T>) -> Result<CheckResult> {
    let mut res = Residuals::new(
        format!("diff-rec-{g}-{n}"),
        "dF_{g,n}/dz_1 equals the differential recursion including the terms from z = +-s",
    );
    let p = diffrec_parts(g, n, cache, true)?;
    let lhs = RatExpr::from_poly(open_free_energy(g, n, cache)?.expand().d_dz(0));
    let diff = lhs.sub(&p.j_terms).sub(&p.diag).sub(&p.s_terms);
    if !diff.is_zero() {
        res.record(format!("(g, n) = ({g}, {n})"), diff.num());
    }
    Ok(res.finish(format!("(g, n) = ({g}, {n}), s-components certified zero")))
}

/// `d/dt F_{g,n}` at fixed `x_i` against `E_{g,n}`.
pub fn e_dt_check<T: Scalar>(g: u32, n: u32, cache: &WCache<T>) -> Result<CheckResult> {
    let mut res = Residuals::new(format!("E-dt-{g}-{n}"), "t-derivative of F_{g,n} at fixed x equals E_{g,n}");
    let lhs = RatExpr::from_poly(open_free_energy(g, n, cache)?.expand().dt_fixed_x());
    let diff = lhs.sub(&compute_E(g, n, cache)?);
    if !diff.is_zero() {
        res.record(format!("(g, n) = ({g}, {n})"), diff.num());
    }
    Ok(res.finish(format!("(g, n) = ({g}, {n})")))
}

/// Both expressions for `G_{g,n}` agree.
pub fn g_route_check<T: Scalar>(g: u32, n: u32, cache: &WCache<T>) -> Result<CheckResult> {
    let mut res = Residuals::new(format!("G-routes-{g}-{n}"), "the two expressions for G_{g,n} agree");
    let a = compute_G(g, n, GRoute::Subtracted, cache)?;
    let b = compute_G(g, n, GRoute::SPoles, cache)?;
    let diff = a.sub(&b);
    if !diff.is_zero() {
        res.record(format!("(g, n) = ({g}, {n})"), diff.num());
    }
    Ok(res.finish(format!("(g, n) = ({g}, {n})")))
}

fn factorial<T: Scalar>(n: u32) -> T {
    (1..=n as i64).fold(T::one(), |a, k| a * T::from_i64(k))
}

/// Pairs `(g, n)` with `n >= n_min` and `2g - 2 + n = m`.
fn level(m: u32, n_min: u32) -> Vec<(u32, u32)> {
    (n_min..=m + 2)
        .filter(|n| (m + 2 - n) % 2 == 0)
        .map(|n| ((m + 2 - n) / 2, n))
        .collect()
}

/// The principal-specialization identities for one `m >= 2`:
/// (a) the partial Riccati relation for `sum G_{g,n}(z..z)/(n-1)!`,
/// (b) the `G`/`E` combination equals `-(1/(x - q0)) dS_m/dx`,
/// (c) for odd `m`, `(2y/x') G_{g,1} = 2 dF_g/dt` with `g = (m+1)/2`.
pub fn principal_ge_checks<T: Scalar>(m: u32, cache: &WCache<T>) -> Result<CheckResult> {
    if m < 2 {
        return Err(Error::Domain(format!("principal-specialization identities need m >= 2, got {m}")));
    }
    let mut res = Residuals::new(
        format!("principal-G-E-{m}"),
        "principal specializations of G_{g,n} and E_{g,n} against S_m and dF_g/dt",
    );
    let curve = CurveData::<T>::new();
    let two_y_dx = curve.two_y_over_dx();
    let xq = ZRationalFn::from_poly(curve.x_minus_q0());
    let ds: Vec<ZLaurentPoly<T>> = (0..=m + 1)
        .map(|a| principal_special(a, cache).map(|s| s.d_dx()))
        .collect::<Result<_>>()?;
    let dsm = ZRationalFn::from_poly(ds[m as usize].clone());
    let dsm_over = dsm.checked_div(&xq)?;

    // (a)
    let mut lhs = ZRationalFn::zero();
    let mut g_prin = BTreeMap::new();
    for (g, n) in level(m, 1) {
        let gp = principal_G(g, n, cache)?;
        lhs = &lhs + &gp.scale(&CoeffFrac::constant(T::one() / factorial::<T>(n - 1)));
        g_prin.insert((g, n), gp);
    }
    lhs = &lhs * &two_y_dx;
    let mut quad = ZLaurentPoly::zero();
    for a in 0..=m + 1 {
        quad = &quad + &(&ds[a as usize] * &ds[(m + 1 - a) as usize]);
    }
    let rhs = &ZRationalFn::from_poly(&quad + &ds[m as usize].d_dx()) - &dsm_over;
    let d = &lhs - &rhs;
    if !d.is_zero() {
        res.record("(a)", d);
    }

    // (b)
    let mut lhs = ZRationalFn::zero();
    for (g, n) in level(m, 2) {
        let c = CoeffFrac::constant(T::one() / factorial::<T>(n - 1));
        let e = compute_E(g, n - 1, cache)?.principal()?;
        let term = &(&g_prin[&(g, n)] * &two_y_dx) - &e.scale(&CoeffFrac::mono(2, 1, 0));
        lhs = &lhs + &term.scale(&c);
    }
    let d = &lhs + &dsm_over;
    if !d.is_zero() {
        res.record("(b)", d);
    }

    // (c)
    if m % 2 == 1 && m >= 3 {
        let g = (m + 1) / 2;
        let direct = compute_G(g, 1, GRoute::Subtracted, cache)?.principal()?;
        if direct != g_prin[&(g, 1)] {
            res.record("(c) routes", &direct - &g_prin[&(g, 1)]);
        }
        let lhs = &direct * &two_y_dx;
        let want = ZRationalFn::from_poly(ZLaurentPoly::constant(CoeffFrac::from_elem(dFg_dt(g, cache)?)))
            .scale(&CoeffFrac::mono(2, 1, 0));
        if lhs != want {
            res.record("(c)", &lhs - &want);
        }
    }
    let scope = if m % 2 == 1 && m >= 3 { format!("m = {m}: (a), (b), (c)") } else { format!("m = {m}: (a), (b)") };
    Ok(res.finish(scope))
}
