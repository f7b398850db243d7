//! The full verification suite and its report.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::mpoly::MPoly;
use crate::openfe::{
    diffrec_check, e_dt_check, g_route_check, integrate_W_to_F, principal_special, principal_ge_checks, SpecializedS,
};
use crate::reference;
use crate::report::{timed, CheckResult, Residuals};
use crate::scalar::Scalar;
use crate::toprec::{closed_F, compute_W, dFg_dt, is_stable, variation_check, WCache};
use crate::wkb::{
    asymp_sigma_check, branch_point_integral_check, jmu_tau_check, minus_branch_check, odd_even_check,
    painleve_series, painleve_structure_check, podd_t_check, quantum_curve_check, riccati_P, scalar_lax, tau_check,
    Branch, PainleveSeries,
};
use crate::zseries::ZRationalFn;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    /// Highest `hbar`-order of the quantum curve and WKB checks.
    pub order: u32,
    /// Highest `2g - 2 + n` for the recursion-side identities.
    pub euler_max: u32,
    /// Highest genus for `dF_g/dt = sigma_2g`.
    pub gmax: u32,
}

impl Default for Params {
    fn default() -> Self {
        Self { order: 8, euler_max: 4, gmax: 4 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    All,
    QuantumCurve,
    Tau,
    DiffRec,
    Variation,
    /// `sigma` from the residue of `x^(1/2) W_1 dx` at infinity and from the
    /// large-`x` behaviour of `P`.
    HamiltonianResidue,
    /// `G_{g,n}` and `E_{g,n}` after principal specialization.
    PrincipalGE,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub params: Params,
    /// Sorted by id.
    pub checks: Vec<CheckResult>,
    /// Checks not run for these parameters, with the reason.
    pub skipped: Vec<String>,
    pub summary: Summary,
}

impl Report {
    fn new(params: Params, mut checks: Vec<CheckResult>, mut skipped: Vec<String>) -> Self {
        checks.sort_by(|a, b| a.id.cmp(&b.id));
        skipped.sort();
        let passed = checks.iter().filter(|c| c.passed()).count();
        let summary = Summary { total: checks.len(), passed, failed: checks.len() - passed };
        Self { params, checks, skipped, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// The same report with every timing zeroed.
    pub fn without_timings(&self) -> Self {
        let mut r = self.clone();
        for c in &mut r.checks {
            c.elapsed_ms = 0;
        }
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One line per check and a closing tally.
    pub fn summary_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let v = if c.passed() { "PASS" } else { "FAIL" };
            out.push_str(&format!("{v}  {:<28} {} [{} ms]\n", c.id, c.scope, c.elapsed_ms));
            if let Some(f) = &c.failure {
                out.push_str(&format!("      at {}: {}\n", f.at, f.residual));
            }
        }
        for s in &self.skipped {
            out.push_str(&format!("SKIP  {s}\n"));
        }
        out.push_str(&format!(
            "{} checks, {} passed, {} failed\n",
            self.summary.total, self.summary.passed, self.summary.failed
        ));
        out
    }
}

fn mpoly_diff<T: Scalar>(res: &mut Residuals, at: String, got: &MPoly<T>, want: &MPoly<T>) {
    let d = got.sub(want);
    if !d.is_zero() {
        res.record(at, d.terms().map(|(e, c)| format!("{e:?}: {c}")).collect::<Vec<_>>().join(", "));
    }
}

/// The printed `W_{g,n}`.
pub fn formula_w_check<T: Scalar>(cache: &WCache<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("formula-W", "recursion reproduces the printed W_{g,n}");
    for (g, n, want) in reference::printed_w::<T>() {
        mpoly_diff(&mut res, format!("W_{{{g},{n}}}"), &compute_W(g, n, cache)?.expand(), &want);
    }
    Ok(res.finish("W_{0,3}, W_{0,4}, W_{1,1}, W_{1,2}, W_{2,1}"))
}

/// The printed open `F_{g,n}` and closed `F_0, ..., F_3`.
pub fn formula_f_check<T: Scalar>(cache: &WCache<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("formula-F", "open and closed free energies reproduce the printed values");
    for (g, n, want) in reference::printed_open_f::<T>() {
        let f = integrate_W_to_F(compute_W(g, n, cache)?.as_ref());
        mpoly_diff(&mut res, format!("F_{{{g},{n}}}"), &f.expand(), &want);
    }
    for g in 0..=3 {
        let got = closed_F(g, cache)?;
        let want = reference::closed_f::<T>(g).expect("printed");
        if got != want {
            res.record(format!("F_{g}"), format!("{got} vs {want}"));
        }
    }
    Ok(res.finish("F_{0,3}, F_{0,4}, F_{1,1}, F_{1,2}, F_{2,1}, F_0..F_3"))
}

/// The printed `f` through `hbar^5`, `g` through `hbar^4` and `P_1, ..., P_4`.
pub fn formula_wkb_check<T: Scalar>(ps: &PainleveSeries<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("formula-WKB", "scalar Lax coefficients and Riccati solutions match the printed ones");
    let lax = scalar_lax(5, ps)?;
    let cmp = |res: &mut Residuals, at: String, got: ZRationalFn<T>, want: ZRationalFn<T>| {
        if got != want {
            res.record(at, &got - &want);
        }
    };
    for k in 0..=5 {
        cmp(&mut res, format!("f, hbar^{k}"), lax.f.coeff(k)?, reference::f_coeff(k as u32).expect("printed"));
    }
    for k in 0..=4 {
        cmp(&mut res, format!("g, hbar^{k}"), lax.g.coeff(k)?, reference::g_coeff(k as u32).expect("printed"));
    }
    let p = riccati_P(4, &lax, Branch::Plus)?;
    for m in 1..=4 {
        cmp(&mut res, format!("P_{m}"), p.coeff(m - 1)?, reference::p_x_form(m as u32).expect("printed"));
    }
    Ok(res.finish("f through hbar^5, g through hbar^4, P_1..P_4"))
}

/// The printed `S_0, ..., S_4` (`S_1` through its `x`-derivative).
pub fn formula_s_check<T: Scalar>(cache: &WCache<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("formula-S", "principal specializations reproduce the printed S_m");
    for m in 0..=4 {
        let s = principal_special(m, cache)?;
        let got = match &s {
            SpecializedS::Poly { value, .. } => ZRationalFn::from_poly(value.clone()),
            SpecializedS::HalfLog => ZRationalFn::from_poly(s.d_dx()),
        };
        let want = reference::s_x_form(m).expect("printed");
        if got != want {
            res.record(format!("S_{m}"), &got - &want);
        }
    }
    Ok(res.finish("S_0..S_4"))
}

/// `d/dt` of the closed `F_g` against the residue of `z W_{g,1}` at infinity.
pub fn closed_f_dt_check<T: Scalar>(gmax: u32, cache: &WCache<T>) -> Result<CheckResult> {
    let mut res = Residuals::new("closed-F-dt", "d/dt of the closed F_g equals the residue of z W_{g,1}");
    for g in 1..=gmax {
        let a = closed_F(g, cache)?.d_dt()?;
        let b = dFg_dt(g, cache)?;
        if a != b {
            res.record(format!("g = {g}"), &a - &b);
        }
    }
    Ok(res.finish(format!("1 <= g <= {gmax}")))
}

/// `dF_g/dt = sigma_2g` with `dF_0/dt` from the closed `F_0` and the rest
/// from residues of `W_{g,1}`.
pub fn tau_suite_check<T: Scalar>(gmax: u32, cache: &WCache<T>) -> Result<CheckResult> {
    let ps = painleve_series::<T>(gmax);
    let mut dfdt = vec![closed_F(0, cache)?.d_dt()?];
    for g in 1..=gmax {
        dfdt.push(dFg_dt(g, cache)?);
    }
    Ok(tau_check(&dfdt, &ps))
}

type Task<'a> = Box<dyn Fn() -> Result<CheckResult> + Send + Sync + 'a>;

fn levels(lo: u32, hi: u32, n_min: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for chi in lo..=hi {
        for n in n_min.max(1)..=chi + 2 {
            if (chi + 2 - n) % 2 == 0 {
                out.push(((chi + 2 - n) / 2, n));
            }
        }
    }
    out
}

/// Runs `suite` against a shared table cache.
pub fn run_suite<T: Scalar>(suite: Suite, params: Params, cache: &WCache<T>) -> Result<Report> {
    let Params { order, euler_max, gmax } = params;
    let want = |s: Suite| suite == Suite::All || suite == s;
    let ps = painleve_series::<T>(order / 2 + 3);
    let ps = &ps;
    let mut tasks: Vec<Task> = Vec::new();
    let mut skipped = Vec::new();

    if suite == Suite::All {
        tasks.push(Box::new(move || formula_w_check(cache)));
        tasks.push(Box::new(move || formula_f_check(cache)));
        tasks.push(Box::new(move || formula_s_check(cache)));
        tasks.push(Box::new(move || formula_wkb_check(ps)));
        tasks.push(Box::new(move || painleve_structure_check(ps)));
        tasks.push(Box::new(move || {
            let lax = scalar_lax(order + 1, ps)?;
            minus_branch_check(order + 1, &lax)
        }));
        tasks.push(Box::new(move || {
            let lax = scalar_lax(order + 1, ps)?;
            odd_even_check(order + 1, ps, &lax)
        }));
        tasks.push(Box::new(move || {
            let lax = scalar_lax(order + 1, ps)?;
            branch_point_integral_check(&riccati_P(order + 1, &lax, Branch::Plus)?)
        }));
    }
    if want(Suite::QuantumCurve) {
        tasks.push(Box::new(move || {
            let s = (0..=order + 1).map(|m| principal_special(m, cache)).collect::<Result<Vec<_>>>()?;
            quantum_curve_check(order, &s, ps)
        }));
        tasks.push(Box::new(move || podd_t_check::<T>(order + 1)));
    }
    if want(Suite::Tau) {
        tasks.push(Box::new(move || tau_suite_check(gmax, cache)));
        if gmax >= 1 {
            tasks.push(Box::new(move || closed_f_dt_check(gmax, cache)));
        }
    }
    if want(Suite::HamiltonianResidue) {
        if order >= 2 {
            tasks.push(Box::new(move || jmu_tau_check::<T>(order)));
            tasks.push(Box::new(move || {
                let lax = scalar_lax(order, ps)?;
                asymp_sigma_check(order, ps, &lax)
            }));
        } else {
            skipped.push("jmu-tau, asymptotic-sigma: need order >= 2".to_string());
        }
    }
    if want(Suite::DiffRec) {
        if euler_max >= 2 {
            for (g, n) in levels(2, euler_max, 1) {
                tasks.push(Box::new(move || diffrec_check(g, n, cache)));
                tasks.push(Box::new(move || g_route_check(g, n, cache)));
            }
        } else {
            skipped.push("diff-rec, G-routes: need euler-max >= 2".to_string());
        }
    }
    if want(Suite::Variation) {
        tasks.push(Box::new(move || variation_check(0, 2, cache)));
        for (g, n) in levels(1, euler_max, 1) {
            if is_stable(g, n) {
                tasks.push(Box::new(move || variation_check(g, n, cache)));
                tasks.push(Box::new(move || e_dt_check(g, n, cache)));
            }
        }
    }
    if want(Suite::PrincipalGE) {
        if euler_max >= 1 {
            for m in 2..=euler_max + 1 {
                tasks.push(Box::new(move || principal_ge_checks(m, cache)));
            }
        } else {
            skipped.push("principal-G-E: need euler-max >= 1".to_string());
        }
    }

    // fill the tables level by level before the checks read them concurrently
    let need = [order as i32, 2 * gmax as i32 - 1, euler_max as i32 + 1, if suite == Suite::All { 5 } else { 1 }];
    cache.ensure_euler(need.into_iter().max().unwrap_or(1).max(1))?;

    let checks = tasks.par_iter().map(|t| timed(t)).collect::<Result<Vec<_>>>()?;
    Ok(Report::new(params, checks, skipped))
}

/// Every check with a fresh cache.
pub fn run_all<T: Scalar>(order: u32, euler_max: u32) -> Result<Report> {
    let params = Params { order, euler_max, gmax: Params::default().gmax };
    run_suite(Suite::All, params, &WCache::<T>::new())
}
