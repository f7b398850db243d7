//! Topological recursion on the spectral curve, closed free energies and
//! the variation formula.
//!
//! A stable `W_{g,n}` is stored as a symmetric table: a sorted key
//! `(k_1 <= ... <= k_n)` maps to the coefficient `c` of every monomial
//! `prod z_i^(-2 k_{pi(i)}) dz_i` in its permutation orbit.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::coeffring::{CoeffFrac, Laurent};
use crate::curve::{kernel_factors, CurveData};
use crate::error::{Error, Result};
use crate::mpoly::{Binom, MPoly, RatExpr};
use crate::report::{CheckResult, Residuals};
use crate::scalar::Scalar;
use crate::zseries::{residue_at_zero, SeriesVar, TruncSeries, ZLaurentPoly};

/// Sorted multi-index.
pub type Key = Vec<u32>;

/// Extra series terms kept beyond what a residue strictly needs.
pub const DEFAULT_MARGIN: i32 = 2;

pub fn is_stable(g: u32, n: u32) -> bool {
    2 * g + n > 2
}

pub fn euler(g: u32, n: u32) -> i32 {
    2 * g as i32 - 2 + n as i32
}

/// Every key of a stable `W_{g,n}` has `sum (k_i - 1) <= 3g - 3 + n`.
pub fn degree_bound(g: u32, n: u32) -> u32 {
    (3 * g + n).saturating_sub(3)
}

fn key_weight(k: &[u32]) -> u32 {
    k.iter().map(|v| v - 1).sum()
}

/// Sorted union of two multi-indices.
pub(crate) fn merged(a: &[u32], b: &[u32]) -> Key {
    let mut v = Vec::with_capacity(a.len() + b.len());
    v.extend_from_slice(a);
    v.extend_from_slice(b);
    v.sort_unstable();
    v
}

/// Nondecreasing sequences of length `len`, entries `>= 1`, weight `<= budget`.
pub(crate) fn bounded_keys(len: usize, budget: u32) -> Vec<Key> {
    fn go(len: usize, min: u32, budget: u32, cur: &mut Key, out: &mut Vec<Key>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        let left = (len - cur.len()) as u32;
        let mut k = min;
        while (k - 1) * left <= budget {
            cur.push(k);
            go(len, k, budget - (k - 1), cur, out);
            cur.pop();
            k += 1;
        }
    }
    let mut out = Vec::new();
    go(len, 1, budget, &mut Vec::new(), &mut out);
    out
}

/// Distinct orderings of a multiset.
pub(crate) fn distinct_permutations(key: &[u32]) -> Vec<Key> {
    let mut cur = key.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StableW<T> {
    g: u32,
    n: u32,
    terms: BTreeMap<Key, CoeffFrac<T>>,
}

impl<T: Scalar> StableW<T> {
    pub fn new(g: u32, n: u32, terms: BTreeMap<Key, CoeffFrac<T>>) -> Result<Self> {
        if !is_stable(g, n) {
            return Err(Error::Domain(format!("(g, n) = ({g}, {n}) is not stable")));
        }
        for (k, c) in &terms {
            if k.len() != n as usize || k.iter().any(|&v| v == 0) || k.windows(2).any(|w| w[0] > w[1]) {
                return Err(Error::InternalConsistency(format!(
                    "W_{{{g},{n}}}: malformed key {k:?}"
                )));
            }
            if c.is_zero() {
                return Err(Error::InternalConsistency(format!(
                    "W_{{{g},{n}}}: stored zero at {k:?}"
                )));
            }
        }
        Ok(Self { g, n, terms })
    }

    pub fn g(&self) -> u32 {
        self.g
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Key, CoeffFrac<T>> {
        &self.terms
    }

    /// Coefficient of `prod z_i^(-2 k_i)` for the given (unsorted) exponents.
    pub fn get(&self, k: &[u32]) -> CoeffFrac<T> {
        let mut s = k.to_vec();
        s.sort_unstable();
        self.terms.get(&s).cloned().unwrap_or_else(CoeffFrac::zero)
    }

    /// Highest pole order in any one variable.
    pub fn max_pole(&self) -> u32 {
        self.terms.keys().flat_map(|k| k.iter()).map(|k| 2 * k).max().unwrap_or(0)
    }

    /// `sum_k c_k z^(-2k)` for a one-point table.
    pub fn single_variable(&self) -> Option<ZLaurentPoly<T>> {
        (self.n == 1).then(|| {
            ZLaurentPoly::from_terms(self.terms.iter().map(|(k, c)| (-2 * k[0] as i32, c.clone())))
        })
    }

    /// The density `W / (dz_1 ... dz_n)` with all variables kept distinct.
    pub fn expand(&self) -> MPoly<T> {
        self.expand_with(|k| (-2 * k as i32, CoeffFrac::one()))
    }

    /// The full symmetric function with `slot(k)` giving each variable's
    /// monomial exponent and coefficient factor.
    pub(crate) fn expand_with(&self, slot: impl Fn(u32) -> (i32, CoeffFrac<T>)) -> MPoly<T> {
        expand_symmetric(self.terms.iter().map(|(k, c)| (k.clone(), c.clone())), self.n as usize, slot)
    }
}

pub(crate) fn expand_symmetric<T: Scalar>(
    entries: impl Iterator<Item = (Key, CoeffFrac<T>)>,
    nvars: usize,
    slot: impl Fn(u32) -> (i32, CoeffFrac<T>),
) -> MPoly<T> {
    let mut out = MPoly::zero(nvars);
    for (k, c) in entries {
        for p in distinct_permutations(&k) {
            let mut coef = c.clone();
            let mut exps = Vec::with_capacity(nvars);
            for v in &p {
                let (e, f) = slot(*v);
                exps.push(e);
                coef = &coef * &f;
            }
            out.add_term(exps, coef);
        }
    }
    out
}

impl<T: Scalar> fmt::Display for StableW<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "W_{{{},{}}}", self.g, self.n)?;
        for (k, c) in &self.terms {
            writeln!(f, "  {k:?}: {c}")?;
        }
        Ok(())
    }
}

type Tables<T> = BTreeMap<(u32, u32), Arc<StableW<T>>>;

fn dep<T>(lower: &Tables<T>, g: u32, n: u32) -> Result<&StableW<T>> {
    lower
        .get(&(g, n))
        .map(|a| a.as_ref())
        .ok_or_else(|| Error::Dependency(format!("W_{{{g},{n}}} not available")))
}

/// Sign picked up by a stable basis form `z^(-2k) dz` under `z -> -z`.
fn stable_pullback_sign<T: Scalar>() -> CoeffFrac<T> {
    ZLaurentPoly::mono(1, 1, 0, -2).involution(1).coeff(-2)
}

/// Coefficient of `z^m w^(-m-2)` in the pullback of `dz dw/(z - w)^2` by `z -> -z`.
fn bergman_pullback_coeff<T: Scalar>(m: u32) -> CoeffFrac<T> {
    let base = CoeffFrac::mono(m as i64 + 1, 1, 0);
    ZLaurentPoly::monomial(base, m as i32).involution(1).coeff(m as i32)
}

/// The bracket of the recursion for `W_{g,n}` restricted to the
/// `prod_{j>=2} z_j^(-2 R_j)` component, as an exact Laurent polynomial in `z`.
fn bracket<T: Scalar>(g: u32, n: u32, rest: &[u32], lower: &Tables<T>) -> Result<ZLaurentPoly<T>> {
    let inv = stable_pullback_sign::<T>();
    let mut b = ZLaurentPoly::zero();

    if (g, n) == (1, 1) {
        // W_{0,2}(z, zbar) = dz d(-z)/(2z)^2
        return Ok(ZLaurentPoly::mono(1, 4, 0, -2).involution(1));
    }
    if (g, n) == (0, 3) {
        // W_{0,2}(z, z_2) W_{0,2}(zbar, z_3) + (2 <-> 3)
        let (m2, m3) = (2 * rest[0] - 2, 2 * rest[1] - 2);
        let w2 = CoeffFrac::mono(m2 as i64 + 1, 1, 0);
        let w3 = CoeffFrac::mono(m3 as i64 + 1, 1, 0);
        let c = &(&w2 * &bergman_pullback_coeff(m3)) + &(&w3 * &bergman_pullback_coeff(m2));
        b.add_term((m2 + m3) as i32, c);
        return Ok(b);
    }

    // W_{g-1,n+1}(z, zbar, rest)
    if g >= 1 && is_stable(g - 1, n + 1) {
        let t = dep(lower, g - 1, n + 1)?;
        if let Some(slack) = degree_bound(g - 1, n + 1).checked_sub(key_weight(rest)) {
            for a in 1..=slack + 1 {
                for c in 1..=slack + 2 - a {
                    let v = t.get(&merged(rest, &[a, c]));
                    if !v.is_zero() {
                        b.add_term(-2 * (a + c) as i32, &inv * &v);
                    }
                }
            }
        }
    }

    // W_{0,2}(z, z_j) W_{g,n-1}(zbar, ...) + W_{0,2}(zbar, z_j) W_{g,n-1}(z, ...)
    if n >= 2 && is_stable(g, n - 1) {
        let t = dep(lower, g, n - 1)?;
        for j in 0..rest.len() {
            let kj = rest[j];
            let mut others = rest.to_vec();
            others.remove(j);
            let Some(slack) = degree_bound(g, n - 1).checked_sub(key_weight(&others)) else {
                continue;
            };
            for k in 1..=slack + 1 {
                let v = t.get(&merged(&others, &[k]));
                if v.is_zero() {
                    continue;
                }
                // z_j^(-2 kj) comes from m = 2kj - 2; its odd neighbour
                // m = 2kj - 1 would feed an odd z_j power and must cancel.
                for m in [2 * kj - 2, 2 * kj - 1] {
                    let wz = CoeffFrac::mono(m as i64 + 1, 1, 0);
                    let c = &v * &(&(&wz * &inv) + &bergman_pullback_coeff(m));
                    if m % 2 == 1 {
                        if !c.is_zero() {
                            return Err(Error::InternalConsistency(format!(
                                "W_{{{g},{n}}}: odd power z_j^-{} survives with {c}",
                                m + 2
                            )));
                        }
                        continue;
                    }
                    b.add_term(m as i32 - 2 * k as i32, c);
                }
            }
        }
    }

    // W_{g1}(z, I) W_{g2}(zbar, J), both factors stable
    let r = rest.len();
    for g1 in 0..=g {
        let g2 = g - g1;
        for mask in 0u32..(1 << r) {
            let (mut ri, mut rj) = (Vec::new(), Vec::new());
            for (p, v) in rest.iter().enumerate() {
                if mask & (1 << p) != 0 {
                    ri.push(*v)
                } else {
                    rj.push(*v)
                }
            }
            let (n1, n2) = (ri.len() as u32 + 1, rj.len() as u32 + 1);
            if !is_stable(g1, n1) || !is_stable(g2, n2) {
                continue;
            }
            let (t1, t2) = (dep(lower, g1, n1)?, dep(lower, g2, n2)?);
            let (Some(s1), Some(s2)) = (
                degree_bound(g1, n1).checked_sub(key_weight(&ri)),
                degree_bound(g2, n2).checked_sub(key_weight(&rj)),
            ) else {
                continue;
            };
            for a in 1..=s1 + 1 {
                let c1 = t1.get(&merged(&ri, &[a]));
                if c1.is_zero() {
                    continue;
                }
                for c in 1..=s2 + 1 {
                    let c2 = t2.get(&merged(&rj, &[c]));
                    if !c2.is_zero() {
                        b.add_term(-2 * (a + c) as i32, &(&c1 * &inv) * &c2);
                    }
                }
            }
        }
    }
    Ok(b)
}

/// One recursion step: `W_{g,n}` from the tables in `lower`.
pub(crate) fn assemble<T: Scalar>(g: u32, n: u32, lower: &Tables<T>, margin: i32) -> Result<StableW<T>> {
    if !is_stable(g, n) || n == 0 {
        return Err(Error::Domain(format!("W_{{{g},{n}}} is not a stable differential")));
    }
    let bound = degree_bound(g, n);
    let rests = bounded_keys(n as usize - 1, bound);

    let per_rest: Vec<Vec<(u32, Key, CoeffFrac<T>)>> = rests
        .par_iter()
        .map(|rest| -> Result<Vec<(u32, Key, CoeffFrac<T>)>> {
            let b = bracket(g, n, rest, lower)?;
            let Some(lo) = b.min_exp().filter(|&e| e <= 0) else {
                return Ok(Vec::new());
            };
            let pole = -lo;
            let bser = TruncSeries::from_poly(&b, SeriesVar::Z, 1 + margin);
            let kf = kernel_factors::<T>(pole + 2 + margin)?;
            let q = kf.scalar_part().mul(&bser);
            let mut out = Vec::new();
            for k1 in 1..=((pole + 2) / 2) as u32 {
                let integrand = q.shift(2 * (k1 as i32 - 1)).scale(&kf.z1_coeff(k1 - 1));
                let v = residue_at_zero(&integrand)?;
                if !v.is_zero() {
                    out.push((k1, rest.clone(), v));
                }
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;

    let mut by_slot: BTreeMap<(u32, Key), CoeffFrac<T>> = BTreeMap::new();
    let mut full: BTreeSet<Key> = BTreeSet::new();
    for (k1, rest, v) in per_rest.into_iter().flatten() {
        let key = merged(&rest, &[k1]);
        if key_weight(&key) > bound {
            return Err(Error::InternalConsistency(format!(
                "W_{{{g},{n}}}: term {key:?} exceeds the degree bound {bound}"
            )));
        }
        full.insert(key);
        by_slot.insert((k1, rest), v);
    }

    // Symmetry: every choice of distinguished variable gives the same value.
    let mut terms = BTreeMap::new();
    for key in full {
        let mut seen: Option<CoeffFrac<T>> = None;
        let mut last = None;
        for (i, &v) in key.iter().enumerate() {
            if last == Some(v) {
                continue;
            }
            last = Some(v);
            let mut rest = key.clone();
            rest.remove(i);
            let c = by_slot.get(&(v, rest)).cloned().unwrap_or_else(CoeffFrac::zero);
            match &seen {
                None => seen = Some(c),
                Some(prev) if *prev != c => {
                    return Err(Error::InternalConsistency(format!(
                        "W_{{{g},{n}}} is not symmetric at {key:?}: {prev} vs {c}"
                    )))
                }
                _ => {}
            }
        }
        let c = seen.expect("key is nonempty");
        if !c.is_zero() {
            terms.insert(key, c);
        }
    }
    StableW::new(g, n, terms)
}

/// Insert-once store of computed differentials, safe to share across threads.
pub struct WCache<T> {
    entries: RwLock<Tables<T>>,
    margin: i32,
}

impl<T: Scalar> Default for WCache<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> WCache<T> {
    pub fn new() -> Self {
        Self::with_margin(DEFAULT_MARGIN)
    }

    pub fn with_margin(margin: i32) -> Self {
        Self { entries: RwLock::new(BTreeMap::new()), margin }
    }

    pub fn margin(&self) -> i32 {
        self.margin
    }

    pub fn get(&self, g: u32, n: u32) -> Option<Arc<StableW<T>>> {
        self.entries.read().expect("cache lock").get(&(g, n)).cloned()
    }

    /// Insert `w` unless an entry exists; an existing entry must agree.
    pub fn insert(&self, w: StableW<T>) -> Result<Arc<StableW<T>>> {
        let mut map = self.entries.write().expect("cache lock");
        let key = (w.g, w.n);
        if let Some(old) = map.get(&key) {
            if **old != w {
                return Err(Error::InternalConsistency(format!(
                    "conflicting cache entries for W_{{{},{}}}",
                    key.0, key.1
                )));
            }
            return Ok(old.clone());
        }
        let a = Arc::new(w);
        map.insert(key, a.clone());
        Ok(a)
    }

    pub fn snapshot(&self) -> BTreeMap<(u32, u32), Arc<StableW<T>>> {
        self.entries.read().expect("cache lock").clone()
    }

    pub fn len(&self) -> usize {
        self.entries.read().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Compute every listed `(g, n)` level by level in `2g - 2 + n`,
    /// running each level in parallel.
    fn fill(&self, mut wanted: Vec<(u32, u32)>) -> Result<()> {
        wanted.sort_by_key(|&(g, n)| (euler(g, n), g, n));
        wanted.dedup();
        let mut i = 0;
        while i < wanted.len() {
            let chi = euler(wanted[i].0, wanted[i].1);
            let level: Vec<(u32, u32)> = wanted[i..]
                .iter()
                .take_while(|&&(g, n)| euler(g, n) == chi)
                .filter(|&&(g, n)| self.get(g, n).is_none())
                .copied()
                .collect();
            i += wanted[i..].iter().take_while(|&&(g, n)| euler(g, n) == chi).count();
            if level.is_empty() {
                continue;
            }
            let lower = self.snapshot();
            let built: Vec<StableW<T>> = level
                .par_iter()
                .map(|&(g, n)| assemble(g, n, &lower, self.margin))
                .collect::<Result<_>>()?;
            for w in built {
                self.insert(w)?;
            }
        }
        Ok(())
    }

    /// Every stable `(g, n)` with `n >= 1` and `2g - 2 + n <= chi_max`.
    pub fn ensure_euler(&self, chi_max: i32) -> Result<()> {
        let mut wanted = Vec::new();
        for chi in 1..=chi_max {
            for g in 0..=((chi + 1) / 2) as u32 {
                let n = chi + 2 - 2 * g as i32;
                if n >= 1 {
                    wanted.push((g, n as u32));
                }
            }
        }
        self.fill(wanted)
    }
}

/// `W_{g,n}` by the recursion, memoized in `cache` together with every
/// differential it depends on.
#[allow(non_snake_case)]
pub fn compute_W<T: Scalar>(g: u32, n: u32, cache: &WCache<T>) -> Result<Arc<StableW<T>>> {
    if n == 0 || !is_stable(g, n) {
        return Err(Error::Domain(format!("W_{{{g},{n}}} needs n >= 1 and 2g - 2 + n >= 1")));
    }
    if let Some(w) = cache.get(g, n) {
        return Ok(w);
    }
    let chi = euler(g, n);
    let mut wanted = Vec::new();
    for gp in 0..=g {
        for np in 1..=(g + n - gp) {
            if is_stable(gp, np) && euler(gp, np) <= chi {
                wanted.push((gp, np));
            }
        }
    }
    cache.fill(wanted)?;
    cache.get(g, n).ok_or_else(|| Error::Dependency(format!("W_{{{g},{n}}} was not produced")))
}

/// Closed free energy `F_g`.
#[derive(Clone, Debug, PartialEq)]
pub enum ClosedF<T> {
    /// A Laurent polynomial in `q0` (`g = 0` and `g >= 2`).
    Value { g: u32, value: Laurent<T> },
    /// `coeff * log(arg)`, the genus-one term.
    Log { g: u32, coeff: T, arg: Laurent<T> },
}

impl<T: Scalar> ClosedF<T> {
    pub fn genus(&self) -> u32 {
        match self {
            ClosedF::Value { g, .. } | ClosedF::Log { g, .. } => *g,
        }
    }

    pub fn value(&self) -> Option<&Laurent<T>> {
        match self {
            ClosedF::Value { value, .. } => Some(value),
            ClosedF::Log { .. } => None,
        }
    }

    /// `dF_g/dt`; for the logarithm `coeff * arg'/arg` with a monomial `arg`.
    pub fn d_dt(&self) -> Result<Laurent<T>> {
        match self {
            ClosedF::Value { value, .. } => Ok(value.d_dt()),
            ClosedF::Log { coeff, arg, .. } => arg
                .d_dt()
                .div_exact(arg)
                .map(|v| v.scale(coeff))
                .ok_or_else(|| Error::Normalization(format!("log({arg}) has no Laurent derivative"))),
        }
    }
}

impl<T: Scalar> fmt::Display for ClosedF<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedF::Value { value, .. } => write!(f, "{value}"),
            ClosedF::Log { coeff, arg, .. } => {
                write!(f, "{} * log({arg})", crate::scalar::RatFmt(coeff))
            }
        }
    }
}

/// `F_0 = -48 q0^5 / 5`, `F_1 = -(1/24) log(-3 q0)` and, for `g >= 2`,
/// `F_g = Res_{z=0} Phi(z) W_{g,1}(z) / (2 - 2g)`.
#[allow(non_snake_case)]
pub fn closed_F<T: Scalar>(g: u32, cache: &WCache<T>) -> Result<ClosedF<T>> {
    match g {
        0 => Ok(ClosedF::Value { g, value: Laurent::mono(-48, 5, 5) }),
        1 => Ok(ClosedF::Log { g, coeff: T::from_frac(-1, 24), arg: Laurent::mono(-3, 1, 1) }),
        _ => {
            let w = compute_W(g, 1, cache)?;
            let wz = w.single_variable().expect("one-point table");
            if let Some((e, _)) = wz.terms().find(|(e, _)| e % 2 != 0) {
                return Err(Error::InternalConsistency(format!("W_{{{g},1}} has odd power z^{e}")));
            }
            let phi = CurveData::<T>::new().phi_of_z;
            let res = (&phi * &wz).coeff(-1);
            let v = res.scale(&T::from_frac(1, 2 - 2 * g as i64));
            let value = v
                .as_elem()
                .cloned()
                .ok_or_else(|| Error::Normalization(format!("F_{g} = {v} is not a Laurent polynomial")))?;
            Ok(ClosedF::Value { g, value })
        }
    }
}

/// `dF_g/dt = -Res_{z=infinity} z W_{g,1}(z)`, the `z^-2` coefficient of `W_{g,1}`.
#[allow(non_snake_case)]
pub fn dFg_dt<T: Scalar>(g: u32, cache: &WCache<T>) -> Result<Laurent<T>> {
    if g == 0 {
        return Err(Error::Domain("dF_g/dt from W_{g,1} needs g >= 1".into()));
    }
    let w = compute_W(g, 1, cache)?;
    let zw = w.single_variable().expect("one-point table").shift(1);
    // -Res_{z=inf} f dz is the z^-1 coefficient of f
    let c = zw.coeff(-1);
    c.as_elem()
        .cloned()
        .ok_or_else(|| Error::Normalization(format!("dF_{g}/dt = {c} is not a Laurent polynomial")))
}

/// `W / prod dx_i` as a function of `z_i`: `z^(-2k) dz -> z^(-2k-1)/2`.
fn x_density<T: Scalar>(k: u32) -> (i32, CoeffFrac<T>) {
    (-2 * k as i32 - 1, CoeffFrac::mono(1, 2, 0))
}

/// Variation formula: `d/dt` at fixed `x_i` of `W_{g,n}/prod dx_i` equals
/// `-2 Res_{x_{n+1}=inf} z_{n+1} W_{g,n+1}` divided by `prod dx_i`.
pub fn variation_check<T: Scalar>(g: u32, n: u32, cache: &WCache<T>) -> Result<CheckResult> {
    let id = format!("variation-W-{g}-{n}");
    let anchor = "t-derivative of W_{g,n} at fixed x equals the residue of z W_{g,n+1} at infinity";
    let mut res = Residuals::new(id, anchor);
    let scope = format!("(g, n) = ({g}, {n})");

    let w1 = compute_W(g, n + 1, cache)?;
    let rhs = expand_symmetric(
        w1.terms().iter().filter_map(|(k, c)| {
            let i = k.iter().position(|&v| v == 1)?;
            let mut rest = k.clone();
            rest.remove(i);
            Some((rest, c.clone()))
        }),
        n as usize,
        x_density,
    );

    let diff = if (g, n) == (0, 2) {
        // W_{0,2}/(dx_1 dx_2) = (z1 + z2)^2 / (4 z1 z2 (z1^2 - z2^2)^2)
        let z1 = MPoly::var_pow(2, 0, 1, CoeffFrac::one());
        let z2 = MPoly::var_pow(2, 1, 1, CoeffFrac::one());
        let s = z1.add(&z2);
        let num = s
            .mul(&s)
            .mul(&MPoly::monomial(CoeffFrac::mono(1, 4, 0), vec![-1, -1]));
        let lhs = RatExpr::new(num, [(Binom::diff(0, 1), 2)]).dt_fixed_x();
        lhs.sub(&RatExpr::from_poly(rhs)).num().clone()
    } else {
        if !is_stable(g, n) {
            return Err(Error::Domain(format!("variation formula for (g, n) = ({g}, {n})")));
        }
        let w = compute_W(g, n, cache)?;
        w.expand_with(x_density).dt_fixed_x().sub(&rhs)
    };
    if !diff.is_zero() {
        res.record(format!("(g, n) = ({g}, {n})"), &diff);
    }
    Ok(res.finish(scope))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type F = CoeffFrac<BigRational>;

    #[test]
    fn key_enumeration() {
        assert_eq!(bounded_keys(2, 1), vec![vec![1, 1], vec![1, 2]]);
        assert_eq!(bounded_keys(0, 3), vec![Vec::<u32>::new()]);
        assert_eq!(distinct_permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
    }

    #[test]
    fn base_cases() {
        let cache = WCache::<BigRational>::new();
        let w11 = compute_W(1, 1, &cache).unwrap();
        assert_eq!(w11.get(&[1]), F::mono(1, 288, -2));
        assert_eq!(w11.get(&[2]), F::mono(1, 96, -1));
        assert_eq!(w11.terms().len(), 2);
        let w03 = compute_W(0, 3, &cache).unwrap();
        assert_eq!(w03.terms().len(), 1);
        assert_eq!(w03.get(&[1, 1, 1]), F::mono(1, 12, -1));
    }

    #[test]
    fn one_loop_two_point() {
        let cache = WCache::<BigRational>::new();
        let w = compute_W(1, 2, &cache).unwrap();
        assert_eq!(w.get(&[1, 1]), F::mono(1, 1728, -4));
        assert_eq!(w.get(&[2, 1]), F::mono(1, 576, -3));
        assert_eq!(w.get(&[1, 3]), F::mono(5, 1152, -2));
        assert_eq!(w.get(&[2, 2]), F::mono(1, 384, -2));
    }

    #[test]
    fn closed_free_energies() {
        let cache = WCache::<BigRational>::new();
        assert_eq!(closed_F(2, &cache).unwrap().value(), Some(&Laurent::mono(7, 207360, -5)));
        assert_eq!(dFg_dt(2, &cache).unwrap(), Laurent::mono(7, 497664, -7));
        assert_eq!(closed_F(2, &cache).unwrap().d_dt().unwrap(), dFg_dt(2, &cache).unwrap());
        assert_eq!(closed_F(1, &cache).unwrap().d_dt().unwrap(), Laurent::mono(1, 288, -2));
        assert_eq!(closed_F(0, &cache).unwrap().d_dt().unwrap(), Laurent::mono(4, 1, 3));
    }

    #[test]
    fn rejects_unstable() {
        let cache = WCache::<BigRational>::new();
        assert!(matches!(compute_W(0, 2, &cache), Err(Error::Domain(_))));
        assert!(matches!(compute_W(1, 0, &cache), Err(Error::Domain(_))));
    }

    #[test]
    fn variation_low_orders() {
        let cache = WCache::<BigRational>::new();
        for (g, n) in [(0, 2), (1, 1), (0, 3)] {
            let r = variation_check(g, n, &cache).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
