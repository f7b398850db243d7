//! Floating-point contour integration of the recursion around z = 0, fed with
//! the exact lower tables, against the exact table at each step.

use std::collections::BTreeMap;

use num_complex::Complex64 as C;
use num_traits::ToPrimitive;
use painleve_qcurve::mpoly::MPoly;
use painleve_qcurve::toprec::{euler, is_stable};
use painleve_qcurve::{compute_W, Cache, Rational};

const Q0: C = C::new(0.7, 0.2);
const RADIUS: f64 = 0.3;
const NODES: usize = 400;

fn eval(p: &MPoly<Rational>, zs: &[C]) -> C {
    let mut acc = C::new(0.0, 0.0);
    for (e, c) in p.terms() {
        let l = c.as_elem().expect("Laurent coefficient");
        let mut coef = C::new(0.0, 0.0);
        for (q, v) in l.terms() {
            coef += Q0.powi(q) * v.to_f64().unwrap();
        }
        let mono: C = e.iter().zip(zs).map(|(&k, z)| z.powi(k)).product();
        acc += coef * mono;
    }
    acc
}

struct Tables(BTreeMap<(u32, u32), MPoly<Rational>>);

impl Tables {
    /// Density of `W_{g,n}`, with `W_{0,2}` the Bergman kernel.
    fn w(&self, g: u32, n: u32, zs: &[C]) -> C {
        if (g, n) == (0, 2) {
            return (zs[0] - zs[1]).powi(-2);
        }
        eval(&self.0[&(g, n)], zs)
    }
}

fn y(z: C) -> C {
    z * 2.0 * (z * z - Q0 * 3.0)
}

/// `K(z, z_1)` as the coefficient of `dz_1 / dz`.
fn kernel(z: C, z1: C) -> C {
    let omega = (z + z1).inv() + (z - z1).inv();
    -omega / (2.0 * (y(z) - y(-z)) * 2.0 * z)
}

/// The bracket of the recursion at `z`, as the coefficient of `dz dz`.
fn bracket(t: &Tables, g: u32, n: u32, z: C, rest: &[C]) -> C {
    let mut acc = C::new(0.0, 0.0);
    let with = |first: C, others: &[C]| -> Vec<C> { std::iter::once(first).chain(others.iter().copied()).collect() };
    for j in 0..rest.len() {
        let others: Vec<C> = rest.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, v)| *v).collect();
        if is_stable(g, n - 1) {
            // W_{0,2}(z, z_j) W(zbar, ...) + W_{0,2}(zbar, z_j) W(z, ...)
            acc += (z - rest[j]).powi(-2) * -t.w(g, n - 1, &with(-z, &others));
            acc += -(z + rest[j]).powi(-2) * t.w(g, n - 1, &with(z, &others));
        }
    }
    if g >= 1 {
        let args: Vec<C> = [z, -z].into_iter().chain(rest.iter().copied()).collect();
        acc += -t.w(g - 1, n + 1, &args);
    }
    let m = rest.len();
    for g1 in 0..=g {
        for mask in 0u32..(1 << m) {
            let i: Vec<C> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| rest[b]).collect();
            let j: Vec<C> = (0..m).filter(|b| mask >> b & 1 == 0).map(|b| rest[b]).collect();
            let (n1, n2) = (i.len() as u32 + 1, j.len() as u32 + 1);
            if !is_stable(g1, n1) || !is_stable(g - g1, n2) {
                continue;
            }
            acc += t.w(g1, n1, &with(z, &i)) * -t.w(g - g1, n2, &with(-z, &j));
        }
    }
    if (g, n) == (0, 3) {
        // the only split is W_{0,2} x W_{0,2}
        acc = (z - rest[0]).powi(-2) * -(z + rest[1]).powi(-2) + (z - rest[1]).powi(-2) * -(z + rest[0]).powi(-2);
    }
    acc
}

fn oracle(t: &Tables, g: u32, n: u32, zs: &[C]) -> C {
    let mut acc = C::new(0.0, 0.0);
    for k in 0..NODES {
        let th = 2.0 * std::f64::consts::PI * k as f64 / NODES as f64;
        let z = C::from_polar(RADIUS, th);
        let dz = C::i() * z * (2.0 * std::f64::consts::PI / NODES as f64);
        acc += kernel(z, zs[0]) * bracket(t, g, n, z, &zs[1..]) * dz;
    }
    acc / (2.0 * std::f64::consts::PI * C::i())
}

#[test]
fn recursion_matches_contour_integrals() {
    let cache = Cache::new();
    let mut tables = Tables(BTreeMap::new());
    let points = [
        C::new(0.9, 0.35),
        C::new(-1.1, 0.5),
        C::new(0.8, -0.95),
        C::new(1.3, 1.05),
        C::new(-0.7, -1.2),
        C::new(0.45, 1.4),
    ];
    for chi in 1..=4 {
        for n in 1..=(chi + 2) as u32 {
            if (chi + 2 - n as i32) % 2 != 0 {
                continue;
            }
            let g = ((chi + 2 - n as i32) / 2) as u32;
            assert_eq!(euler(g, n), chi);
            let w = compute_W(g, n, &cache).unwrap().expand();
            tables.0.insert((g, n), w);
            let zs = &points[..n as usize];
            let exact = tables.w(g, n, zs);
            let num = oracle(&tables, g, n, zs);
            let err = (exact - num).norm() / exact.norm();
            assert!(err < 1e-10, "W_{{{g},{n}}}: exact {exact}, contour {num}, rel {err:e}");
        }
    }
}
