//! Published closed forms for the low-order objects, transcribed as data.
//!
//! Multi-point objects are densities in `z_i` (the coefficient of
//! `dz_1 ... dz_n`); one-point functions of `x` are built through
//! `x = z^2 - 2 q0`, `(x + 2 q0)^(1/2) = z`.

use crate::coeffring::{CoeffFrac, Laurent};
use crate::curve::CurveData;
use crate::mpoly::MPoly;
use crate::scalar::Scalar;
use crate::toprec::ClosedF;
use crate::zseries::{ZLaurentPoly, ZRationalFn};

/// `sum (num/den) q0^qexp prod z_i^(e_i)` over the listed terms.
fn mp<T: Scalar>(nvars: usize, terms: &[(i64, i64, i32, &[i32])]) -> MPoly<T> {
    let mut out = MPoly::zero(nvars);
    for &(num, den, q, e) in terms {
        out.add_term(e.to_vec(), CoeffFrac::mono(num, den, q));
    }
    out
}

/// `prod_{i != j} z_i^a * z_j^b`, summed over `j`.
fn one_apart<T: Scalar>(nvars: usize, a: i32, b: i32, c: CoeffFrac<T>) -> MPoly<T> {
    let mut out = MPoly::zero(nvars);
    for j in 0..nvars {
        let e = (0..nvars).map(|i| if i == j { b } else { a }).collect();
        out.add_term(e, c.clone());
    }
    out
}

pub fn w03<T: Scalar>() -> MPoly<T> {
    mp(3, &[(1, 12, -1, &[-2, -2, -2])])
}

pub fn w04<T: Scalar>() -> MPoly<T> {
    mp(4, &[(1, 144, -3, &[-2, -2, -2, -2])]).add(&one_apart(4, -2, -4, CoeffFrac::mono(3, 144, -2)))
}

pub fn w11<T: Scalar>() -> MPoly<T> {
    mp(1, &[(1, 288, -2, &[-2]), (3, 288, -1, &[-4])])
}

pub fn w12<T: Scalar>() -> MPoly<T> {
    let d = 3456;
    mp(
        2,
        &[
            (2, d, -4, &[-2, -2]),
            (6, d, -3, &[-2, -4]),
            (6, d, -3, &[-4, -2]),
            (15, d, -2, &[-2, -6]),
            (9, d, -2, &[-4, -4]),
            (15, d, -2, &[-6, -2]),
        ],
    )
}

pub fn w21<T: Scalar>() -> MPoly<T> {
    let d = 1990656;
    mp(1, &[(28, d, -7, &[-2]), (84, d, -6, &[-4]), (252, d, -5, &[-6]), (609, d, -4, &[-8]), (945, d, -3, &[-10])])
}

/// `(g, n, W_{g,n})` for every printed differential.
pub fn printed_w<T: Scalar>() -> Vec<(u32, u32, MPoly<T>)> {
    vec![(0, 3, w03()), (0, 4, w04()), (1, 1, w11()), (1, 2, w12()), (2, 1, w21())]
}

pub fn f03<T: Scalar>() -> MPoly<T> {
    mp(3, &[(-1, 12, -1, &[-1, -1, -1])])
}

pub fn f04<T: Scalar>() -> MPoly<T> {
    mp(4, &[(1, 144, -3, &[-1, -1, -1, -1])]).add(&one_apart(4, -1, -3, CoeffFrac::mono(1, 144, -2)))
}

pub fn f11<T: Scalar>() -> MPoly<T> {
    mp(1, &[(-1, 288, -2, &[-1]), (-1, 288, -1, &[-3])])
}

pub fn f12<T: Scalar>() -> MPoly<T> {
    let d = 3456;
    mp(
        2,
        &[
            (2, d, -4, &[-1, -1]),
            (2, d, -3, &[-1, -3]),
            (2, d, -3, &[-3, -1]),
            (3, d, -2, &[-1, -5]),
            (1, d, -2, &[-3, -3]),
            (3, d, -2, &[-5, -1]),
        ],
    )
}

pub fn f21<T: Scalar>() -> MPoly<T> {
    let d = -9953280;
    mp(1, &[(140, d, -7, &[-1]), (140, d, -6, &[-3]), (252, d, -5, &[-5]), (435, d, -4, &[-7]), (525, d, -3, &[-9])])
}

pub fn printed_open_f<T: Scalar>() -> Vec<(u32, u32, MPoly<T>)> {
    vec![(0, 3, f03()), (0, 4, f04()), (1, 1, f11()), (1, 2, f12()), (2, 1, f21())]
}

pub fn closed_f<T: Scalar>(g: u32) -> Option<ClosedF<T>> {
    let value = match g {
        0 => Laurent::mono(-48, 5, 5),
        1 => return Some(ClosedF::Log { g, coeff: T::from_frac(-1, 24), arg: Laurent::mono(-3, 1, 1) }),
        2 => Laurent::mono(7, 207360, -5),
        3 => Laurent::mono(245, 429981696, -10),
        _ => return None,
    };
    Some(ClosedF::Value { g, value })
}

/// `sum_i c_i q0^(a_i) x^(b_i)` with `x = z^2 - 2 q0`.
fn xpoly<T: Scalar>(terms: &[(i64, i32, u32)]) -> ZLaurentPoly<T> {
    let x = CurveData::<T>::new().x_of_z;
    let mut out = ZLaurentPoly::zero();
    for &(c, a, b) in terms {
        out = &out + &x.pow(b).scale(&CoeffFrac::mono(c, 1, a));
    }
    out
}

/// `N(x) (x + 2 q0)^(half/2) / (den q0^qexp (x - q0)^xq)`.
fn xform<T: Scalar>(num: &[(i64, i32, u32)], half: i32, den: i64, qexp: i32, xq: u32) -> ZRationalFn<T> {
    let n = xpoly::<T>(num).shift(half).scale(&CoeffFrac::mono(1, den, -qexp));
    let d = CurveData::<T>::new().x_minus_q0().pow(xq);
    ZRationalFn::new(n, d).expect("nonzero denominator")
}

/// `S_0, ..., S_4` with `S_1` represented by `dS_1/dx`.
pub fn s_x_form<T: Scalar>(m: u32) -> Option<ZRationalFn<T>> {
    Some(match m {
        0 => xform(&[(1, 0, 1), (-3, 1, 0)], 3, 5, 0, 0).scale(&CoeffFrac::mono(4, 1, 0)),
        // -(1/4) log(x + 2 q0)
        1 => xform(&[(1, 0, 0)], -2, -4, 0, 0),
        2 => xform(&[(1, 0, 1), (7, 1, 0)], -3, -288, 2, 0),
        3 => xform(&[(2, 0, 2), (14, 1, 1), (35, 2, 0)], -6, 6912, 4, 0),
        4 => xform(&[(140, 0, 4), (1580, 1, 3), (7476, 2, 2), (18739, 3, 1), (23499, 4, 0)], -9, -9953280, 7, 0),
        _ => return None,
    })
}

/// `P_1, ..., P_4` of the plus branch.
pub fn p_x_form<T: Scalar>(m: u32) -> Option<ZRationalFn<T>> {
    Some(match m {
        1 => xform(&[(1, 0, 0)], -2, -4, 0, 0),
        2 => xform(&[(1, 0, 1), (17, 1, 0)], -5, 576, 2, 0),
        3 => xform(&[(2, 0, 2), (20, 1, 1), (77, 2, 0)], -8, -6912, 4, 0),
        4 => xform(&[(28, 0, 4), (500, 1, 3), (3684, 2, 2), (14273, 3, 1), (27307, 4, 0)], -11, 3981312, 7, 0),
        _ => return None,
    })
}

/// Coefficient of `hbar^k` in `f`, `k <= 5`.
pub fn f_coeff<T: Scalar>(k: u32) -> Option<ZRationalFn<T>> {
    Some(match k {
        0 | 2 | 4 => ZRationalFn::from_poly(ZLaurentPoly::zero()),
        1 => xform(&[(1, 0, 0)], 0, -1, 0, 1),
        3 => xform(&[(1, 0, 0)], 0, 1728, 4, 2),
        5 => xform(&[(49, 0, 1), (-51, 1, 0)], 0, 5971968, 9, 3),
        _ => return None,
    })
}

/// Coefficient of `hbar^k` in `g`, `k <= 4`.
pub fn g_coeff<T: Scalar>(k: u32) -> Option<ZRationalFn<T>> {
    Some(match k {
        1 | 3 => ZRationalFn::from_poly(ZLaurentPoly::zero()),
        0 => {
            let xq = CurveData::<T>::new().x_minus_q0();
            let v = &(&xq * &xq) * &ZLaurentPoly::mono(-4, 1, 0, 2);
            ZRationalFn::from_poly(v)
        }
        2 => xform(&[(1, 0, 1), (11, 1, 0)], 0, -144, 2, 1),
        4 => xform(&[(7, 0, 2), (34, 1, 1), (-53, 2, 0)], 0, -248832, 7, 2),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn x_forms_agree_with_direct_z_forms() {
        // S_0 = (4/5)(x - 3q0)(x + 2q0)^(3/2) = (4/5) z^5 - 4 q0 z^3
        let s0 = &ZLaurentPoly::<BigRational>::mono(4, 5, 0, 5) - &ZLaurentPoly::mono(4, 1, 1, 3);
        assert_eq!(s_x_form::<BigRational>(0).unwrap().as_poly(), Some(&s0));
        // P_2 = (z^2 + 15 q0) / (576 q0^2 z^5)
        let p2 = &ZLaurentPoly::mono(1, 576, -2, -3) + &ZLaurentPoly::mono(15, 576, -1, -5);
        assert_eq!(p_x_form::<BigRational>(2).unwrap().as_poly(), Some(&p2));
        assert!(g_coeff::<BigRational>(2).unwrap().as_poly().is_none());
    }
}
