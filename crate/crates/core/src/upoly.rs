//! Dense univariate polynomials over an arbitrary [`FieldElem`].
//!
//! Coefficients are stored in ascending order. These routines back both the
//! q0-fraction field and the z-rational functions, which is why they are
//! written against the small field trait instead of a concrete type.

use crate::scalar::FieldElem;

pub(crate) fn trim<F: FieldElem>(p: &mut Vec<F>) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree<F: FieldElem>(p: &[F]) -> Option<usize> {
    p.iter().rposition(|c| !c.is_zero())
}

#[cfg(test)]
pub(crate) fn mul<F: FieldElem>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; `b` must be nonzero.
pub(crate) fn divrem<F: FieldElem>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    let db = degree(b).expect("polynomial division by zero");
    let lead = b[db].clone();
    let mut r: Vec<F> = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![F::zero(); r.len() - db];
    while let Some(dr) = degree(&r) {
        if dr < db {
            break;
        }
        let c = r[dr].clone() / lead.clone();
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate().take(db + 1) {
            if bc.is_zero() {
                continue;
            }
            r[shift + i] = r[shift + i].clone() - c.clone() * bc.clone();
        }
        q[shift] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

pub(crate) fn make_monic<F: FieldElem>(p: &[F]) -> Vec<F> {
    match degree(p) {
        None => Vec::new(),
        Some(d) => {
            let lead = p[d].clone();
            p[..=d].iter().map(|c| c.clone() / lead.clone()).collect()
        }
    }
}

/// Monic gcd by the Euclidean algorithm.
pub(crate) fn gcd<F: FieldElem>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = make_monic(a);
    let mut y = make_monic(b);
    while degree(&y).is_some() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = make_monic(&r);
    }
    make_monic(&x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::FromPrimitive;

    fn p(cs: &[i64]) -> Vec<BigRational> {
        cs.iter().map(|&c| BigRational::from_i64(c).unwrap()).collect()
    }

    #[test]
    fn gcd_of_products() {
        // (x-1)(x+2) and (x-1)(x+5)
        let a = mul(&p(&[-1, 1]), &p(&[2, 1]));
        let b = mul(&p(&[-1, 1]), &p(&[5, 1]));
        assert_eq!(gcd(&a, &b), p(&[-1, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let a = p(&[3, 0, -2, 7, 1]);
        let b = p(&[1, 2, 1]);
        let (q, r) = divrem(&a, &b);
        let mut back = mul(&q, &b);
        back.resize(a.len().max(back.len()), BigRational::from_i64(0).unwrap());
        for (i, c) in r.iter().enumerate() {
            back[i] = back[i].clone() + c.clone();
        }
        trim(&mut back);
        assert_eq!(back, a);
        assert!(degree(&r).map_or(true, |d| d < 2));
    }

    #[test]
    fn coprime_gcd_is_one() {
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])), p(&[1]));
    }
}
