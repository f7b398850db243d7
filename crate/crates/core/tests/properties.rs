use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

use painleve_qcurve::coeffring::{CoeffFrac, Laurent};
use painleve_qcurve::zseries::{puiseux_binomial, SeriesVar, TruncSeries, ZLaurentPoly, ZRationalFn};
use painleve_qcurve::Rational;

type L = Laurent<Rational>;
type F = CoeffFrac<Rational>;
type P = ZLaurentPoly<Rational>;

fn rat() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=9).prop_map(|(n, d)| Rational::new(BigInt::from(n), BigInt::from(d)))
}

fn laurent_with(max_terms: usize) -> impl Strategy<Value = L> {
    prop::collection::vec((-6i32..=6, rat()), 0..=max_terms).prop_map(L::from_terms)
}

fn laurent() -> impl Strategy<Value = L> {
    laurent_with(4)
}

/// Denominators stay binomial, as in the tables.
fn frac() -> impl Strategy<Value = F> {
    (laurent_with(3), laurent_with(2).prop_filter("nonzero", |l| !l.is_zero())).prop_map(|(n, d)| F::new(n, d).unwrap())
}

fn mono_frac() -> impl Strategy<Value = F> {
    (rat(), -4i32..=4).prop_map(|(c, e)| F::from(L::monomial(c, e)))
}

fn zpoly() -> impl Strategy<Value = P> {
    prop::collection::vec((-5i32..=6, mono_frac()), 0..4).prop_map(P::from_terms)
}

/// Low-degree denominators with constant coefficients.
fn small_den() -> impl Strategy<Value = P> {
    prop::collection::vec((0i32..=3, rat()), 1..4)
        .prop_map(|v| P::from_terms(v.into_iter().map(|(e, c)| (e, F::constant(c)))))
        .prop_filter("nonzero", |p| !p.is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn time_derivative_is_a_derivation(a in laurent(), b in laurent()) {
        prop_assert_eq!((&a * &b).d_dt(), &(&a.d_dt() * &b) + &(&a * &b.d_dt()));
    }

    #[test]
    fn fractions_divide_and_differentiate(a in frac(), b in frac()) {
        prop_assume!(!b.is_zero());
        let q = a.checked_div(&b).unwrap();
        prop_assert_eq!(&q * &b, a.clone());
        // (a/b)' b^2 = a' b - a b'
        let lhs = &(&q.d_dt() * &b) * &b;
        let rhs = &(&a.d_dt() * &b) - &(&a * &b.d_dt());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn z_derivatives_are_derivations(a in zpoly(), b in zpoly()) {
        let ab = &a * &b;
        prop_assert_eq!(ab.d_dx(), &(&a.d_dx() * &b) + &(&a * &b.d_dx()));
        prop_assert_eq!(ab.dt_fixed_x(), &(&a.dt_fixed_x() * &b) + &(&a * &b.dt_fixed_x()));
    }

    #[test]
    fn x_and_t_derivatives_commute(a in zpoly()) {
        prop_assert_eq!(a.d_dx().dt_fixed_x(), a.dt_fixed_x().d_dx());
    }

    #[test]
    fn involution_is_an_involutive_homomorphism(a in zpoly(), b in zpoly(), k in 0u32..3) {
        prop_assert_eq!(a.involution(k).involution(k), a.clone());
        prop_assert_eq!((&a * &b).involution(0), &a.involution(0) * &b.involution(0));
    }

    #[test]
    fn rational_functions_are_canonical(n in zpoly(), d in small_den(), e in small_den()) {
        let r = ZRationalFn::new(n.clone(), d.clone()).unwrap();
        let scaled = ZRationalFn::new(&n * &e, &d * &e).unwrap();
        prop_assert_eq!(&r, &scaled);
        let s = ZRationalFn::from_poly(e.clone());
        prop_assert_eq!((&r * &s).checked_div(&s).unwrap(), r);
    }

    #[test]
    fn series_inverse(c in prop::collection::vec(mono_frac(), 1..6), lead in mono_frac()) {
        prop_assume!(!lead.is_zero());
        let mut coeffs = vec![lead];
        coeffs.extend(c);
        let s = TruncSeries::new(SeriesVar::Z, -1, coeffs, 6);
        let one = s.mul(&s.inv().unwrap());
        for e in one.nonzero_terms() {
            prop_assert_eq!(e.0, 0);
            prop_assert!(e.1.is_one());
        }
    }

    #[test]
    fn binomial_series_exponents_add(c in prop::collection::vec(mono_frac(), 1..5), a in rat(), b in rat()) {
        let u = TruncSeries::new(SeriesVar::Zeta, 1, c, 7);
        let pa = puiseux_binomial(&u, &a).unwrap();
        let pb = puiseux_binomial(&u, &b).unwrap();
        let pab = puiseux_binomial(&u, &(a + b)).unwrap();
        prop_assert_eq!(pa.mul(&pb).sub(&pab).nonzero_terms().count(), 0);
    }
}

#[test]
fn scalar_identities() {
    assert!(F::one().is_one());
    assert!(F::zero().is_zero());
}
