//! Functions of the uniformizing coordinate `z`: Laurent polynomials,
//! rational functions, truncated expansions at `0` and `infinity`, and
//! series in `hbar` with rational coefficients.

mod hseries;
mod poly;
mod ratfn;
mod trunc;

pub use hseries::{hseries_log_dx, HSeries};
pub use poly::ZLaurentPoly;
pub use ratfn::ZRationalFn;
pub use trunc::{geom_expand, puiseux_binomial, residue_at_zero, SeriesVar, TruncSeries};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::CoeffFrac;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type P = ZLaurentPoly<BigRational>;
    type R = ZRationalFn<BigRational>;
    type F = CoeffFrac<BigRational>;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn geometric_expansion() {
        let s = geom_expand(&F::mono(3, 1, 1), 4).unwrap();
        assert_eq!(s.coeff(0).unwrap(), F::mono(-1, 3, -1));
        assert_eq!(s.coeff(2).unwrap(), F::mono(-1, 9, -2));
        assert!(s.coeff(4).is_err());
        let one = geom_expand(&F::one(), 2).unwrap();
        assert_eq!(one.coeff(0).unwrap(), F::mono(-1, 1, 0));
        assert!(geom_expand(&F::zero(), 4).is_err());
    }

    #[test]
    fn residues() {
        let p = &(&P::mono(1, 1, 0, -2) + &P::mono(3, 1, 0, -1)) + &P::mono(5, 1, 0, 0);
        let s = TruncSeries::from_poly(&p, SeriesVar::Z, 1);
        assert_eq!(residue_at_zero(&s).unwrap(), F::mono(3, 1, 0));
        let short = TruncSeries::from_poly(&p, SeriesVar::Z, -1);
        assert!(residue_at_zero(&short).is_err());
        let even = TruncSeries::from_poly(&(&P::mono(1, 1, 0, -4) + &P::mono(2, 1, 0, 2)), SeriesVar::Z, 6);
        assert!(residue_at_zero(&even).unwrap().is_zero());
    }

    #[test]
    fn binomial_series() {
        let u = TruncSeries::new(SeriesVar::Zeta, 2, vec![F::mono(-2, 1, 1)], 6);
        let b = puiseux_binomial(&u, &r(1, 2)).unwrap();
        assert_eq!(b.coeff(0).unwrap(), F::one());
        assert_eq!(b.coeff(2).unwrap(), F::mono(-1, 1, 1));
        assert_eq!(b.coeff(4).unwrap(), F::mono(-1, 2, 2));
        assert!(b.coeff(6).is_err());
        let id = puiseux_binomial(&u, &r(1, 1)).unwrap();
        assert_eq!(id, TruncSeries::new(SeriesVar::Zeta, 0, vec![F::one()], 6).add(&u));
        let c = puiseux_binomial(&u, &r(0, 1)).unwrap();
        assert!(c.coeff(2).unwrap().is_zero() && c.coeff(0).unwrap().is_one());
    }

    #[test]
    fn rational_canonical_form() {
        // (z^2 - 3q0)(z + 1) / ((z^2 - 3q0) z^3)
        let a = &P::mono(1, 1, 0, 2) - &P::mono(3, 1, 1, 0);
        let b = &P::z() + &P::one();
        let f = R::new(&a * &b, a.shift(3)).unwrap();
        assert_eq!(f.as_poly(), Some(&(&P::mono(1, 1, 0, -2) + &P::mono(1, 1, 0, -3))));
        let g = R::new(P::one(), &a.scale(&F::mono(2, 1, 0)) * &P::z()).unwrap();
        assert_eq!(g.den(), &a.shift(0));
        assert_eq!(g.num(), &P::mono(1, 2, 0, -1));
        let back = &(&g * &R::from_poly(a.clone())) - &R::from_poly(P::mono(1, 2, 0, -1));
        assert!(back.is_zero());
    }

    #[test]
    fn expansion_at_infinity() {
        // 1/(z^2 - 3q0) = zeta^2 + 3q0 zeta^4 + ...
        let a = &P::mono(1, 1, 0, 2) - &P::mono(3, 1, 1, 0);
        let f = R::new(P::one(), a).unwrap();
        let s = f.expand_at_infinity(6).unwrap();
        assert_eq!(s.coeff(2).unwrap(), F::one());
        assert_eq!(s.coeff(4).unwrap(), F::mono(3, 1, 1));
        assert!(s.coeff(3).unwrap().is_zero());
    }

    #[test]
    fn time_derivative_at_fixed_x() {
        // z^2 = x + 2 q0, so d/dt z^2 at fixed x is 2 dq0/dt
        let z2 = P::mono(1, 1, 0, 2);
        assert_eq!(z2.dt_fixed_x(), P::mono(-1, 6, -1, 0));
        // x = z^2 - 2q0 has vanishing t-derivative
        let x = &z2 - &P::mono(2, 1, 1, 0);
        assert!(x.dt_fixed_x().is_zero());
    }

    #[test]
    fn log_derivative_of_pure_z() {
        let h = HSeries::term(R::from_poly(P::z()), 0, 3);
        let d = hseries_log_dx(&h).unwrap();
        assert_eq!(d.coeff(0).unwrap(), R::from_poly(P::mono(-1, 4, 0, -2)));
        assert!(d.coeff(1).unwrap().is_zero());
        let bad = HSeries::term(R::one(), 0, 3);
        assert!(hseries_log_dx(&bad).is_err());
    }

    #[test]
    fn renders_monomials() {
        let w = &P::mono(1, 288, -2, -2) + &P::mono(1, 96, -1, -4);
        assert_eq!(w.to_string(), "1/288 * q0^-2 * z^-2 + 1/96 * q0^-1 * z^-4");
    }
}
