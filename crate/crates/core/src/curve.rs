//! The rationally parametrized spectral curve
//! `x = z^2 - 2 q0`, `y = 2 z^3 - 6 q0 z`, i.e. `y^2 = 4 (x - q0)^2 (x + 2 q0)`.

use num_traits::One;

use crate::coeffring::{CoeffFrac, SExt};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::zseries::{geom_expand, SeriesVar, TruncSeries, ZLaurentPoly, ZRationalFn};

#[derive(Clone, Debug)]
pub struct CurveData<T> {
    pub x_of_z: ZLaurentPoly<T>,
    pub y_of_z: ZLaurentPoly<T>,
    /// Primitive of `y dx` with zero constant term.
    pub phi_of_z: ZLaurentPoly<T>,
    /// The zero `s = sqrt(3 q0)` of `y`, over the double turning point `x = q0`.
    pub s: SExt<T>,
}

impl<T: Scalar> Default for CurveData<T> {
    fn default() -> Self {
        Self::new()
    }
}

impl<T: Scalar> CurveData<T> {
    pub fn new() -> Self {
        let p = ZLaurentPoly::mono;
        Self {
            x_of_z: &p(1, 1, 0, 2) - &p(2, 1, 1, 0),
            y_of_z: &p(2, 1, 0, 3) - &p(6, 1, 1, 1),
            phi_of_z: &p(4, 5, 0, 5) - &p(4, 1, 1, 3),
            s: SExt::s(),
        }
    }

    pub fn dx_dz(&self) -> ZLaurentPoly<T> {
        self.x_of_z.d_dz()
    }

    /// `x - q0 = z^2 - 3 q0`, vanishing at the double turning point.
    pub fn x_minus_q0(&self) -> ZLaurentPoly<T> {
        &self.x_of_z - &ZLaurentPoly::mono(1, 1, 1, 0)
    }

    /// `2 y(z) dx/dz = 8 z^2 (z^2 - 3 q0)`.
    pub fn two_y_dx(&self) -> ZLaurentPoly<T> {
        (&self.y_of_z * &self.dx_dz()).scale(&CoeffFrac::mono(2, 1, 0))
    }

    /// `2 y / (dx/dz) = 2 (z^2 - 3 q0)`.
    pub fn two_y_over_dx(&self) -> ZRationalFn<T> {
        let r = ZRationalFn::new(self.y_of_z.scale(&CoeffFrac::mono(2, 1, 0)), self.dx_dz())
            .expect("dx/dz is not identically zero");
        debug_assert!(r.as_poly().is_some());
        r
    }

    /// `s / (y'(s) x'(s))`, which reduces to `1/(24 q0)`.
    pub fn s_prefactor(&self) -> Result<CoeffFrac<T>> {
        let yp = self.y_of_z.d_dz().eval_s();
        let xp = self.dx_dz().eval_s();
        let v = self.s.checked_div(&(&yp * &xp))?;
        v.into_even("s/(y'(s) x'(s))")
    }
}

/// Expansion of the recursion kernel density
/// `K(z, z1) dz/dz1 = -1/(8 z (z^2 - 3 q0)(z^2 - z1^2))` at `z = 0`.
///
/// The `z1`-dependence is `1/(z^2 - z1^2) = sum_j (-1) z^(2j) z1^(-2j-2)`,
/// so the coefficient of `z1^(-2k)` is `prefactor * geom * (-z^(2k-2))`.
#[derive(Clone, Debug)]
pub struct KernelFactors<T> {
    /// `-1/(8z)`.
    pub prefactor: ZLaurentPoly<T>,
    /// `1/(z^2 - 3 q0)` about `z = 0`.
    pub geom: TruncSeries<T>,
}

impl<T: Scalar> KernelFactors<T> {
    /// Coefficient of `z^(2j) z1^(-2j-2)` in `1/(z^2 - z1^2)`.
    pub fn z1_coeff(&self, _j: u32) -> CoeffFrac<T> {
        -CoeffFrac::one()
    }

    /// `prefactor * geom` as one series in `z`.
    pub fn scalar_part(&self) -> TruncSeries<T> {
        TruncSeries::from_poly(&self.prefactor, SeriesVar::Z, self.geom.trunc() - 1).mul(&self.geom)
    }
}

pub fn kernel_factors<T: Scalar>(order: i32) -> Result<KernelFactors<T>> {
    if order < 2 {
        return Err(Error::InsufficientTruncation { needed: 2, known: order });
    }
    Ok(KernelFactors {
        prefactor: ZLaurentPoly::mono(-1, 8, 0, -1),
        geom: geom_expand(&CoeffFrac::mono(3, 1, 1), order)?,
    })
}

/// Substitute `z -> -z`; a form of degree `d` picks up `(-1)^d` from `d(-z)`.
pub fn involution_pullback<T: Scalar>(w: &ZRationalFn<T>, form_degree: u32) -> ZRationalFn<T> {
    w.involution(form_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = ZLaurentPoly<BigRational>;
    type R = ZRationalFn<BigRational>;

    #[test]
    fn curve_identities() {
        let c = CurveData::<BigRational>::new();
        let x = &c.x_of_z;
        let lhs = &c.y_of_z * &c.y_of_z;
        let xm = c.x_minus_q0();
        let rhs = &(&(&xm * &xm) * &(x + &P::mono(2, 1, 1, 0))).scale(&CoeffFrac::mono(4, 1, 0)) + &P::zero();
        assert_eq!(lhs, rhs);
        assert_eq!(c.phi_of_z.d_dz(), &c.y_of_z * &c.dx_dz());
        assert_eq!(c.y_of_z.involution(0), -&c.y_of_z);
        assert_eq!(c.x_of_z.involution(0), c.x_of_z);
        assert_eq!(c.dx_dz(), P::mono(2, 1, 0, 1));
    }

    #[test]
    fn branch_point_prefactor() {
        let c = CurveData::<BigRational>::new();
        assert_eq!(c.s_prefactor().unwrap(), CoeffFrac::mono(1, 24, -1));
        assert!(c.y_of_z.eval_s().is_zero());
        assert_eq!(c.two_y_dx(), &P::mono(8, 1, 0, 4) - &P::mono(24, 1, 1, 2));
    }

    #[test]
    fn kernel_leading_term() {
        let k = kernel_factors::<BigRational>(4).unwrap();
        let lead = k.scalar_part().coeff(-1).unwrap() * k.z1_coeff(0);
        assert_eq!(lead, CoeffFrac::mono(-1, 24, -1));
        assert!(kernel_factors::<BigRational>(1).is_err());
        // y(z) - y(-z) = 4 z (z^2 - 3 q0)
        let c = CurveData::<BigRational>::new();
        let diff = &c.y_of_z - &c.y_of_z.involution(0);
        assert_eq!(diff, &P::mono(4, 1, 0, 3) - &P::mono(12, 1, 1, 1));
    }

    #[test]
    fn pullbacks() {
        let z3 = R::from_poly(P::mono(1, 1, 0, 3));
        assert_eq!(involution_pullback(&z3, 0), -&z3);
        let inv2 = R::from_poly(P::mono(1, 1, 0, -2));
        assert_eq!(involution_pullback(&inv2, 1), -&inv2);
        let c = CurveData::<BigRational>::new();
        let p0 = R::from_poly((&c.x_minus_q0() * &P::z()).scale(&CoeffFrac::mono(2, 1, 0)));
        assert_eq!(involution_pullback(&p0, 0), -&p0);
    }
}
