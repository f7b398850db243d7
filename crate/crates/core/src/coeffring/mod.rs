//! Coefficient tower: `Q[q0, 1/q0]`, its fraction field, and the quadratic
//! extension by the branch point `s = sqrt(3 q0)`.

mod frac;
mod laurent;
mod sext;

pub use frac::CoeffFrac;
pub use laurent::Laurent;
pub use sext::SExt;

pub(crate) use laurent::forward_owned;

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    type L = Laurent<BigRational>;
    type F = CoeffFrac<BigRational>;
    type S = SExt<BigRational>;

    #[test]
    fn renders_descending() {
        assert_eq!(L::mono(7, 207360, -5).to_string(), "7/207360 * q0^-5");
        let p = &L::mono(1, 1, 2) - &L::mono(3, 2, 0);
        assert_eq!(p.to_string(), "q0^2 - 3/2");
        assert_eq!(L::zero().to_string(), "0");
    }

    #[test]
    fn time_derivative_of_q0() {
        // 6 q0^2 + t = 0
        assert_eq!(L::q0().d_dt(), L::mono(-1, 12, -1));
        assert_eq!((&L::mono(6, 1, 2) + &L::t()).d_dt(), L::zero());
    }

    #[test]
    fn fraction_canonical_form() {
        // (q0^2 - 1)/(q0 - 1) = q0 + 1
        let num = &L::mono(1, 1, 2) - &L::one();
        let den = &L::q0() - &L::one();
        let f = F::new(num, den).unwrap();
        assert_eq!(f.as_elem(), Some(&(&L::q0() + &L::one())));

        // 2/(2 q0^3 + 4 q0^2) -> q0^-2 / (q0 + 2)
        let f = F::new(L::mono(2, 1, 0), &L::mono(2, 1, 3) + &L::mono(4, 1, 2)).unwrap();
        assert_eq!(f.num(), &L::mono(1, 1, -2));
        assert_eq!(f.den(), &(&L::q0() + &L::mono(2, 1, 0)));
    }

    #[test]
    fn fraction_field_laws() {
        let a = F::new(L::q0(), &L::q0() + &L::one()).unwrap();
        let b = F::new(&L::q0() - &L::one(), L::mono(3, 1, 2)).unwrap();
        let back = &(&(&a * &b) / &b) - &a;
        assert!(back.is_zero());
        assert!(F::new(L::one(), L::zero()).is_err());
        assert!(a.checked_div(&F::zero()).is_err());
        let d = &(&a * &a).d_dt() - &(&F::mono(2, 1, 0) * &(&a * &a.d_dt()));
        assert!(d.is_zero());
    }

    #[test]
    fn branch_point_arithmetic() {
        let s = S::s();
        assert_eq!(&s * &s, S::from_frac(F::mono(3, 1, 1)));
        assert_eq!(S::s_pow(5), (&(&s * &s) * &(&(&s * &s) * &s)));
        let x = S::new(F::mono(1, 1, 0), F::mono(2, 1, -1));
        let y = &x * &x.inv().unwrap();
        assert_eq!(y, S::one());
        assert!(S::s_pow(-3).into_even("test").is_err());
    }
}
