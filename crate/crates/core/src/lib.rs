//! Exact topological recursion on the spectral curve of the first Painlevé
//! equation, `x = z^2 - 2 q0`, `y = 2 z^3 - 6 q0 z`, and verification of the
//! resulting quantum curve and tau function.
//!
//! All arithmetic is exact. Time dependence enters only through `q0`, with
//! `t = -6 q0^2` and `dq0/dt = -1/(12 q0)`, so coefficients live in Laurent
//! polynomials (or fractions of them) in `q0` over a rational scalar field.
//! Every module is generic over that scalar; the aliases below fix the
//! arbitrary-precision choice used by the command-line tool.
//!
//! ```
//! use painleve_qcurve::{closed_F, WCache};
//!
//! let cache = WCache::<painleve_qcurve::Rational>::new();
//! let f2 = closed_F(2, &cache).unwrap();
//! assert_eq!(f2.to_string(), "7/207360 * q0^-5");
//! ```

pub mod coeffring;
pub mod curve;
pub mod error;
pub mod mpoly;
pub mod openfe;
pub mod persist;
pub mod reference;
pub mod render;
pub mod report;
pub mod scalar;
pub mod toprec;
mod upoly;
pub mod verify;
pub mod wkb;
pub mod zseries;

pub use error::{Error, Result};
pub use report::{CheckResult, Verdict};
pub use scalar::Scalar;
pub use toprec::{closed_F, compute_W, dFg_dt, ClosedF, StableW, WCache};

/// Arbitrary-precision rationals.
pub type Rational = num_rational::BigRational;

/// `Q[q0, 1/q0]`.
pub type CoeffElem = coeffring::Laurent<Rational>;

/// Fractions of [`CoeffElem`].
pub type CoeffFraction = coeffring::CoeffFrac<Rational>;

/// `CoeffFraction` adjoined `s = sqrt(3 q0)`.
pub type SExtended = coeffring::SExt<Rational>;

pub type ZPoly = zseries::ZLaurentPoly<Rational>;
pub type ZRational = zseries::ZRationalFn<Rational>;
pub type HSeries = zseries::HSeries<Rational>;

pub type W = toprec::StableW<Rational>;
pub type Cache = toprec::WCache<Rational>;
pub type OpenF = openfe::OpenF<Rational>;
pub type PainleveSeries = wkb::PainleveSeries<Rational>;
