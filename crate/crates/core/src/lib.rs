//! Exact non-archimedean value distribution on rational fixtures.
//!
//! Entire functions are modelled by polynomials (or truncated power series)
//! with rational coefficients, measured with the `p`-adic absolute value.
//! Every Nevanlinna function is then an exact piecewise-linear function of
//! the log-radius `ρ = log_p r`, so identities such as the First Main Theorem
//! can be checked with zero tolerance and second-main-theorem inequalities can
//! be decided by comparing asymptotic slopes.
//!
//! Layout:
//!
//! * [`field`]: `p`-adic valuations on `Q`.
//! * [`plfun`]: exact piecewise-linear functions of `ρ`.
//! * [`series`]: Gauss norms, Newton polygons, zero counting.
//! * [`poly`], [`upoly`], [`linalg`]: polynomial and linear-algebra kernels.
//! * [`geometry`]: hypersurfaces, intersections, tangents, Noether solver.
//! * [`nevanlinna`]: order, proximity and counting functions of curves.
//! * [`smt`]: verdict engines for the second-main-theorem family.

pub mod error;
pub mod field;
pub mod geometry;
pub mod linalg;
pub mod literal;
pub mod nevanlinna;
pub mod plfun;
pub mod poly;
pub mod series;
pub mod smt;
pub mod upoly;

pub use error::{Error, Result};
pub use field::{log_abs, valuation, LogRadius, PAdicRational, Prime, Valuation};
pub use geometry::{Hypersurface, NoetherDecomposition, ProjPoint};
pub use nevanlinna::{NevanlinnaProfile, ProjectiveCurve};
pub use plfun::PLFunction;
pub use poly::Poly;
pub use series::{NewtonPolygon, TruncatedSeries};
pub use smt::{SmtConfig, SmtReport, TheoremId};

/// Arbitrary-precision rational, the scalar type used throughout.
pub type Rational = num_rational::BigRational;

/// Shorthand for building a rational from an integer.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

/// Shorthand for building `num/den`.
///
/// Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num.into(), den.into())
}
