use thiserror::Error;

use crate::Rational;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("series is identically zero")]
    ZeroSeries,

    #[error("rho = {rho} is beyond the reliability bound {bound} of a truncated series")]
    Reliability { rho: Box<Rational>, bound: Box<Rational> },

    #[error("arity mismatch: expected {expected} components, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("maximum of an empty list of functions")]
    EmptyMax,

    #[error("inverted interval [{lo}, {hi}]")]
    InvertedInterval { lo: Box<Rational>, hi: Box<Rational> },

    #[error("malformed piecewise-linear data: {0}")]
    MalformedPL(String),

    #[error("parse error at column {column}: {message}")]
    Parse { column: usize, message: String },

    #[error("polynomial is not homogeneous: term `{term}` has degree {found}, expected {expected}")]
    NotHomogeneous {
        term: String,
        found: u32,
        expected: u32,
    },

    #[error("invalid hypersurface: {0}")]
    InvalidHypersurface(String),

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("image of the curve is contained in {divisor}: {note}")]
    Containment { divisor: String, note: String },

    #[error("mixed ambient dimensions: {0} and {1}")]
    MixedAmbient(usize, usize),

    #[error("point {point} does not lie on {divisor}")]
    PointNotOnDivisor { point: String, divisor: String },

    #[error("{divisor} is singular at {point}")]
    SingularPoint { point: String, divisor: String },

    #[error("intersection is not zero-dimensional")]
    NotZeroDimensional,

    #[error("unsupported fixture: {0}")]
    Unsupported(String),

    #[error("no Noether decomposition exists: {0}")]
    NoDecomposition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
