use thiserror::Error;

/// Errors reported by the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("Bessel order {0} is below -1/2")]
    OrderOutOfRange(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("derivative is not integrable on ({a}, {b}): undeclared singularity")]
    NonIntegrable { a: f64, b: f64 },

    #[error("t^(2a+1) f(t) is not integrable at the origin (origin exponent {q}, order {alpha})")]
    NonIntegrableOrigin { q: f64, alpha: f64 },

    #[error("not GM on grid: variation {lhs} > 0 at x = {x} while the window integral vanishes")]
    NotGmOnGrid { x: f64, lhs: f64 },

    #[error("unbounded: {0}")]
    Unbounded(String),

    #[error("divergent: {0}")]
    Divergent(String),

    #[error("tolerance {tol:e} not reached (estimate {estimate}, error {error:e})")]
    ToleranceNotReached { tol: f64, estimate: f64, error: f64 },

    #[error("weighted Bessel envelope has not stabilized by x_max = {x_max}")]
    NotStabilized { x_max: f64 },

    #[error("n = {n} is a bad number")]
    BadNumber { n: i32 },

    #[error("A_n = 0 for n = {n}: the dyadic lower bound is vacuous")]
    Vacuous { n: i32 },

    #[error("sign-interval witness not found at grid resolution for n = {n}")]
    WitnessNotFound { n: i32 },

    #[error("unknown gallery entry `{0}`")]
    UnknownEntry(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
