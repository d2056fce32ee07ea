use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the transform evaluators.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The evaluation point lies where the transform is not defined
    /// (on the integration contour, at a branch point, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A contract on the inputs (exponents, sizes, tolerances) is violated.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// A sampled function value was NaN or infinite.
    #[error("non-finite sample at x = {at:e}")]
    NonFinite { at: f64 },

    /// Adaptive quadrature ran out of subdivisions before meeting the tolerance.
    #[error("quadrature did not converge: estimate {estimate}, error bound {error_bound:e}")]
    Convergence { estimate: Complex64, error_bound: f64 },

    /// Hilbert evaluation requested on a breakpoint of a piecewise expansion.
    #[error("x = {x} lies on breakpoint {breakpoint} of the piecewise expansion")]
    Breakpoint { x: f64, breakpoint: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn precondition(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}
