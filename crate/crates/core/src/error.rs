//! Error type shared across the library.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature exhausted its subdivision budget before reaching
    /// the requested tolerance.
    #[error(
        "quadrature did not converge: error estimate {estimate:.3e} exceeds \
         tolerance {tol:.3e} after {panels} panels"
    )]
    QuadratureNonConvergence {
        estimate: f64,
        tol: f64,
        panels: usize,
    },

    /// The integrand produced a NaN or infinite value.
    #[error("integrand returned a non-finite value at x = {at}")]
    NonFiniteIntegrand { at: f64 },

    /// Sample statistics are undefined, e.g. all observations identical.
    #[error("degenerate sample: {0}")]
    DegenerateSample(String),

    /// Grid abscissae were not strictly increasing.
    #[error("grid abscissae must be strictly increasing")]
    GridOrder,

    /// Equivalence bounds in the wrong order.
    #[error("equivalence bounds must satisfy lower < upper")]
    BoundOrder,
}

pub type Result<T> = std::result::Result<T, Error>;
