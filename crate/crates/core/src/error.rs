use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// The requested (ensemble, stratum, method) combination is not supported.
    #[error("unsupported request: {0}")]
    Unsupported(String),
    /// Adaptive quadrature exhausted its evaluation budget.
    #[error("quadrature did not converge: {0}")]
    Convergence(String),
    /// A sampler could not produce spectra with the required distribution.
    #[error("sampler failure: {0}")]
    Sampler(String),
    /// A ratio was requested with a denominator too small to represent.
    #[error("overflow: {0}")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
