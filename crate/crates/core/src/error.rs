use thiserror::Error;

/// Errors raised by the numerical kernels.
#[derive(Error, Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The operation approaches a pole of the Gamma function closely enough
    /// that the result would overflow.
    #[error("overflow near pole: {0}")]
    Overflow(String),

    /// A quadrature failed to settle between refinement levels.
    #[error("accuracy error: {what} (error estimate {estimate:.3e})")]
    Accuracy { what: String, estimate: f64 },

    /// An iterative solver did not converge.
    #[error("numeric error: {0}")]
    Numeric(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
