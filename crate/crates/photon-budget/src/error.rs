use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, Error)]
pub enum Error {
    /// An argument fell outside an operation's domain.
    #[error("domain error: {0}")]
    Domain(String),
    /// A matrix argument was not Hermitian within tolerance.
    #[error("matrix is not Hermitian: max asymmetry {0:.3e}")]
    NotHermitian(f64),
    /// A matrix argument was not a density operator.
    #[error("not a density operator: {0}")]
    NotDensity(String),
    /// The eigensolver failed to produce a decomposition.
    #[error("eigensolver failed: {0}")]
    Eigensolver(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
