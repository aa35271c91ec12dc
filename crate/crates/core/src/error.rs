use thiserror::Error;

/// Errors produced by the Gaussian and Fock-space routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not symmetric (max asymmetry {0:.3e})")]
    NotSymmetric(f64),

    #[error("covariance matrix is not physical (smallest symplectic eigenvalue {0})")]
    Unphysical(f64),

    #[error("matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("operator is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("operator has negative spectrum (smallest eigenvalue {0:.3e})")]
    NegativeSpectrum(f64),

    #[error("truncated Fock space did not converge (tail mass {tail_mass:.3e} > {tolerance:.1e})")]
    Truncation { tail_mass: f64, tolerance: f64 },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("no convergence after {iterations} iterations")]
    NoConvergence { iterations: usize },

    #[error("no root found: {0}")]
    NoRoot(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
