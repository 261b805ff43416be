use thiserror::Error;

/// Errors raised by validation, spectral calculus and file handling.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not Hermitian: max asymmetry {asymmetry:.3e} exceeds {tolerance:.3e}")]
    NotHermitian { asymmetry: f64, tolerance: f64 },

    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:.3e} below {tolerance:.3e}")]
    NotPositiveSemidefinite { eigenvalue: f64, tolerance: f64 },

    #[error("matrix is not positive definite: min eigenvalue {eigenvalue:.3e} not above {threshold:.3e}")]
    NotPositiveDefinite { eigenvalue: f64, threshold: f64 },

    #[error("trace is {trace:.15} (deviation {deviation:.3e} from 1 exceeds {tolerance:.3e})")]
    TraceNotOne {
        trace: f64,
        deviation: f64,
        tolerance: f64,
    },

    #[error("Kraus operators are not complete: residual {residual:.3e} exceeds {tolerance:.3e}")]
    IncompleteKraus { residual: f64, tolerance: f64 },

    #[error("weights must be non-negative and sum to 1 (sum {sum:.15})")]
    InvalidWeights { sum: f64 },

    #[error("parameter out of domain: {0}")]
    Domain(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors describing an invalid matrix or state, as opposed to
    /// bad parameters or unreadable input.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::NotSquare { .. }
                | Error::DimensionMismatch { .. }
                | Error::NotHermitian { .. }
                | Error::NotPositiveSemidefinite { .. }
                | Error::NotPositiveDefinite { .. }
                | Error::TraceNotOne { .. }
                | Error::IncompleteKraus { .. }
                | Error::InvalidWeights { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
