use thiserror::Error;

/// Errors shared by every module of the library.
///
/// Indices carried by variants are 1-based so they can be surfaced to users
/// unchanged.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("not a nonnegative matrix: entry ({row},{col}) is negative")]
    NotNonnegative { row: usize, col: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("not an eigenvalue: {0}")]
    NotAnEigenvalue(String),

    #[error("not a distinguished eigenvalue: {0}")]
    NotDistinguished(String),

    #[error("exact mode requires rational data: {0}")]
    ExactModeRequired(String),

    #[error("no convergence after {0} iterations")]
    NoConvergence(usize),

    #[error("lattice too large: {size} exceeds cap {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("invalid cone: {0}")]
    InvalidCone(String),

    #[error("vector is not in the cone: {0}")]
    NotInCone(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the command-line front end maps this error to.
    ///
    /// 1 = input/validation error, 2 = unsupported mode (exactness required
    /// but unavailable, or numeric iteration failed), 3 = cap exceeded.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ExactModeRequired(_) | Error::NoConvergence(_) => 2,
            Error::CapExceeded { .. } => 3,
            _ => 1,
        }
    }
}
