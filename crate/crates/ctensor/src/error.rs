use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("structural precondition violated: {0}")]
    Structure(String),
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("no start converged (best residual {best_residual})")]
    Convergence { best_residual: f64 },
    #[error("eigenvalue relation violated: {0}")]
    Relation(String),
    #[error("internal invariant broken: {0}")]
    Internal(String),
    #[error("degenerate recovery: {0}")]
    DegenerateRecovery(String),
}

pub type Result<T> = std::result::Result<T, Error>;
