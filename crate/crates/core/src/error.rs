use thiserror::Error;

pub type Result<T> = std::result::Result<T, GeomError>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("not full-dimensional")]
    NotFullDimensional,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {dim} unsupported for {what}")]
    UnsupportedDimension { dim: usize, what: &'static str },

    #[error("unbounded")]
    Unbounded,

    #[error("empty")]
    Empty,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// An integer/parameter precondition of a construction is violated
    /// (e.g. `n < 2d` for the width and diameter bounds).
    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("balanced direction not found (non-reduced degenerate body)")]
    BalancedDirectionNotFound,

    #[error("3D completion unsupported")]
    CompletionUnsupported,

    #[error("completion did not converge after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("not admissible: {0}")]
    NotAdmissible(String),

    #[error("linear program failed: {0}")]
    Lp(String),
}

impl GeomError {
    /// True for errors caused by the caller's input rather than by a numeric
    /// failure inside a construction.
    pub fn is_precondition(&self) -> bool {
        !matches!(
            self,
            GeomError::NoConvergence { .. }
                | GeomError::Lp(_)
                | GeomError::BalancedDirectionNotFound
        )
    }
}
