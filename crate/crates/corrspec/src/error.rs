use crate::matrix::ValidationReport;

/// Errors reported by matrix construction, scalar functions and bounds.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    /// Input is not square or has dimension below 2.
    #[error("expected a square matrix with n >= 2, got {rows}x{cols}")]
    Dimension { rows: usize, cols: usize },

    /// A matrix failed one or more correlation-matrix conditions.
    #[error("not a correlation matrix: {0}")]
    Invalid(ValidationReport),

    /// Closed-form constructor parameters produce a negative eigenvalue.
    #[error("parameters produce a negative eigenvalue ({min_eigenvalue:.6e}); not positive semi-definite")]
    NotPsd { min_eigenvalue: f64 },

    /// Scalar argument outside the function domain.
    #[error("{0}")]
    Domain(String),

    /// The characteristic (0, 0) belongs to the identity matrix only and is
    /// excluded from the bound formulas.
    #[error("characteristic (0, 0) is excluded; it identifies the identity matrix")]
    IdentityCharacteristic,

    /// The requested quantity is only defined for positive mean correlation.
    #[error("{0}")]
    Unsupported(String),

    /// A stated precondition does not hold for the given input.
    #[error("{0}")]
    Precondition(String),

    /// A column with zero Euclidean norm cannot be normalised.
    #[error("column {0} has zero norm and cannot be normalised")]
    ZeroColumn(usize),

    /// A constructed matrix failed its own numerical post-check.
    #[error("{0}")]
    SelfCheck(String),

    /// The iterative eigensolver failed to reduce the off-diagonal mass.
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal sum {off_sum:.3e})")]
    NoConvergence { sweeps: usize, off_sum: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
