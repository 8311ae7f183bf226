use thiserror::Error;

/// Errors raised by the numerical kernels and the PT/CPT machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimMismatch { expected: usize, got: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("matrix is not Hermitian (max deviation {deviation:.3e})")]
    NotHermitian { deviation: f64 },

    #[error("matrix is not positive definite (smallest eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveDefinite { min_eigenvalue: f64 },

    #[error("Jacobi eigensolver did not converge after {sweeps} sweeps")]
    NoConvergence { sweeps: usize },

    #[error("matrix exponential overflow (norm {norm:.3e})")]
    Overflow { norm: f64 },

    #[error("vector norm {norm:.3e} is too small to normalize")]
    ZeroVector { norm: f64 },

    #[error("basis is not orthonormal under the metric (deviation {deviation:.3e})")]
    BasisNotOrthonormal { deviation: f64 },

    #[error("invalid parameter: {0}")]
    InvalidParams(String),

    #[error("PT symmetry is broken: st - r^2 sin^2(theta) = {discriminant:.3e}")]
    BrokenPTPhase { discriminant: f64 },

    #[error("closed-form C operator requires s = t (got s = {s}, t = {t})")]
    UnsupportedAsymmetric { s: f64, t: f64 },

    #[error("CPT metric is not positive definite (|sin alpha| = {sin_alpha})")]
    NonPositiveMetric { sin_alpha: f64 },

    #[error("unphysical state: {0}")]
    UnphysicalState(String),

    #[error("amplitudes are not normalized (sum of squares {norm_sq})")]
    NotNormalized { norm_sq: f64 },

    #[error("expected {expected} Schmidt terms, found {got}")]
    RankMismatch { expected: usize, got: usize },

    #[error("value {0} is outside the domain of the function")]
    DomainError(f64),

    #[error("optimizer exceeded its evaluation budget (best so far {best_value})")]
    OptimizerBudgetExceeded { best_value: f64, evaluations: usize },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Stable variant name for machine-readable error records.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimMismatch { .. } => "DimMismatch",
            Error::NotSquare { .. } => "NotSquare",
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NotPositiveDefinite { .. } => "NotPositiveDefinite",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::Overflow { .. } => "Overflow",
            Error::ZeroVector { .. } => "ZeroVector",
            Error::BasisNotOrthonormal { .. } => "BasisNotOrthonormal",
            Error::InvalidParams(_) => "InvalidParams",
            Error::BrokenPTPhase { .. } => "BrokenPTPhase",
            Error::UnsupportedAsymmetric { .. } => "UnsupportedAsymmetric",
            Error::NonPositiveMetric { .. } => "NonPositiveMetric",
            Error::UnphysicalState(_) => "UnphysicalState",
            Error::NotNormalized { .. } => "NotNormalized",
            Error::RankMismatch { .. } => "RankMismatch",
            Error::DomainError(_) => "DomainError",
            Error::OptimizerBudgetExceeded { .. } => "OptimizerBudgetExceeded",
        }
    }

    /// Whether the failure arose inside a computation on valid input, as
    /// opposed to the input itself being malformed.
    pub fn is_numerical(&self) -> bool {
        !matches!(
            self,
            Error::DimMismatch { .. }
                | Error::NotSquare { .. }
                | Error::InvalidParams(_)
                | Error::UnsupportedAsymmetric { .. }
                | Error::NotNormalized { .. }
                | Error::ZeroVector { .. }
        )
    }
}
