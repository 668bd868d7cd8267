use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EnsembleError {
    #[error("alpha parameters must lie in (0, 1); got {0}")]
    AlphaOutOfRange(f64),
    #[error("ensemble needs at least one level")]
    EmptyEnsemble,
    #[error("expected {expected} entries, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("weights must be non-increasing and non-negative: {0:?}")]
    InvalidWeights(Vec<i64>),
    #[error("levels must be strictly decreasing and non-negative: {0:?}")]
    InvalidLevels(Vec<i64>),
    #[error("alphas {i} and {j} are closer than {threshold:e}; use the equal-alpha or series route")]
    DegenerateAlphas { i: usize, j: usize, threshold: f64 },
    #[error("argument {value} outside the domain: {reason}")]
    Domain { value: f64, reason: String },
    #[error("enumeration would visit about {configs:.3e} configurations (budget {budget:.3e})")]
    BudgetExceeded { configs: f64, budget: f64 },
    #[error("root finder did not converge at sigma={sigma}: last iterate {re}+{im}i, residual {residual:e}")]
    NonConvergence { sigma: f64, re: f64, im: f64, residual: f64 },
    #[error("calibration failed: {0}")]
    Calibration(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, EnsembleError>;
