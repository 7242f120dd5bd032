use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("variable z{index} exceeds the ambient dimension {dim}")]
    VariableOutOfRange { index: usize, dim: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("empty input: {0}")]
    Empty(&'static str),

    #[error("ideal has infinite codimension")]
    InfiniteCodimension,

    #[error("ill-conditioned numeric step: {0}")]
    IllConditioned(String),

    #[error("space has no symbolic classification; use the numeric lab")]
    NotSymbolic,

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("arc sets Gamma_{k} and C_{l} are not disjoint")]
    NonDisjoint { k: usize, l: usize },

    #[error("precision loss: condition estimate 1e{log10_condition:.1} exceeds the budget of 1e{log10_budget:.1}")]
    PrecisionLoss { log10_condition: f64, log10_budget: f64 },

    #[error("quadrature did not converge: successive estimates {previous:e} and {current:e}")]
    NonConvergent { previous: f64, current: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}
