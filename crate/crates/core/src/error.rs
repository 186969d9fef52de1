use thiserror::Error;

/// Errors raised by lattice constructions and checks.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("gram matrix is not square (row {row} has {len} entries, expected {rank})")]
    NotSquare { row: usize, len: usize, rank: usize },
    #[error("gram matrix is not symmetric at ({i}, {j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("q must be positive")]
    NonPositiveQ,
    #[error("chi must be positive")]
    NonPositiveChi,
    #[error("exponent {0} is smaller than 2")]
    BadExponent(i64),
    #[error("vector is not a root (square {square}, expected -2)")]
    NotARoot { square: i64 },
    #[error("form is degenerate (radical of rank {radical_rank})")]
    DegenerateForm { radical_rank: usize },
    #[error("matrix does not preserve the form")]
    NotAnIsometry,
    #[error("matrix is not invertible over the integers")]
    NotUnimodular,
    #[error("vector is zero")]
    ZeroVector,
    #[error("skew form is invalid: {0}")]
    InvalidSkewForm(&'static str),
    #[error("generator {index} does not preserve the skew form")]
    NotSymplectic { index: usize },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("vector is isotropic and has no reflection")]
    Isotropic,
    #[error("root finder residual {residual:e} exceeds tolerance {tol:e}")]
    RootFindFailure { residual: f64, tol: f64 },
    #[error("search budget of {limit} elements exceeded")]
    BudgetExceeded { limit: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("integer overflow")]
    Overflow,
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
