use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("input contains a non-finite entry")]
    NonFinite,
    #[error("zero vector: every amplitude is below {threshold:e} in modulus")]
    ZeroVector { threshold: f64 },
    #[error("state is not normalized: norm {norm} deviates from 1")]
    NotNormalized { norm: f64 },
    #[error("matrix is not Hermitian: entry ({row}, {col}) deviates by {deviation:e}")]
    NotHermitian {
        row: usize,
        col: usize,
        deviation: f64,
    },
    #[error("trace is {trace}, expected 1")]
    TraceNotOne { trace: f64 },
    #[error("matrix is not positive semidefinite: eigenvalue {eigenvalue:e}")]
    NotPositive { eigenvalue: f64 },
    #[error("{routine} did not converge within {budget} sweeps")]
    ConvergenceFailure {
        routine: &'static str,
        budget: usize,
    },
    #[error("expected a rank-1 A-matrix set, got rank {rank}")]
    WrongRank { rank: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("parse error: {0}")]
    Parse(String),
}
