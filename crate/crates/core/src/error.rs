//! Error type shared across the crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid size {0} must be a power of two >= 8")]
    InvalidGridSize(usize),
    #[error("period length must be positive and finite, got {0}")]
    InvalidPeriod(f64),
    #[error("non-finite sample at index {index}: {value}")]
    NonFiniteSample { index: usize, value: f64 },
    #[error("non-finite value produced by {term}")]
    NonFiniteTerm { term: &'static str },
    #[error("fields live on different grids ({0} vs {1} points)")]
    GridMismatch(usize, usize),
    #[error("block index {j} outside [-1, {jmax}]")]
    BlockOutOfRange { j: i32, jmax: i32 },
    #[error("{what} requires {requirement}, got {value}")]
    ParamOutOfRange {
        what: &'static str,
        requirement: &'static str,
        value: f64,
    },
    #[error("quadrature refinement did not converge: {coarse} vs {fine}")]
    QuadratureNoConverge { coarse: f64, fine: f64 },
    #[error("config line {line}: {msg}")]
    Config { line: usize, msg: String },
    #[error("snapshot file: {0}")]
    Snapshot(String),
    #[error("time {t} outside stored range [{lo}, {hi}]")]
    TimeOutOfRange { t: f64, lo: f64, hi: f64 },
    #[error("time stamps of the inputs do not match")]
    StampMismatch,
    #[error("unknown preset '{0}'; available: {1}")]
    UnknownPreset(String, String),
    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("report directory: {0}")]
    Report(String),
}

pub type Result<T> = std::result::Result<T, Error>;
