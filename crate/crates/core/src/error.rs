use thiserror::Error;

/// Errors reported by the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("entry ({row},{col}) breaks skew-symmetry: {value} vs {transposed}")]
    NotSkewSymmetric {
        row: usize,
        col: usize,
        value: f64,
        transposed: f64,
    },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("hbar must be nonzero")]
    ZeroHbar,

    #[error("window with {size} basis vectors exceeds the cap of {cap}")]
    WindowTooLarge { size: usize, cap: usize },

    #[error(
        "power iteration stopped after {iterations} iterations without \
         meeting the tolerance (best estimate {best:e})"
    )]
    NormNonConvergence { best: f64, iterations: usize },

    #[error("algebra context mismatch: operands carry different (theta, hbar)")]
    ContextMismatch,

    #[error("element is not even: flip deviation {deviation:e}")]
    NotEven { deviation: f64 },

    #[error("invalid axis pair (j={j}, k={k}) for dimension {n}")]
    InvalidAxisPair { j: usize, k: usize, n: usize },

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
