use thiserror::Error;

/// Errors raised by the walk engine.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum WalkError {
    #[error("n_sites must be a power of two >= 2, got {0}")]
    NotPowerOfTwo(usize),
    #[error("site index {index} out of range for {n_sites} sites")]
    SiteOutOfRange { index: usize, n_sites: usize },
    #[error("spin vector must be nonzero")]
    ZeroSpin,
    #[error("spin vector not normalized: |c_R|^2 + |c_L|^2 = {0}")]
    SpinNotNormalized(f64),
    #[error("gaussian sigma must be positive and finite, got {0}")]
    InvalidSigma(f64),
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dt must be positive and finite, got {0}")]
    InvalidDt(f64),
    #[error("mass must be finite, got {0}")]
    InvalidMass(f64),
    #[error("matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("{n_sites} sites is too large for a dense matrix (limit {limit})")]
    TooLarge { n_sites: usize, limit: usize },
    #[error("series too short: {len} samples after skipping transient, need at least {min}")]
    SeriesTooShort { len: usize, min: usize },
    #[error("invalid gate: {0}")]
    InvalidGate(String),
    #[error("qasm parse error on line {line}: {msg}")]
    QasmParse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, WalkError>;
