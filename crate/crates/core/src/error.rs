use thiserror::Error;

/// Errors produced anywhere in the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("pauli strings differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("invalid pauli label {0:?}")]
    InvalidPauli(char),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    #[error("process matrix is not positive semidefinite (min eigenvalue {0:e})")]
    NotPositive(f64),

    #[error("invalid measurement setting: {0}")]
    InvalidSetting(String),

    #[error("invalid measurement: {0}")]
    InvalidMeasurement(String),

    #[error("invalid outcome distribution: {0}")]
    InvalidDistribution(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("incomplete scheme: design matrix has rank {rank}, {required} required")]
    RankDeficient { rank: usize, required: usize },

    #[error("estimate is not of damping-dephasing form (max-norm residual {residual:e})")]
    ModelMismatch { residual: f64 },

    #[error("relaxation rates are indeterminate: {0}")]
    Indeterminate(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("integer overflow while evaluating {0}")]
    Overflow(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
