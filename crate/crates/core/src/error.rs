use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("capacity exceeded: {what} needs {needed:.2} bits, limit is {limit} bits")]
    Capacity {
        what: String,
        needed: f64,
        limit: f64,
    },

    #[error("basis mismatch: expected `{expected}`, found `{found}`")]
    BasisMismatch { expected: String, found: String },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("unsupported representation: l = {l} ({reason})")]
    UnsupportedRepresentation { l: u32, reason: &'static str },

    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:e})")]
    NonConvergence { iterations: usize, residual: f64 },

    #[error("degenerate unperturbed ground level: indices {first} and {second} share energy {energy}")]
    Degenerate {
        first: usize,
        second: usize,
        energy: f64,
    },

    #[error("config error: {0}")]
    Config(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Stable short identifier used in the CLI's machine-readable error line.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::Capacity { .. } => "capacity",
            Error::BasisMismatch { .. } => "basis_mismatch",
            Error::DimensionMismatch { .. } => "dimension_mismatch",
            Error::UnsupportedRepresentation { .. } => "unsupported_representation",
            Error::NonConvergence { .. } => "non_convergence",
            Error::Degenerate { .. } => "degenerate",
            Error::Config(_) => "config",
            Error::Parse(_) => "parse",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
