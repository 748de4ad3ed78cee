use thiserror::Error;

/// Errors raised by the library. CLI exit codes are derived from
/// [`Error::exit_code`].
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for n={n}")]
    VertexOutOfRange { vertex: u32, n: usize },
    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),
    #[error("face dimension {j} out of range for a simplex of dimension {dim}")]
    FaceDimension { j: isize, dim: isize },
    #[error("simplex {0:?} is not in the complex")]
    MissingSimplex(Vec<u32>),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid probability {value} at index {index}")]
    InvalidProbability { index: usize, value: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("dimension cap {cap} is too small; need at least {needed}")]
    InsufficientCap { cap: usize, needed: usize },
    #[error("infeasible scaling: {0}")]
    InfeasibleScaling(String),
    #[error("rank mismatch between primes: {first} vs {second}")]
    RankMismatch { first: usize, second: usize },
    #[error("numeric failure: {0}")]
    Numeric(String),
    #[error("eigensolver size cap exceeded: {size} > {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// 1 for usage/input problems, 2 for numeric failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::RankMismatch { .. } | Error::Numeric(_) | Error::CapExceeded { .. } => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
