use thiserror::Error;

/// Errors produced by the analysis toolkit.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph6 parse error: {0}")]
    Graph6(String),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("qubit count mismatch: {left} vs {right}")]
    QubitMismatch { left: usize, right: usize },
    #[error("invalid operator: {0}")]
    InvalidOperator(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("size budget exceeded: {0}")]
    Budget(String),
    #[error("exact verification failed: {0}")]
    Verification(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
    #[error("configuration error: {0}")]
    Config(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("checkpoint corrupted at line {line}: {msg}")]
    Checkpoint { line: usize, msg: String },
    #[error("worker panicked on {0}")]
    WorkerPanic(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
