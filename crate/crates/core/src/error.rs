use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(&'static str),

    #[error("length mismatch: expected {expected}, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("matrix is rank deficient (rank {rank} of {rows} rows)")]
    RankDeficient { rank: usize, rows: usize },

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("resource limit exceeded: {what} needs {required}, limit is {limit}")]
    Resource { what: &'static str, required: String, limit: String },

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),

    #[error("malformed bitstream: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameters(msg.into())
    }
}
