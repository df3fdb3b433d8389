use thiserror::Error;

/// Errors reported by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("{0}")]
    InvalidAlgebra(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("algebra mismatch: {0} vs {1}")]
    AlgebraMismatch(String, String),
    #[error("index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(
        "no irrep named {name} in {algebra} with Dynkin digits up to {max_digit}: either no such \
         irrep exists or its label needs a digit above {max_digit} (raise the max digit)"
    )]
    IrrepNotFound {
        name: String,
        algebra: String,
        max_digit: u32,
    },
    #[error("no known embedding {origin} -> {target}")]
    UnknownEmbedding { origin: String, target: String },
    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
