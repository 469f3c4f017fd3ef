use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("parse error in {source_name} line {line}: {message}")]
    Parse {
        source_name: String,
        line: usize,
        message: String,
    },

    #[error("variable index {index} outside an order of {len} variables")]
    VariableOutOfRange { index: usize, len: usize },

    #[error("containment violated: {0}")]
    NotContained(String),

    #[error(
        "cochain does not lie in the span of the basis of C^{degree} (weight {weight}): {detail}"
    )]
    NotInSpan {
        degree: usize,
        weight: i64,
        detail: String,
    },

    #[error("variant mismatch: {0}")]
    Variant(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("fixture {file}: {message}")]
    Fixture { file: String, message: String },

    #[error("mismatch in {what}: expected {expected}, got {got}")]
    Mismatch {
        what: String,
        expected: String,
        got: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
