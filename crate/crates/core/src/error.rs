use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected}, got {got} ({context})")]
    ArityMismatch {
        expected: usize,
        got: usize,
        context: String,
    },

    #[error("permutation size {size} does not match word length {len}")]
    PermutationSize { size: usize, len: usize },

    #[error("invalid permutation: image table is not a bijection of 1..={size}")]
    NotBijective { size: usize },

    #[error("move not applicable: {0}")]
    MoveInapplicable(String),

    #[error("unknown generator in {context}: {name}")]
    UnknownGenerator { context: String, name: String },

    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("not a group: {law} fails at indices {indices:?}")]
    NotAGroup { law: String, indices: Vec<usize> },

    #[error("presentation is not closed: arity {n} -> {m}")]
    NotClosed { n: usize, m: usize },

    #[error("{0}")]
    InvalidArgument(String),

    #[error("matrix dimension overflow: {0}^{1} does not fit in u64")]
    DimensionOverflow(u64, u32),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
