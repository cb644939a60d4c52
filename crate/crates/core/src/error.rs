use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("ring width mismatch: expected {expected}, found {found}")]
    WidthMismatch { expected: usize, found: usize },

    /// An explicit computational budget was exhausted. Never a silent truncation.
    #[error("resource cap exceeded: {what} (limit {limit})")]
    ResourceCap { what: String, limit: u64 },

    #[error("size limit exceeded: {what} is {value}, limit {limit}")]
    SizeLimit {
        what: String,
        value: usize,
        limit: usize,
    },

    #[error("ring is not artinian (Krull dimension {0})")]
    NotArtinian(usize),

    #[error("Hilbert numerator not divisible by (1-t)^{0}")]
    Divisibility(usize),

    #[error("{0} is not invertible in the coefficient field")]
    NotInvertible(String),

    #[error("inconsistent bounds: {0}")]
    Bounds(String),
}

impl Error {
    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
