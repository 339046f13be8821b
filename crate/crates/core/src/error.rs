use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GarsideError {
    #[error("value belongs to a different Garside context")]
    ContextMismatch,

    #[error("atom index {index} out of range 1..={rank}")]
    AtomOutOfRange { index: usize, rank: usize },

    #[error("invalid Garside structure: {0}")]
    InvalidStructure(String),

    #[error("braid group needs at least 2 strands and at most {max}, got {n}")]
    InvalidStrandCount { n: usize, max: usize },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },

    #[error("generator {generator} out of range for {strands} strands")]
    GeneratorOutOfRange { generator: i64, strands: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),

    #[error("simple elements cannot be enumerated: {0}")]
    NotEnumerable(String),
}

pub type Result<T, E = GarsideError> = std::result::Result<T, E>;
