use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("apex degree {degree} exceeds vertex count {n}")]
    DegreeTooLarge { degree: usize, n: usize },
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) has an endpoint outside [1, {n}]")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("edge ({0}, {1}) is not normalized (need u < v)")]
    NonNormalizedEdge(usize, usize),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("invalid argument: {0}")]
    Invalid(String),
    #[error("unsupported forbidden set: {0}")]
    UnsupportedSet(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("node budget of {0} exceeded")]
    BudgetExceeded(u64),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not applicable: {0}")]
    NotApplicable(String),
    #[error("word has {found} apex letters, expected {expected}")]
    WordLengthMismatch { expected: usize, found: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
