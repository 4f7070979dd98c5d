use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: {0}")]
    EmptyInput(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("the zero vector is not a projective point")]
    ZeroPoint,
    #[error("duplicate point at index {0}")]
    DuplicatePoint(usize),
    #[error("degenerate frame: {0}")]
    DegenerateFrame(String),
    #[error("points are not in linearly general position: {0}")]
    NotInLinearGeneralPosition(String),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
    #[error("{0} out of range")]
    OutOfRange(String),
    #[error("enumeration budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error("configuration too large: {0}")]
    TooLarge(String),
    #[error("invalid field `{field}`: {reason}")]
    Parse { field: String, reason: String },
    #[error("invalid generator spec: {0}")]
    InvalidSpec(String),
    #[error("rejection sampling ran out of draws at point {0}")]
    GeneratorExhausted(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
