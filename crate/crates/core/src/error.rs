use thiserror::Error;

/// Everything that can go wrong inside the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("operands belong to different fields")]
    FieldMismatch,

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("{name} = {value} is not prime")]
    NotPrime { name: &'static str, value: u64 },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("{op}: precondition violated: {reason}")]
    Precondition { op: &'static str, reason: String },

    #[error("unsupported parameters: {0}")]
    Unsupported(String),

    #[error("internal invariant violated: {0}")]
    InvariantViolation(String),

    #[error("{what} = {value} exceeds the limit {limit}")]
    LimitExceeded {
        what: &'static str,
        value: String,
        limit: String,
    },

    #[error("exhaustive search needs {required} codewords, budget is {budget}")]
    BudgetExceeded { required: String, budget: u64 },

    #[error("malformed document: {0}")]
    Document(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn precondition(op: &'static str, reason: impl Into<String>) -> Self {
        Error::Precondition {
            op,
            reason: reason.into(),
        }
    }
}
