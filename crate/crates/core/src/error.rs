use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("polynomial is not divisible by the given divisor")]
    NotDivisible,

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("syntax error at position {pos}: {message}")]
    Syntax { pos: usize, message: String },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("not a K[H]-multiple of the Newton derivation: {0}")]
    NotAMultiple(String),

    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),

    #[error("degenerate recurrence: division by zero at l = {l}")]
    DegenerateRecurrence { l: u32 },

    #[error("determinant vanishes along the integration path near ({x}, {y})")]
    SingularDelta { x: f64, y: f64 },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn mismatch(msg: impl Into<String>) -> Self {
        Error::RingMismatch(msg.into())
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }
}
