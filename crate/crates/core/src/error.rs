use alloc::string::String;

/// Errors reported by the decomposition, recognition and isomorphism routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("misuse: {0}")]
    Misuse(String),
    #[error("precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("malformed expression: {0}")]
    MalformedExpression(String),
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("graph is not NLC-2")]
    NotNlc2,
    #[error("oracle budget exceeded: {0}")]
    OverBudget(String),
}

pub type Result<T> = core::result::Result<T, Error>;

macro_rules! misuse {
    ($($arg:tt)*) => { $crate::error::Error::Misuse(alloc::format!($($arg)*)) };
}
macro_rules! malformed {
    ($($arg:tt)*) => { $crate::error::Error::MalformedInput(alloc::format!($($arg)*)) };
}
pub(crate) use malformed;
pub(crate) use misuse;
