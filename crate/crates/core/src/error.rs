use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("field mismatch: operands live in different fields")]
    ParentMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("singular curve")]
    SingularCurve,
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid trace: {0}")]
    InvalidTrace(String),
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("parse error at line {line}: {msg}")]
    ParseLine { line: usize, msg: String },
    #[error("validation failed: {0}")]
    Validation(String),
    #[error("not an Elkies prime: {0}")]
    NotElkies(String),
    #[error("kernel polynomial does not descend to the base field")]
    KernelNotRational,
    #[error("cycle structure violation: {0}")]
    CycleStructure(String),
    #[error("eigenvalue check failed: {0}")]
    Eigenvalue(String),
    #[error("retry budget exhausted: {0}")]
    Budget(String),
    #[error("modular polynomial unavailable: {0}")]
    MissingModPoly(String),
    #[error("io error: {0}")]
    Io(String),
    #[error("parameter error: {0}")]
    Params(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
