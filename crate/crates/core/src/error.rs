use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("vocabulary error: {0}")]
    Vocabulary(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown operator `{op}` at position {pos}")]
    UnknownOperator { pos: usize, op: String },
    #[error("format error on line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("input error: {0}")]
    Input(String),
    #[error("state budget of {budget} exceeded while building {what}")]
    Resource { budget: usize, what: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;
