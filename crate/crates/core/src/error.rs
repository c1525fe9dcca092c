use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("operation requires a group base")]
    NotAGroup,
    #[error("invalid element: {0}")]
    InvalidElement(String),
    #[error("expected an idempotent")]
    NotIdempotent,
    #[error("the empty word has no tau generator")]
    EmptyWord,
    #[error("search budget of {budget} exceeded")]
    Budget { budget: usize },
    #[error("malformed json: {0}")]
    Json(String),
}
