use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("division by the zero function")]
    DivisionByZero,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("sample space exhausted: {0}")]
    Exhausted(String),
    #[error("group closure exceeded bound {0}")]
    ClosureBound(usize),
    #[error("root finding did not converge after {iterations} iterations (max correction {max_step})")]
    NoConvergence { iterations: usize, max_step: String },
    #[error("branch ambiguity: {0}")]
    Branch(String),
    #[error("unknown {kind}: {name}")]
    Unknown { kind: &'static str, name: String },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
