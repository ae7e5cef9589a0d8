use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("endpoint {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: usize, n: usize },
    #[error("repeated edge {0} {1}")]
    Duplicate(usize, usize),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{what} = {value} is not divisible by {by}")]
    Divisibility {
        what: &'static str,
        value: usize,
        by: usize,
    },
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("packing rejected: {0}")]
    Packing(#[from] crate::packing::PackingViolation),
    #[error("not a path: {0}")]
    Path(#[from] crate::absorbing::PathViolation),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
