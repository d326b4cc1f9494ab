use thiserror::Error;

/// Errors surfaced by the library. Capacity violations are hard errors by
/// design: every quantity computed here is exact, and a sampled or truncated
/// answer would be a correctness bug.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("capacity exceeded: {what} = {requested} exceeds {cap_name} = {limit}")]
    Capacity {
        what: String,
        requested: u128,
        cap_name: &'static str,
        limit: u128,
    },

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("minimum distance undefined: code has a single word")]
    MinDistanceUndefined,

    #[error("minimal degree undefined: group is trivial")]
    MinimalDegreeUndefined,

    #[error("the complete code has no neighbours")]
    NoNeighbours,

    #[error("element set is not closed under composition")]
    NotAGroup,

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
