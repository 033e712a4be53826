use thiserror::Error;

/// Errors shared by every evaluation path in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Equal dimensions whose second coordinates are `+inf` and `-inf`.
    #[error("undefined sum: {lhs} + {rhs}")]
    UndefinedSum { lhs: String, rhs: String },

    #[error("supremum of an empty list")]
    EmptyList,

    #[error("unknown set: {0}")]
    UnknownSet(String),

    #[error("sets are not disjoint: {0}")]
    NonDisjoint(String),

    #[error("unsupported expression: {0}")]
    UnsupportedExpression(String),

    #[error("unsupported scenario: {0}")]
    UnsupportedScenario(String),

    /// A value violates a domain invariant (negative dimension, negative
    /// weight, malformed interval, ...).
    #[error("invalid value: {0}")]
    InvalidValue(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
