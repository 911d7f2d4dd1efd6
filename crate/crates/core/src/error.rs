use thiserror::Error;

/// Every failure the library reports. Messages name the violated condition.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid material spec: {0}")]
    InvalidSpec(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("fold angle beta = {beta} exceeds the admissibility limit beta_eq(alpha) = {beta_eq}")]
    Admissibility { beta: f64, beta_eq: f64 },

    #[error("construction constraint violated: {0}")]
    Constraint(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

pub(crate) fn constraint(msg: impl Into<String>) -> Error {
    Error::Constraint(msg.into())
}
