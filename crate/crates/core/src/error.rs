use thiserror::Error;

use crate::diagram::ValidationError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at `{token}`: {message}")]
    Parse { token: String, message: String },

    #[error("invalid diagram: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<ValidationError>),

    #[error("move does not apply at site: {0}")]
    Site(String),

    #[error("{what} guard exceeded: {got} > {limit}")]
    Guard { what: &'static str, limit: usize, got: usize },

    #[error("index out of range: {0}")]
    Index(String),

    #[error("invalid tree: {0}")]
    Tree(String),

    #[error("band description: {0}")]
    Band(String),

    #[error("route generation failed after {0} attempts")]
    RouteGeneration(usize),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("diagram is not a knot ({0} components)")]
    NotAKnot(usize),
}
