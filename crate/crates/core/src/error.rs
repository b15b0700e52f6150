use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("group axiom violated: {0}")]
    GroupAxiom(String),
    #[error("regularity violated at vertex {0}: in-degree must be finite and at least 1")]
    RegularityViolation(String),
    #[error("edge {0} does not have a singleton range")]
    NonSingletonRange(String),
    #[error("edge {0} has an empty source")]
    EmptySource(String),
    #[error("sets belong to different universes")]
    UniverseMismatch,
    #[error("answer is infinite and not expressible by edge families: {0}")]
    InfiniteAnswer(String),
    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
    #[error("not a path: {0}")]
    NotComposable(String),
    #[error("constraint violated: {0}")]
    Constraint(String),
    #[error("element is not an idempotent")]
    NotIdempotent,
    #[error("filter is not in the domain of the element")]
    Domain,
    #[error("cocycle is not trivial")]
    NontrivialCocycle,
    #[error("instance does not have the required shape: {0}")]
    ShapeMismatch(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("group element arithmetic overflowed")]
    Overflow,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}
