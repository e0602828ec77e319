use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("partition is not a member of {0}")]
    Membership(String),
    #[error("membership is not decidable for class P on an uncoloured partition")]
    UnsupportedPredicate,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("no nonnegative solution to {a}x + {b}y = {n}")]
    NoSolution { a: String, b: String, n: String },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("bound not met: {0}")]
    BoundNotMet(String),
    #[error("not in the range of the map: {0}")]
    NotInRange(String),
    #[error("out of scope: {0}")]
    OutOfScope(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("truncation orders differ ({0} vs {1})")]
    MismatchedOrder(usize, usize),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
