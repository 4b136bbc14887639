use thiserror::Error;

/// Errors raised by the analyzer. Unification failure is not an error; it is
/// reported as `None` by [`crate::term::mgu`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },

    #[error("unknown type constructor {0}")]
    UnknownCtor(String),

    #[error("constructor {name} expects {expected} arguments, got {got}")]
    CtorArity { name: String, expected: usize, got: usize },

    #[error("function symbol {0} is not covered by any type rule")]
    UnknownSymbol(String),

    #[error("invalid type rule: {0}")]
    BadRule(String),

    #[error("variable {0} is already renamed")]
    AlreadyRenamed(String),

    #[error("disjoint union over overlapping domains (variable {0})")]
    DomainOverlap(String),

    #[error("depth bound must be positive")]
    ZeroDepth,

    #[error("undefined predicate {0}")]
    UndefinedPredicate(String),

    #[error("program error: {0}")]
    Program(String),

    #[error("unknown variable {0} in input typing")]
    UnknownVariable(String),
}

impl Error {
    /// True for errors that stem from malformed input text.
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
