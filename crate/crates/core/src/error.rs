use thiserror::Error;

/// Errors raised by the library. Mathematical "no" answers (not pure, not
/// isomorphic, ...) are returned as values, not as errors, except where an
/// operation's precondition is the property itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid coefficient field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("field context mismatch")]
    ContextMismatch,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("matrix is not invertible")]
    NotInvertible,
    #[error("eigenvalue outside the supported class (root of unity times a power of sqrt(q))")]
    EigenvalueOutsideClass,
    #[error("special representation needs a base with zero monodromy")]
    NonzeroMonodromyBase,
    #[error("representation is not pure")]
    NotPure,
    #[error("representation is not Frobenius-semisimple")]
    NotFrobeniusSemisimple,
    #[error("constituents are not those of a pure representation: {0}")]
    InconsistentPureTrace(String),
    #[error("representation violates axioms: {}", .0.join("; "))]
    InvalidRep(Vec<String>),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("malformed input: {0}")]
    Wire(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
