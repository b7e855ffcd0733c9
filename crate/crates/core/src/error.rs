use thiserror::Error;

/// Errors raised by the algebraic constructions.
///
/// The variants are grouped by who is at fault: malformed input,
/// a violated mathematical condition, or a bug in the engine itself.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Dimensions, boundaries or ranges do not fit together.
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// A pair of differentials does not compose to zero.
    #[error("complex violation: {0}")]
    ComplexViolation(String),
    /// A butterfly diagram fails one of its defining conditions.
    #[error("butterfly violation: {0}")]
    ButterflyViolation(String),
    /// A diagrammatic identity (commuting square, homotopy relation, ...) fails.
    #[error("diagram violation: {0}")]
    DiagramViolation(String),
    /// An operation precondition such as "q is a quasi-isomorphism" fails.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// A result that should hold by construction did not verify.
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn internal(msg: impl Into<String>) -> Self {
        Error::Internal(msg.into())
    }

    /// True for errors that describe a violated mathematical condition
    /// rather than malformed input or an engine bug.
    pub fn is_domain_violation(&self) -> bool {
        matches!(
            self,
            Error::ComplexViolation(_)
                | Error::ButterflyViolation(_)
                | Error::DiagramViolation(_)
                | Error::Precondition(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
