use thiserror::Error;

/// Errors raised by constructors and structural operations.
///
/// Validation of algebraic axioms does not go through this type: validators
/// return reports that carry witnesses instead (a failed axiom is a result,
/// not an error).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus")]
    NotPrime(u32),

    #[error("field modulus mismatch: {0} vs {1}")]
    FieldMismatch(u32, u32),

    #[error("dimension mismatch: {context} (expected {expected}, got {actual})")]
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        actual: usize,
    },

    #[error("invalid group table: {0}")]
    InvalidGroup(String),

    #[error("grading group mismatch between operands")]
    GroupMismatch,

    #[error("operands are defined over different rings")]
    RingMismatch,

    #[error("expected a {expected:?} module, got a {actual:?} module")]
    SideMismatch {
        expected: crate::graded::Side,
        actual: crate::graded::Side,
    },

    #[error("invalid submodule: {0}")]
    InvalidSubmodule(String),

    #[error("operation not applicable: {0}")]
    NotApplicable(String),

    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("invalid structure constants: {0}")]
    InvalidStructure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
