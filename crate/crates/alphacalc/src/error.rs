//! Error type shared by the whole kernel.

use thiserror::Error;

use crate::rat::Rat;

/// Everything that can go wrong inside the kernel.
///
/// Errors split into two families: *input* errors (malformed surface syntax,
/// bad JSON, shape mismatches) and *domain* errors (a mathematically valid
/// request that hits a precondition of the calculus, e.g. integrating a term
/// with exponent exactly `-alpha`). The CLI maps the first family to exit
/// code 1 and the second to exit code 2.
#[derive(Debug, Error)]
pub enum CalcError {
    #[error("duplicate exponent {0}")]
    DuplicateExponent(Rat),
    #[error("term exponent {exponent} is not below the truncation order {order}")]
    ExponentBeyondTruncation { exponent: Rat, order: Rat },
    #[error("alpha-integral is undefined on the term with exponent {0}: exponent + alpha = 0")]
    IntegralPole(Rat),
    #[error("gamma pole: {0} is a nonpositive integer")]
    GammaPole(Rat),
    #[error("rl monomial rule requires exponent > -1, got {0}")]
    RlExponentRange(Rat),
    #[error("evaluation point must be positive, got {0}")]
    NonpositiveEvalPoint(f64),
    #[error("scale parameter must be positive, got {0}")]
    NonpositiveScale(Rat),
    #[error("variable index {index} out of range 1..={dim}")]
    VariableIndex { index: usize, dim: usize },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("invalid basis {m}/{n}: need 0 < m/n <= 1")]
    InvalidBasis { m: i64, n: i64 },
    #[error("co-joint mapping is defined for alpha = 1/n only, got {0}")]
    CojointBasis(Rat),
    #[error("closed forms are shipped for the oscillatory branch only (omega^2 > d^2)")]
    Overdamped,
    #[error("connection component {0} is not polynomial in the coordinates")]
    NonPolynomialConnection(String),
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid input: {0}")]
    Invalid(String),
}

impl CalcError {
    /// True for failures of a mathematical precondition (CLI exit code 2),
    /// false for malformed input (CLI exit code 1).
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            CalcError::IntegralPole(_)
                | CalcError::GammaPole(_)
                | CalcError::RlExponentRange(_)
                | CalcError::NonpositiveEvalPoint(_)
                | CalcError::NonpositiveScale(_)
                | CalcError::CojointBasis(_)
                | CalcError::Overdamped
                | CalcError::NonPolynomialConnection(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, CalcError>;
