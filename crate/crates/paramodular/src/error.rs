//! Crate-wide error type.

use thiserror::Error;

/// Errors surfaced by fallible operations in this crate.
///
/// Contract violations that indicate an internal bug (for example a trace
/// that should be integral coming out fractional) panic instead; `Error` is
/// reserved for conditions triggered by caller input.
#[derive(Debug, Error)]
pub enum Error {
    /// A parameter was outside its documented domain.
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// `d` is not a unitary divisor of `t` (i.e. `gcd(d, t/d) != 1`).
    #[error("{d} is not a unitary divisor of {t}")]
    NotUnitaryDivisor { d: i64, t: i64 },

    /// A matrix that was required to be invertible is singular.
    #[error("matrix is singular")]
    SingularMatrix,

    /// A matrix did not satisfy a required shape constraint.
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    /// A quantity that must be a perfect square (or a square of a rational)
    /// was not.
    #[error("{0} is not a perfect square")]
    NotASquare(String),

    /// A membership test received a matrix outside the ambient group.
    #[error("matrix is not a symplectic similitude: {0}")]
    NotSimilitude(String),
}
