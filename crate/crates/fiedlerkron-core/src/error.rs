//! Error type shared by every module of the core crate.

use alloc::string::String;

/// Failures reported by tuple parsing, pencil construction and EBK derivation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// An index tuple could not be parsed.
    #[error("cannot parse tuple: {0}")]
    Parse(String),
    /// A tuple violates the successor infix property where it is required.
    #[error("tuple is not SIP: {0}")]
    NotSip(String),
    /// An index lies outside the admissible range.
    #[error("index out of range: {0}")]
    OutOfRange(String),
    /// Tuples or partitions do not satisfy the preconditions of a family.
    #[error("invalid specification: {0}")]
    InvalidSpec(String),
    /// Matrix dimensions do not agree.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// A matrix that must be inverted is singular.
    #[error("singular matrix: {0}")]
    Singular(String),
    /// No permutation into the requested block Kronecker shape exists.
    #[error("no block Kronecker permutation: {0}")]
    NoPermutation(String),
    /// A constructed view failed its structural or antidiagonal-sum check.
    #[error("derivation failed: {0}")]
    Derivation(String),
    /// The pencil has the required shape but a wing factor is singular.
    #[error("ineligible: {0}")]
    Ineligible(String),
}

/// Result alias for the core crate.
pub type Result<T> = core::result::Result<T, Error>;

/// Builds an error message with `format!` syntax.
#[macro_export]
#[doc(hidden)]
macro_rules! err {
    ($kind:ident, $($arg:tt)*) => {
        $crate::error::Error::$kind(alloc::format!($($arg)*))
    };
}
