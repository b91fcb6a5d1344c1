//! Error type of the std crate and its mapping to process exit codes.

/// Failures of IO, parsing, derivation and numerical verification.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Error raised by the core crate.
    #[error(transparent)]
    Core(#[from] fiedlerkron_core::Error),
    /// File system failure.
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    /// Malformed JSON or a JSON document of the wrong kind.
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    /// Input that is well formed but unusable.
    #[error("invalid input: {0}")]
    Input(String),
    /// The generalized eigensolver failed.
    #[error("eigensolver: {0}")]
    Eigen(String),
    /// The polynomial is numerically singular where a regular one is required.
    #[error("singular polynomial: {0}")]
    SingularPolynomial(String),
    /// `d_max` is too small for the minimal-index oracle.
    #[error("degree bound too small: {0}")]
    DegreeBound(String),
}

/// Result alias for the std crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Process exit codes of the command-line tool.
pub mod exit {
    /// Every applicable check passed.
    pub const PASS: i32 = 0;
    /// A check failed.
    pub const CHECK_FAILED: i32 = 1;
    /// The input was invalid.
    pub const INVALID_INPUT: i32 = 2;
    /// A permutation derivation failed.
    pub const DERIVATION_FAILED: i32 = 3;
    /// The pencil is not eligible, typically because a wing factor is singular.
    pub const INELIGIBLE: i32 = 4;
}

impl Error {
    /// Exit code reported by the command-line tool for this error.
    pub fn exit_code(&self) -> i32 {
        use fiedlerkron_core::Error as C;
        match self {
            Error::Core(C::NoPermutation(_) | C::Derivation(_)) => exit::DERIVATION_FAILED,
            Error::Core(C::Ineligible(_)) => exit::INELIGIBLE,
            Error::Eigen(_) | Error::DegreeBound(_) => exit::CHECK_FAILED,
            _ => exit::INVALID_INPUT,
        }
    }
}
