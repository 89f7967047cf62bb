use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("square root of non-positive rational {0}")]
    NonPositiveRadicand(String),
    #[error("radicand {0} too large for exact factorization")]
    RadicandTooLarge(String),
    #[error("cannot parse scalar `{input}`: {reason}")]
    Parse { input: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),

    /// Invalid series/rank, malformed descriptor, bad flag combination.
    #[error("configuration error: {0}")]
    Config(String),

    #[error("usage error at position {position}: {message}")]
    Usage { position: usize, message: String },

    /// Invalid input to a construction step (e.g. a non strongly orthogonal sequence).
    #[error("construction error: {0}")]
    Construction(String),

    #[error("argument error: {0}")]
    Argument(String),

    /// The isotropy constraint or the center-dimension condition cannot be met.
    #[error("admissibility error: {reason} (suggested augmentation: {suggestion})")]
    Admissibility { reason: String, suggestion: String },

    /// An internal invariant failed; indicates a bug or inconsistent data.
    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("format error: {0}")]
    Format(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
