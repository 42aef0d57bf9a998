use thiserror::Error;

/// Error type shared across the crate.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arithmetic error: {0}")]
    Arithmetic(String),

    #[error("unsupported representation: {0}")]
    UnsupportedRepresentation(String),

    /// All inputs of a gcd (or similar) were zero; the common zero set is the
    /// whole torus and the caller must interpret it that way.
    #[error("degenerate input: {0}")]
    DegenerateInput(String),

    /// The chain rule d.d = 0 failed; coordinates locate the first nonzero
    /// entry of the offending product d_degree . d_{degree+1}.
    #[error("chain rule violated: d_{degree} . d_{} is nonzero at ({row}, {col})", degree + 1)]
    ChainRule { degree: usize, row: usize, col: usize },

    /// The character does not kill a relator, i.e. it is not a character of
    /// the presented group.
    #[error("inconsistent character: relator {relator} maps to a value != 1")]
    InconsistentCharacter { relator: usize },

    #[error("unsupported degree {degree} for this target")]
    UnsupportedDegree { degree: usize },

    #[error("malformed JSON: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub fn json(msg: impl Into<String>) -> Self {
        Error::Json(msg.into())
    }
}
