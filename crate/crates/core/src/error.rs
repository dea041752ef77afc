use thiserror::Error;

/// Errors raised by clustering comparisons and their chance corrections.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument fell outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The two clusterings do not cover the same element set.
    #[error("element sets differ: {symmetric_difference} element(s) appear in only one clustering")]
    ElementMismatch {
        /// Size of the symmetric difference of the two element sets.
        symmetric_difference: usize,
    },

    /// `(s - E) / (max - E)` has a zero denominator.
    #[error("adjustment undefined: expectation {expectation} equals the maximum bound ({reason})")]
    UndefinedAdjustment {
        /// The model expectation.
        expectation: f64,
        /// Human readable cause.
        reason: String,
    },

    /// A normalizing bound is zero.
    #[error("normalization undefined: {0}")]
    UndefinedNormalization(String),

    /// The request exceeds an enumeration ceiling.
    #[error("enumeration refused: {0}")]
    Ceiling(String),

    /// A model specification is internally inconsistent.
    #[error("invalid model specification: {0}")]
    InvalidSpec(String),

    /// A clustering file could not be parsed.
    #[error("parse error at line {line}: {message}")]
    Parse {
        /// 1-based line number.
        line: usize,
        /// What went wrong.
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
