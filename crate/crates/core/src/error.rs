use thiserror::Error;

/// Errors produced by the computation and parsing layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("total excess {0} is negative; Stirling coefficients are defined for excess >= 0")]
    NegativeExcess(i64),
    #[error("prefix excess d_{index} = {value} is negative")]
    NonCanonicalPrefix { index: usize, value: i64 },
    #[error("k = {k} lies outside [{lo}, {hi}]")]
    OutOfRange { k: usize, lo: usize, hi: usize },
    #[error("shift by x^{shift} leaves a nonzero coefficient at a negative power")]
    NegativeExponent { shift: i64 },
    #[error("series did not reach {digits} digits within {max_terms} terms")]
    PrecisionUnreachable { digits: u32, max_terms: usize },
    #[error("predicted count {predicted} exceeds enumeration cap {cap}")]
    TooLarge { predicted: String, cap: u64 },
    #[error("bug {index} has {s} legs; forests need unary bugs (s = 1)")]
    NotUnary { index: usize, s: u32 },
    #[error("exponential of a series with nonzero constant term")]
    NonzeroConstantTerm,
    #[error("invalid string type: {0}")]
    InvalidType(String),
    #[error("r has {r} entries but s has {s}")]
    LengthMismatch { r: usize, s: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
}

impl Error {
    /// Usage and parse problems, as opposed to computational refusals.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. } | Error::LengthMismatch { .. } | Error::InvalidType(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
