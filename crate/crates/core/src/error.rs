use num_bigint::BigInt;
use thiserror::Error;

/// Errors raised when an operation's preconditions are not met.
///
/// Failed verifications (a bound or identity that does not hold) are never
/// reported through this type; they surface as `false` flags on the
/// corresponding report so callers can tell the two apart.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("partial quotient a_{index} is {value}, expected at least 1")]
    InvalidPartialQuotient { index: usize, value: u64 },

    #[error("index {index} lies beyond the terminating expansion of length {len}")]
    IndexBeyondExpansion { index: usize, len: usize },

    #[error("N = {n} reaches the final denominator {q_last} of a rational θ, so points coincide")]
    CoincidentPoints { n: u64, q_last: BigInt },

    #[error("N = {n} is below q_1 = {q1}; no regime bracket applies")]
    BelowFirstDenominator { n: u64, q1: BigInt },

    #[error("sequence has {available} terms, at least {required} are needed")]
    SequenceTooShort { required: u64, available: u64 },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
