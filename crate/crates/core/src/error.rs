use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// The variants fall into two groups: bad input ([`Error::NotPrime`],
/// [`Error::PrimeNotInSet`], ...) and limits of exact evaluation
/// ([`Error::Overflow`], [`Error::Guard`], [`Error::Domain`]). The CLI maps
/// the first group to exit code 1 and the second to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("{prime} is not in the prime set {set}")]
    PrimeNotInSet { prime: u64, set: String },

    #[error("{prime} is already in the prime set {set}")]
    PrimeAlreadyInSet { prime: u64, set: String },

    #[error("range is empty or reversed: lo = {lo}, hi = {hi}")]
    BadRange { lo: u128, hi: u128 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("arithmetic overflow computing {0} (exceeds 128 bits)")]
    Overflow(String),

    #[error("guard exceeded: {what} needs {needed}, limit is {limit}")]
    Guard {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    #[error("domain error: {0}")]
    Domain(String),
}

impl Error {
    /// True for limit errors (overflow, guards, domain), false for malformed input.
    pub fn is_limit(&self) -> bool {
        matches!(
            self,
            Error::Overflow(_) | Error::Guard { .. } | Error::Domain(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
