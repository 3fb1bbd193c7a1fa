use thiserror::Error;

/// Errors raised by the arithmetic, sieve and enumeration routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("gcd(0, 0) is undefined")]
    GcdOfZeros,

    #[error("invalid {name}: {reason}")]
    InvalidArgument { name: &'static str, reason: String },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("{what} = {value} exceeds the limit {limit}")]
    Limit {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("could not allocate {0}")]
    Allocation(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidArgument {
        name,
        reason: reason.into(),
    }
}
