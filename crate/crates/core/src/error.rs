use std::fmt;

/// Errors surfaced by the public API.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// An argument violated a documented precondition (k = 0 root, log base < 2, ...).
    InvalidArgument(String),
    /// A family formula was asked for a parameter outside its proven range
    /// and the conjectural escape hatch was not enabled.
    UnprovenParameter {
        family: &'static str,
        k: u32,
        proven_min: u32,
        proven_max: u32,
    },
    /// A sieve-backed counter needs more capacity than the configured cap.
    SieveCapacity { required: u64, limit: u64 },
    /// An internal consistency check tripped; this indicates a bug, not bad input.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::UnprovenParameter {
                family,
                k,
                proven_min,
                proven_max,
            } => write!(
                f,
                "{family}: k = {k} is outside the proven range {proven_min}..={proven_max} \
                 (enable conjectural mode to evaluate anyway)"
            ),
            Error::SieveCapacity { required, limit } => write!(
                f,
                "sieve capacity exceeded: need {required} but the limit is {limit}"
            ),
            Error::Internal(msg) => write!(f, "internal error: {msg}"),
        }
    }
}

impl std::error::Error for Error {}

pub type Result<T> = std::result::Result<T, Error>;
