use thiserror::Error;

/// Errors shared by every module. `Range`/`Domain`/`NotPrime` are caller
/// mistakes (CLI exit 2); `Capacity`/`Overflow` are resource limits
/// (CLI exit 3).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid range: lo = {lo} exceeds hi = {hi}")]
    Range { lo: u64, hi: u64 },

    #[error("{what}: argument {value} is out of domain ({requirement})")]
    Domain {
        what: &'static str,
        value: u64,
        requirement: &'static str,
    },

    #[error("{what} needs {needed} bytes but the memory budget is {budget} bytes (raise PNT_MAX_MEMORY_MB)")]
    Capacity {
        what: &'static str,
        needed: u64,
        budget: u64,
    },

    #[error("u64 overflow while computing {0}")]
    Overflow(&'static str),

    #[error("argument error: {0} is not prime")]
    NotPrime(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
