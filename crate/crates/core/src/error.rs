use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// The parameter is a root of the fixed polynomial, so the fiber is singular.
    #[error("degenerate parameter {0}: specialized polynomial is not squarefree")]
    DegenerateParameter(String),

    #[error("unsupported prime {0}: only odd primes are handled")]
    UnsupportedPrime(u64),

    #[error("bad reduction at p = {0}")]
    BadReduction(u64),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    /// A value that should be impossible for correct arithmetic, e.g. a point
    /// count violating the Weil bound.
    #[error("internal consistency failure: {0}")]
    Internal(String),

    #[error("height bound below threshold: log B = {ln_b} < log B0 = {ln_b0}")]
    BelowThreshold { ln_b: f64, ln_b0: f64 },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidInput(_)
            | Error::DegenerateParameter(_)
            | Error::UnsupportedPrime(_)
            | Error::BadReduction(_)
            | Error::BelowThreshold { .. } => 2,
            Error::Resource(_) => 3,
            Error::Io { .. } => 4,
            Error::Internal(_) => 1,
        }
    }
}
