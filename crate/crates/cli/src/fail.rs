//! Failure classification for the process exit contract: 0 success,
//! 1 runtime failure, 2 usage or parse problem, 3 declared domain outcome
//! (no solutions under target, non-positive extrapolation).

use qpow::Error;

#[derive(Debug)]
pub enum Failure {
    /// Bad flags, unparseable config or CSV, out-of-range parameters.
    Usage(String),
    /// The computation itself failed.
    Runtime(String),
    /// A well-formed question whose answer is "no": exit 3 so scripts can
    /// branch on it.
    Domain(String),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Runtime(_) => 1,
            Failure::Domain(_) => 3,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Runtime(m) | Failure::Domain(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        let message = err.to_string();
        match err {
            Error::NoSolutions | Error::NegativeExtrapolation { .. } => Failure::Domain(message),
            Error::InvalidParam { .. }
            | Error::Underdetermined { .. }
            | Error::Capacity { .. }
            | Error::NonceRange { .. } => Failure::Usage(message),
            _ => Failure::Runtime(message),
        }
    }
}
