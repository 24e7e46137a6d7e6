use std::fmt;

use gapforge::Error;

/// A failed command and its exit code.
#[derive(Debug)]
pub enum Fail {
    /// A claim did not hold (exit 1).
    Verification(String),
    /// Bad arguments or malformed input (exit 2).
    Usage(String),
    Io(String),
    /// An enumeration needed more than the budget (exit 3).
    Budget(String),
    /// A code or gadget could not be certified (exit 4).
    Certification(String),
}

impl Fail {
    pub fn code(&self) -> u8 {
        match self {
            Fail::Verification(_) => 1,
            Fail::Usage(_) | Fail::Io(_) => 2,
            Fail::Budget(_) => 3,
            Fail::Certification(_) => 4,
        }
    }
}

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fail::Verification(m) => write!(f, "verification failed: {m}"),
            Fail::Usage(m) | Fail::Io(m) => write!(f, "{m}"),
            Fail::Budget(m) => write!(f, "{m}"),
            Fail::Certification(m) => write!(f, "certification failed: {m}"),
        }
    }
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Fail::Budget(e.to_string()),
            Error::NotCertified(_) | Error::ParametersTooTight(_) => Fail::Certification(e.to_string()),
            _ => Fail::Usage(e.to_string()),
        }
    }
}
