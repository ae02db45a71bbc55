use std::fmt;
use std::process::ExitCode;

use selfpow::Error;

/// Every way a command can end unsuccessfully, tied to its exit code.
#[derive(Debug)]
pub enum Failure {
    /// 1: a verification suite found a counterexample.
    Verification(String),
    /// 2: invalid input.
    Usage(String),
    /// 3: fast and exact routes disagree, or a report is inconsistent.
    Mismatch(String),
    /// 4: the requested window cannot establish the period.
    Window(String),
    /// 2: writing output failed.
    Io(std::io::Error),
}

impl Failure {
    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) | Failure::Io(_) => 2,
            Failure::Mismatch(_) => 3,
            Failure::Window(_) => 4,
        })
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Verification(m) => write!(f, "verification failed: {m}"),
            Failure::Usage(m) => write!(f, "invalid input: {m}"),
            Failure::Mismatch(m) => write!(f, "cross-check mismatch: {m}"),
            Failure::Window(m) => write!(f, "window too small: {m}"),
            Failure::Io(e) => write!(f, "output error: {e}"),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::WindowTooSmall { .. } => Failure::Window(e.to_string()),
            Error::PeriodNotDetected(_) => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}
