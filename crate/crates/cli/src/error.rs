use thiserror::Error;

/// Failure of a CLI run, each kind with its own exit code.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Precondition(String),
    /// Two computations that must agree did not, or a guaranteed inequality failed.
    #[error("internal invariant breach: {0}")]
    Invariant(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) | CliError::Io(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl From<twalex_core::Error> for CliError {
    fn from(e: twalex_core::Error) -> Self {
        use twalex_core::Error as E;
        match e {
            E::Parse(msg) => CliError::Parse(msg),
            E::MismatchDetected(_) => CliError::Invariant(e.to_string()),
            other => CliError::Precondition(other.to_string()),
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Parse(e.to_string())
    }
}

pub const EXIT_TEST_FAILURE: i32 = 1;
