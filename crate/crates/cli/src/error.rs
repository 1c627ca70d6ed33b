use std::fmt;

/// Command failures, each tied to an exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags, config values or I/O on the output directory. Exit 2.
    Usage(String),
    /// A numerical method could not reach its tolerance. Exit 3.
    Accuracy(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Accuracy(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Accuracy(m) => write!(f, "accuracy failure: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<growthlab::Error> for CliError {
    fn from(e: growthlab::Error) -> Self {
        use growthlab::Error::*;
        match e {
            Domain(_) | Precondition(_) | Resource(_) => CliError::Usage(e.to_string()),
            Accuracy { .. } | Conditioning(_) | Instability(_) => CliError::Accuracy(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(format!("i/o: {e}"))
    }
}

pub type CliResult<T> = Result<T, CliError>;
