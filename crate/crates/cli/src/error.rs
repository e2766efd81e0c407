use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag, config key or value; exit status 2.
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rstc_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    /// `verify` found failing checks.
    #[error("{0} invariant check(s) failed")]
    Verify(usize),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn exit_code(&self) -> u8 {
        use rstc_core::Error as E;
        match self {
            CliError::Usage(_) => 2,
            CliError::Core(
                E::Validation(_) | E::DegenerateProbability(_) | E::UnknownPlayer(_),
            ) => 2,
            CliError::Core(_) | CliError::Io { .. } | CliError::Verify(_) => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
