use thiserror::Error;

/// Failure of a subcommand, carrying its process exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{0}")]
    Config(String),

    #[error(transparent)]
    Model(#[from] qillum::Error),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),

    /// Parameters outside the regime the Fock oracle can represent.
    #[error("{0}")]
    Refused(String),

    /// One or more verification checks failed.
    #[error("{0}")]
    ChecksFailed(String),
}

impl CliError {
    /// 1 for usage and validation errors, 2 for numerical or runtime
    /// failures, 3 when the oracle refuses the parameter regime.
    pub fn exit_code(&self) -> i32 {
        use qillum::Error as E;
        match self {
            CliError::Usage(_) | CliError::Config(_) => 1,
            CliError::Model(
                E::InvalidParameter { .. } | E::DimensionMismatch { .. } | E::NotSymmetric(_) | E::Unphysical(_),
            ) => 1,
            CliError::Model(_) | CliError::Io(_) | CliError::Csv(_) | CliError::ChecksFailed(_) => 2,
            CliError::Refused(_) => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
