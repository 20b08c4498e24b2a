use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("missing required option --{0}")]
    Missing(&'static str),

    #[error("config {path}: {msg}")]
    Config { path: String, msg: String },

    #[error(transparent)]
    Core(#[from] hlvertex::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("{0} check(s) failed")]
    ChecksFailed(usize),
}

impl CliError {
    /// Process exit code: 1 for failed checks and numerical failures, 2 for
    /// usage and configuration errors.
    pub fn exit_code(&self) -> u8 {
        use hlvertex::Error as E;
        match self {
            CliError::ChecksFailed(_) => 1,
            CliError::Core(E::Quadrature(_) | E::ChiSquare(_) | E::Inconsistent(_) | E::Truncation(_)) => 1,
            CliError::Io(_) | CliError::Csv(_) => 1,
            _ => 2,
        }
    }

    pub fn shows_usage(&self) -> bool {
        matches!(self, CliError::Missing(_) | CliError::Usage(_))
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
