use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("block {index} is not symmetric")]
    NonSymmetric { index: usize },

    #[error("missing value for variable `{0}`")]
    MissingVariable(String),

    #[error("NaN in assignment for variable `{0}`")]
    NotANumber(String),

    #[error("budget exceeded: {0}")]
    Budget(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("Weiszfeld iteration did not converge after {iterations} iterations (last iterate {last:?})")]
    Divergence { iterations: usize, last: Vec<f64> },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit code used by the CLI.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Budget(_) => 3,
            Error::Verification(_) => 4,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}
