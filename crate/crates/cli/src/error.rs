use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input or an invalid flag combination.
    #[error("{0}")]
    Input(String),
    #[error("bad flags: {0}")]
    BadFlags(String),
    /// Pipelines or a verification check disagree.
    #[error("{0}")]
    Disagreement(String),
    #[error("{0} (pass --budget-override to force)")]
    Budget(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Disagreement(_) => 1,
            CliError::Input(_) | CliError::BadFlags(_) => 2,
            CliError::Budget(_) => 3,
        }
    }
}
