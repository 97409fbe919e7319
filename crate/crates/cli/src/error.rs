use thiserror::Error;

/// Failure classes, mapped to exit codes 1 and 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Physics(String),
    #[error("{0}")]
    Input(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Physics(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<conecalc::Error> for CliError {
    fn from(e: conecalc::Error) -> Self {
        match e {
            conecalc::Error::MassBoundViolated { .. } => CliError::Physics(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}
