use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(#[from] mmw_aci::Error),

    #[error("fit did not converge after {0} iterations")]
    NotConverged(usize),
}

impl CliError {
    pub fn config(line: usize, msg: impl std::fmt::Display) -> Self {
        if line == 0 {
            CliError::Config(msg.to_string())
        } else {
            CliError::Config(format!("line {line}: {msg}"))
        }
    }

    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io { context: context.into(), source }
    }

    /// Process exit status for this failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) | CliError::Io { .. } => 1,
            CliError::NotConverged(_) => 2,
            CliError::Model(mmw_aci::Error::Unidentifiable(_)) => 3,
            CliError::Model(mmw_aci::Error::EmptyResult) => 4,
            CliError::Model(_) => 1,
        }
    }
}
