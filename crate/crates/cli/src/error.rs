use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] lagmono_core::Error),
    #[error("config: {0}")]
    Config(String),
    #[error("schema: {0}")]
    Schema(String),
    #[error("io: {0}")]
    Io(String),
}

impl CliError {
    /// Every error is a usage or input problem; check failures are not errors.
    pub fn exit_code(&self) -> i32 {
        2
    }
}
