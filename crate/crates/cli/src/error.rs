use thiserror::Error;

/// Problems with a job configuration; all map to exit status 2.
#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("config line {line}, column {column}: {msg}")]
    Syntax { line: usize, column: usize, msg: String },
    #[error("{field}: {source}")]
    Field { field: String, source: Box<ConfigError> },
    #[error(transparent)]
    Library(#[from] semistar::Error),
    #[error("{0}")]
    Missing(String),
    #[error("{0}")]
    Semantic(String),
    #[error("{0}")]
    Bound(String),
    #[error("cannot read {path}: {msg}")]
    Io { path: String, msg: String },
}

impl ConfigError {
    pub fn within(self, field: &str) -> ConfigError {
        ConfigError::Field { field: field.to_string(), source: Box::new(self) }
    }
}
