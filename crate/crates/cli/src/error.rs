use secondary::AlgebraError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{message} at column {column}\n  {input}\n  {caret}^")]
    Syntax {
        message: String,
        column: usize,
        input: String,
        caret: String,
    },
    #[error("ring mismatch at column {column}: {message}")]
    Ring { message: String, column: usize },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("bound exceeded: {0}")]
    Bound(String),
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("document: {0}")]
    Document(String),
}

impl CliError {
    /// A syntax error at character index `column` of `input`.
    pub fn syntax(input: &str, column: usize, message: impl Into<String>) -> Self {
        CliError::Syntax {
            message: message.into(),
            column: column + 1,
            input: input.to_string(),
            caret: " ".repeat(column),
        }
    }

    pub fn ring(column: usize, message: impl Into<String>) -> Self {
        CliError::Ring {
            message: message.into(),
            column: column + 1,
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
