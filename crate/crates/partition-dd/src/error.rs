use thiserror::Error;

/// Errors surfaced by parsing, construction, and the pipeline.
///
/// Programming errors (label ordering violations, mixing nodes from
/// different stores) are not represented here: those panic.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input text; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Structurally valid input that violates a documented precondition
    /// (edge index out of range, vertex not in the graph, universe
    /// mismatch between stores, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),

    /// A construction exceeded the configured node budget.
    #[error("node budget of {budget} exhausted during stage {stage}")]
    Resource { stage: &'static str, budget: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// Process exit status for this error: 2 for bad input, 3 for
    /// resource exhaustion.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Resource { .. } => 3,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
