use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("search budget of {limit} candidate assignments exceeded")]
    BudgetExceeded { limit: u64 },

    #[error("unknown {kind} id {id}")]
    UnknownCell { kind: &'static str, id: usize },

    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },

    #[error("boundary mismatch: {0}")]
    BoundaryMismatch(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("semantic error in `{document}`: {message}")]
    Semantic { document: String, message: String },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn invalid(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Invalid {
            what,
            detail: detail.into(),
        }
    }

    /// Short machine-readable class name, used in reports.
    pub fn class(&self) -> &'static str {
        match self {
            Error::BudgetExceeded { .. } => "budget_exceeded",
            Error::UnknownCell { .. } => "unknown_cell",
            Error::Invalid { .. } => "invalid",
            Error::BoundaryMismatch(_) => "boundary_mismatch",
            Error::Precondition(_) => "precondition",
            Error::NotFound(_) => "not_found",
            Error::Syntax { .. } => "syntax",
            Error::Semantic { .. } => "semantic",
            Error::Io(_) => "io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
