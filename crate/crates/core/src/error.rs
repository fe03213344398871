use thiserror::Error;

/// Errors surfaced by every fallible operation in the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed group specification or element word. `position` is a byte
    /// offset into the offending input.
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },

    /// A computation would exceed the configured element budget, or needs a
    /// larger enumerated ball than the one supplied.
    #[error("resource limit at radius {radius}: {message}")]
    Resource { radius: usize, message: String },

    /// The inputs violate a documented precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two independent computations of the same quantity disagreed.
    #[error("internal invariant breached: {0}")]
    Invariant(String),

    /// An error that occurred while computing one cell of a suite.
    #[error("cell {cell}: {source}")]
    Cell {
        cell: String,
        #[source]
        source: Box<Error>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn parse(position: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            position,
            message: message.into(),
        }
    }

    pub(crate) fn resource(radius: usize, message: impl Into<String>) -> Self {
        Error::Resource {
            radius,
            message: message.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    /// Wraps the error with the coordinates of the cell that produced it.
    pub fn in_cell(self, cell: impl Into<String>) -> Self {
        Error::Cell {
            cell: cell.into(),
            source: Box::new(self),
        }
    }

    /// The innermost error, skipping cell wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Cell { source, .. } => source.root(),
            other => other,
        }
    }

    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self.root() {
            Error::Parse { .. } | Error::Precondition(_) | Error::Json(_) => 2,
            Error::Resource { .. } => 3,
            Error::Invariant(_) => 4,
            Error::Io(_) => 1,
            Error::Cell { .. } => unreachable!("root() strips cell wrappers"),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
