use thiserror::Error;

use crate::witness::ExtractionTrace;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("parse error on line {line}: {message}")]
    ParseLine { line: usize, message: String },

    #[error("{what}: n = {n} exceeds the supported limit of {limit}")]
    UnsupportedSize { what: &'static str, n: usize, limit: usize },

    #[error("invalid argument: {0}")]
    Argument(String),

    #[error("coloring is not proper: edge {{{0}, {1}}} is monochromatic")]
    ImproperColoring(usize, usize),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid certificate: {0}")]
    Certificate(String),

    /// A step that the underlying theorem guarantees did not go through.
    #[error("internal invariant breached: {message}")]
    Invariant {
        message: String,
        trace: Option<Box<ExtractionTrace>>,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn line(line: usize, message: impl Into<String>) -> Self {
        Error::ParseLine {
            line,
            message: message.into(),
        }
    }

    pub(crate) fn invariant(message: impl Into<String>) -> Self {
        Error::Invariant {
            message: message.into(),
            trace: None,
        }
    }

    /// True for errors caused by bad caller input, as opposed to a breached invariant.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invariant { .. })
    }
}
