use thiserror::Error;

use crate::graph::ValidationReport;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error{}: {msg}", line_suffix(*.line))]
    Syntax { line: usize, msg: String },

    #[error("graph failed validation:\n{0}")]
    ValidationFailure(Box<ValidationReport>),

    #[error("invalid squares:\n{0}")]
    InvalidSquares(Box<ValidationReport>),

    #[error("paths are not composable: source of `{left}` is not the range of `{right}`")]
    NonComposable { left: String, right: String },

    #[error("segment ({from}, {to}) is out of range for a path of degree {degree}")]
    OutOfRange { from: String, to: String, degree: String },

    #[error("degree {0} uses a color above the explicit colors and the graph has no tail")]
    UnsupportedColor(String),

    #[error("no commuting square for the pair ({0}, {1})")]
    MissingSquare(String, String),

    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown path `{0}`")]
    UnknownPath(String),

    #[error("vertex set {0} is not saturated and hereditary")]
    NotSaturatedHereditary(String),

    #[error("degrees of a pair must differ, both are {0}")]
    BadPair(String),

    #[error("elements belong to different graphs or rings")]
    GraphMismatch,

    #[error("graph has sources; Kumjian-Pask expansion is unavailable")]
    SourcesPresent,

    #[error("ring {0} is not an integral domain")]
    NonDomainRing(String),

    #[error("{0}")]
    Usage(String),
}

fn line_suffix(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!(" at line {line}")
    }
}

impl Error {
    pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> Self {
        Error::Syntax { line, msg: msg.into() }
    }
}
