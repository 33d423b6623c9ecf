use thiserror::Error;

/// Structural validation failures when building graphs and presentations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("bad token {0:?}: expected nonempty [A-Za-z0-9_]+")]
    BadToken(String),
    #[error("duplicate half-edge {0}")]
    DuplicateHalfEdge(String),
    #[error("missing end {0}")]
    MissingEnd(String),
    #[error("undeclared label {0}")]
    UndeclaredLabel(String),
    #[error("twist entry for {0} but no half-edges")]
    DanglingTwist(String),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("unknown label {0}")]
    UnknownLabel(String),
    #[error("label {0} occurs {1} times, expected exactly 2")]
    LabelCount(String, usize),
    #[error("duplicate cycle {0}")]
    DuplicateCycle(String),
    #[error("mark colour {0} collides with an edge label")]
    MarkColourCollision(String),
    #[error("mark position {1} out of range or duplicated on vertex {0}")]
    BadMarkPosition(String, usize),
    #[error("endpoint {0} is not a declared vertex")]
    UndeclaredEndpoint(String),
    #[error("map is not a bijection: {0}")]
    NotABijection(String),
    #[error("subset contains {0} which is not a source edge")]
    SubsetOutsideSource(String),
}

/// Line-oriented parse failures for the file formats.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub msg: String,
}

impl ParseError {
    pub fn new(line: usize, msg: impl Into<String>) -> Self {
        ParseError {
            line,
            msg: msg.into(),
        }
    }
}

/// Errors raised by file readers: either the text is malformed or the
/// described object violates a structural invariant.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IoFormatError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Validation(#[from] ValidationError),
}
