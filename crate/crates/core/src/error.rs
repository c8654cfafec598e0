use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("invalid rotation system: {0}")]
    InvalidRotation(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("list sizes must be at least 1, got {0:?}")]
    InvalidProfile(Vec<usize>),
    #[error("palette of {palette} colors cannot supply a list of size {size}")]
    PaletteTooSmall { palette: usize, size: usize },
    #[error("colors must lie below {max}, got {got}")]
    ColorOutOfRange { got: usize, max: usize },
    #[error("list assignment does not match graph: {0}")]
    Mismatch(String),
    #[error("invalid cycle boundary: {0}")]
    InvalidBoundary(String),
    #[error("unclassifiable segment {0}")]
    Unclassifiable(String),
    #[error("segment identity violated: {0}")]
    IdentityViolation(String),
    #[error("unknown configuration {0:?}")]
    UnknownConfiguration(String),
    #[error("invalid configuration {name}: {msg}")]
    InvalidConfiguration { name: String, msg: String },
    #[error("{0}")]
    Mode(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
