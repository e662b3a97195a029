use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph is not connected")]
    DisconnectedGraph,
    #[error("edge between vertex indices {0} and {1} has zero weight")]
    ZeroWeightEdge(usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set is empty")]
    EmptySet,
    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),
    #[error("malformed trace: {0}")]
    MalformedTrace(String),
    #[error("graph has {n} vertices, exceeding the cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },
    #[error("decomposition leaves do not match the graph vertices: {0}")]
    LeafMismatch(String),
    #[error("weight must be positive, got {0}")]
    NonpositiveWeight(String),
    #[error("polynomial is identically zero")]
    ZeroPolynomial,
    #[error("certificate variables do not partition the polynomial variables: {0}")]
    VariableMismatch(String),
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}
