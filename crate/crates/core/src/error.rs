use thiserror::Error;

/// Errors produced by graph construction, the separator routines and the
/// collapsibility algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("self-loop on vertex `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}` -- `{1}`")]
    DuplicateEdge(String, String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("vertex sets are not pairwise disjoint")]
    OverlappingSets,
    #[error("vertices `{0}` and `{1}` are adjacent")]
    AdjacentPair(String, String),
    #[error("pair consists of the same vertex `{0}`")]
    SameVertex(String),
    #[error("graph has {n} vertices, exhaustive enumeration is capped at {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph is not chordal")]
    NotChordal,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("oracle inconsistency: {0}")]
    OracleInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
