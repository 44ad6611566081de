use thiserror::Error;

/// Every failure the library reports.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("edge {edge} references missing vertex {vertex}")]
    DanglingEdge { edge: String, vertex: String },
    #[error("duplicate id {0}")]
    DuplicateId(String),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("empty walk")]
    EmptyWalk,
    #[error("invalid walk: {0}")]
    InvalidWalk(String),
    #[error("walk lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("graph is not simple-with-loops (parallel edges present)")]
    NotInS0,
    #[error("not simple: {0}")]
    NotSimple(String),
    #[error("automorphism search exceeded its budget of {0} nodes")]
    TooLarge(u64),
    #[error("ambient product was not built from the given factors")]
    LabelMapMissing,
    #[error("invalid skeleton split: {0}")]
    InvalidSplit(String),
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("factor search exhausted its budget of {0} nodes")]
    Budget(u64),
    #[error("faces must share one even length: {0}")]
    OddFaces(String),
    #[error("factor {0} is not ordinary")]
    NotOrdinary(usize),
    #[error("face blocks are not incident")]
    NotIncident,
    #[error("out of range: {0}")]
    RangeError(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("semantic error: {0}")]
    Semantic(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
