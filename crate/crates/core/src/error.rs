use thiserror::Error;

use crate::graph::VertexId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}-{1}")]
    UnknownEdge(VertexId, VertexId),
    #[error("duplicate vertex {0}")]
    DuplicateVertex(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("parallel edge {0}-{1}")]
    ParallelEdge(VertexId, VertexId),
    #[error("role conflict identifying {0} and {1}")]
    RoleConflict(VertexId, VertexId),
    #[error("missing terminal {0}")]
    MissingTerminal(char),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("inconsistent constraints: {0}")]
    InconsistentConstraints(String),
    #[error("malformed certificate: {0}")]
    MalformedCertificate(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("search budget exceeded after {0} nodes")]
    BudgetExceeded(u64),
    #[error("construction failed: {0}")]
    Construction(String),
}

pub type Result<T> = std::result::Result<T, Error>;
