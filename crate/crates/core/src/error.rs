use thiserror::Error;

use crate::complex::{Simplex, VertexId};

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("facet {index} is empty")]
    EmptyFacet { index: usize },

    #[error("facet {index} repeats vertex label {label}")]
    DuplicateVertexInFacet { index: usize, label: i64 },

    #[error("vertex {0} is not in the complex")]
    UnknownVertex(VertexId),

    #[error("simplex {0} is not in the complex")]
    UnknownSimplex(Simplex),

    #[error("matching is not acyclic: {0}")]
    MatchingNotAcyclic(String),

    #[error("matching is malformed: {0}")]
    InvalidMatching(String),

    #[error("critical element {0} belongs to a matched pair")]
    CriticalSimplexWasMatched(String),

    #[error("poset is not graded: {0}")]
    NotGraded(String),

    #[error("relation contains a cycle through {0}")]
    CyclicRelation(String),

    #[error("poset has {size} elements, above the isomorphism limit of {limit}")]
    SizeLimitExceeded { size: usize, limit: usize },

    #[error("not a discrete Morse function: {0}")]
    InvalidMorseFunction(String),

    #[error("illegal collapse at step {step}: {reason}")]
    IllegalCollapseStep { step: usize, reason: String },

    #[error("trace cannot be turned into a vertex function: {0}")]
    UnsupportedTrace(String),

    #[error("replay diverged at step {step}: {reason}")]
    ReplayMismatch { step: usize, reason: String },

    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("input contains no facets")]
    EmptyFile,

    #[error("input not found: {0}")]
    InputNotFound(String),

    #[error("verification failed: {0}")]
    VerificationFailure(String),

    #[error("unknown label {0} in document")]
    UnknownLabel(i64),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
