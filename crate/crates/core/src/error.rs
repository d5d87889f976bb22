use thiserror::Error;

/// Errors raised by construction, verification and I/O.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("gluing table is not an involution at facet {facet}, face {face}: {reason}")]
    InvolutionViolation {
        facet: usize,
        face: usize,
        reason: String,
    },
    #[error("invalid label permutation: {0}")]
    InvalidPermutation(String),
    #[error("dimension {0} exceeds the supported maximum of {max}", max = crate::complex::MAX_DIM)]
    DimensionTooLarge(usize),
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    #[error("construction inconsistency: {0}")]
    ConstructionInconsistency(String),
    #[error("face not found: {0}")]
    FaceNotFound(String),
    #[error("invalid facet id {id} (facet count {count})")]
    InvalidFacet { id: usize, count: usize },
    #[error("action is not good: vertices {a} and {b} share orbit {orbit} and span edge {edge}")]
    NotGood {
        a: usize,
        b: usize,
        orbit: usize,
        edge: usize,
    },
    #[error("quotient gluing is ill-defined: orbit {orbit}, face {face}: {reason}")]
    IllDefinedGluing {
        orbit: usize,
        face: usize,
        reason: String,
    },
    #[error("quotient glues face {face} of orbit {orbit} to itself")]
    SelfGluing { orbit: usize, face: usize },
    #[error("invalid orbit table: {0}")]
    InvalidOrbits(String),
    #[error("complex is not graded (identity-glued): facet {facet}, face {face}")]
    NotGraded { facet: usize, face: usize },
    #[error("complex is not identity-glued: facet {facet}, face {face}")]
    NotIdentityGlued { facet: usize, face: usize },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("colour {colour} is not a matching: node {node} {reason}")]
    MatchingViolation {
        colour: usize,
        node: usize,
        reason: String,
    },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("integer overflow: {0}")]
    Overflow(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
