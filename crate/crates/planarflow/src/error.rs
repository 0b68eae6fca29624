use thiserror::Error;

use crate::embedding::Dart;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("rotation system is malformed: {0}")]
    MalformedRotation(String),
    #[error("rotation system does not describe a sphere embedding (Euler check failed)")]
    NonPlanarRotation,
    #[error("underlying graph is disconnected")]
    Disconnected,
    #[error("path is not simple")]
    NotSimple,
    #[error("path endpoints do not match the required terminals")]
    WrongEndpoints,
    #[error("assignment is not a circulation (face potential mismatch at dart {0})")]
    NotACirculation(Dart),
    #[error("flow exceeds capacity on dart {0}")]
    CapacityViolated(Dart),
    #[error("assignment is not a flow: {0}")]
    NotAFlow(String),
    #[error("capacities admit a clockwise residual cycle")]
    NotCwAcyclic,
    #[error("terminals do not share the requested face")]
    NotCofacial,
    #[error("copy index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("summed boundary flow exceeds base capacity on dart {0}")]
    SummedCapacityViolated(Dart),
    #[error("more than {0} simple residual paths")]
    TooManyPaths(usize),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("bad generator dimensions: {0}")]
    BadDimensions(String),
}

pub type Result<T> = std::result::Result<T, Error>;
