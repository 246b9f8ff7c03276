use thiserror::Error;

/// Errors produced by the sparsification toolkit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex index {index} out of range for {n} vertices")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),

    #[error("hyperedge {edge} repeats vertex {vertex}")]
    DuplicateVertex { edge: usize, vertex: usize },

    #[error("weight {weight} on edge {edge} is negative or not finite")]
    InvalidWeight { edge: usize, weight: f64 },

    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },

    #[error("vector length {got} does not match vertex count {expected}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("vertex sets overlap at vertex {0}")]
    OverlappingSets(usize),

    #[error("instance size {n} exceeds the limit of {limit} for this operation")]
    SizeLimit { n: usize, limit: usize },

    #[error("epsilon must lie in (0, 1], got {0}")]
    InvalidEpsilon(f64),

    #[error("operation requires a nonempty instance")]
    EmptyInstance,

    #[error("operation requires unit weights")]
    WeightedInput,

    #[error("edge {0} is not part of the reduced instance")]
    UnknownEdge(usize),

    #[error("missing resistance for pair ({0}, {1})")]
    MissingPair(usize, usize),

    #[error("resampling did not converge within {rounds} rounds")]
    ResampleCapExceeded { rounds: usize },

    #[error("trace bisection failed: {0}")]
    BisectionFailure(String),

    #[error("width condition violated at step {step}: eta * width = {value}")]
    WidthCondition { step: usize, value: f64 },

    #[error("certificate matrix is singular")]
    SingularBound,

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
