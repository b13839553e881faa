use std::io;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("I/O error: {0}")]
    Io(#[from] io::Error),

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("empty input")]
    EmptyInput,

    #[error("multiple parentless concepts: {}", .0.join(", "))]
    MultipleRoots(Vec<String>),

    #[error("no root concept found")]
    NoRoot,

    #[error("cycle detected in is-a relation (involving {0})")]
    Cycle(String),

    #[error("line {line}: self-edge on {node:?}")]
    SelfEdge { line: usize, node: String },

    #[error("line {line}: blank node name")]
    BlankNode { line: usize },

    #[error("unknown concept {0}")]
    UnknownConcept(String),

    #[error("concepts {0} and {1} are not adjacent")]
    NotAdjacent(String, String),

    #[error("lambda {0} outside [0, 1]")]
    LambdaOutOfRange(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("measure misconfigured: {0}")]
    Misconfigured(String),

    #[error("corpus frequency table is empty")]
    EmptyFrequencyTable,

    #[error("series lengths differ ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("need at least two observations, got {0}")]
    TooFewObservations(usize),

    #[error("series has zero variance")]
    ZeroVariance,

    #[error("line {line}: score {score} outside [0, {max}]")]
    ScoreOutOfRange { line: usize, score: f64, max: f64 },
}
