use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("parts are not weakly decreasing: {0:?}")]
    NotDecreasing(Vec<i64>),
    #[error("partition has a negative part: {0:?}")]
    NegativePart(Vec<i64>),
    #[error("signature must have length at least 1")]
    EmptySignature,
    #[error("theta must be a positive rational, got {0}")]
    NonPositiveTheta(String),
    #[error("cell ({row}, {col}) is outside the diagram of {partition}")]
    CellOutsideDiagram { row: usize, col: usize, partition: String },
    #[error("{mu} does not interlace {lambda}")]
    NotInterlacing { lambda: String, mu: String },
    #[error("point {index} is off the unit circle (|z| = {modulus})")]
    OffTorus { index: usize, modulus: f64 },
    #[error("too many points: {given} given for {n} variables")]
    TooManyPoints { given: usize, n: usize },
    #[error("singular linear system of size {0}")]
    SingularSystem(usize),
    #[error("dimension mismatch: {basis} basis elements vs {constraints} constraints")]
    DimensionMismatch { basis: usize, constraints: usize },
    #[error("non-integer evaluation point {0}")]
    NonIntegerPoint(String),
    #[error("invalid VK parameters: {0}")]
    InvalidParams(String),
    #[error("sequence length violation: λ({n}) has length {len}")]
    LengthConvention { n: usize, len: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("out of desk-scale range: {0}")]
    OutOfRange(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
