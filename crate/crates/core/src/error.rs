use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("({a}, {b}, {c}) is not a Markov triple: a^2 + b^2 + c^2 != 3abc")]
    NotMarkovTriple { a: String, b: String, c: String },

    #[error("mediant of {left} and {right} is not reduced; the fractions are not Farey neighbours")]
    NotFareyNeighbours { left: String, right: String },

    #[error("{a} is not invertible modulo {c}")]
    NotInvertible { a: String, c: String },

    #[error("{c} does not divide k^2 + 1 for k = {k}")]
    NotMarkovPair { c: String, k: String },

    #[error("invalid period: {0}")]
    InvalidPeriod(String),

    #[error("invalid tree path {0:?}: expected a word over {{L, R}}")]
    InvalidPath(String),

    #[error("{fraction} is not on the Farey tree within depth {depth}; nearest nodes: {nearest}")]
    NotOnTree {
        fraction: String,
        depth: u32,
        nearest: String,
    },

    #[error("fixed-point iteration did not converge after {iterations} sweeps (last step {last_step:e})")]
    NoConvergence { iterations: usize, last_step: f64 },

    #[error("cycle walk mismatch at step {step}: {detail}")]
    CycleMismatch { step: usize, detail: String },

    #[error("Im z = {im} is below the admissible strip Im z >= sqrt(3)/2")]
    BelowStrip { im: f64 },

    #[error("quadrature did not reach tolerance {tol:e} within {intervals} intervals (estimate {estimate:e})")]
    Quadrature {
        tol: f64,
        intervals: usize,
        estimate: f64,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("missing value for node {0}")]
    MissingValue(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("corrupt cache at line {line}: {reason}")]
    CorruptCache { line: usize, reason: String },

    #[error("malformed coefficient file: {0}")]
    CoefficientFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
