use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("graph has no vertices or no edges")]
    EmptyGraph,

    #[error("vertex {vertex} has degree {degree}, expected {expected}")]
    NonRegular {
        vertex: usize,
        degree: usize,
        expected: usize,
    },

    #[error("vertex index {index} out of range for a graph with {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("density of the q=1 Kesten-McKay measure diverges at x = {0}")]
    SingularEndpoint(f64),

    #[error("no convergence: {0}")]
    NoConvergence(String),

    #[error("conversion needs an infinite tail sum but the series declares no decay")]
    MissingDecay,

    #[error("enumeration budget of {cap} nodes exceeded")]
    BudgetExceeded { cap: u64 },

    #[error(
        "circuit count mismatch at r = {r}: combinatorial {combinatorial}, spectral {spectral}"
    )]
    RouteMismatch {
        r: usize,
        combinatorial: i128,
        spectral: f64,
    },

    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    #[error("series diverges: decay ratio times sqrt(q) is {ratio} >= 1")]
    DivergentSeries { ratio: f64 },

    #[error("Taylor radius {0} must exceed 2")]
    RadiusTooSmall(f64),

    #[error("closed form divides by z and z = 0")]
    ZeroArgument,

    #[error("transform has a pole on the support of the measure")]
    PoleOnSupport,
}

pub type Result<T> = std::result::Result<T, Error>;
