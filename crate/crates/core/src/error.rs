use thiserror::Error;

use crate::solver::WorkingSet;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("regularization constant C must be positive and finite, got {0}")]
    InvalidC(f64),
    #[error("label must be +1 or -1, got {0}")]
    InvalidLabel(f64),
    #[error("gaussian kernel requires gamma > 0, got {0}")]
    InvalidGamma(f64),
    #[error("dataset has {points} points but {labels} labels")]
    LengthMismatch { points: usize, labels: usize },
    #[error(
        "feature indices must be 1-based and strictly increasing (index {index} after {previous})"
    )]
    NonIncreasingIndex { previous: u32, index: u32 },
    #[error("precomputed kernel must be square: {0} values is not n*n for n = {1}")]
    PrecomputedShape(usize, usize),
    #[error("precomputed kernel is not symmetric at ({0}, {1})")]
    PrecomputedAsymmetric(usize, usize),
    #[error("precomputed kernel has {matrix} rows but the dataset has {points} points")]
    PrecomputedSize { matrix: usize, points: usize },
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("precomputed kernels are evaluated by index, not by feature vector")]
    NotVectorKernel,
    #[error("vector has length {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("working set {0:?} is not a feasible direction at the current point")]
    InfeasibleWorkingSet(WorkingSet),
    #[error("step of size {mu} on {set:?} leaves the box by {excess:e}")]
    BoxViolation {
        set: WorkingSet,
        mu: f64,
        excess: f64,
    },
    #[error("planning context is degenerate (det Q = {det:e}, Q22 = {q22:e})")]
    DegeneratePlan { det: f64, q22: f64 },
    #[error("point is infeasible: {0}")]
    Infeasible(String),
    #[error("reference solver is limited to {max} variables, got {len}")]
    OracleTooLarge { len: usize, max: usize },
    #[error("reference solver found no KKT point")]
    OracleNoSolution,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
