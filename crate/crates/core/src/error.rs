use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("grid needs at least 3 nodes per axis, got {0}")]
    GridTooSmall(usize),
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("non-finite value at index {0}")]
    NonFinite(usize),
    #[error("fields live on different grids")]
    GridMismatch,
    #[error("mask selects no nodes")]
    EmptyMask,
    #[error(
        "coefficients not uniformly elliptic: smallest eigenvalue {min_eigenvalue} at node {node}"
    )]
    NotElliptic { node: usize, min_eigenvalue: f64 },
    #[error("matrix is {rows}x{rows} but vector has length {len}")]
    DimensionMismatch { rows: usize, len: usize },
    #[error("{method} broke down at iteration {iteration}")]
    Breakdown {
        method: &'static str,
        iteration: usize,
    },
    #[error(
        "{method} did not converge: relative residual {residual:e} after {iterations} iterations"
    )]
    NotConverged {
        method: &'static str,
        iterations: usize,
        residual: f64,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("field dump: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
