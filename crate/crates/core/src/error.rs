use thiserror::Error;

use crate::lattice::Cell;

/// Failures raised by the geometric kernel and the net algorithms.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GeomError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    AmbientMismatch(usize, usize),
    #[error("zero vector cannot represent a projective point")]
    ZeroVector,
    #[error("non-finite coordinates")]
    NonFinite,
    #[error("quadric is degenerate")]
    DegenerateQuadric,
    #[error("point coincides with the projection center")]
    CenterFiber,
    #[error("point is at infinity in the affine chart{}", fmt_cell(.0))]
    InfinitePoint(Option<Cell>),
    #[error("invalid tolerance configuration: {0}")]
    InvalidTolerance(String),
    #[error("face {0} is not in the requested layer")]
    WrongLayer(Cell),
    #[error("invalid cross: {0}")]
    InvalidCross(String),
    #[error("cube {cell} cannot be completed: meet has dimension {dim}")]
    DegenerateCube { cell: Cell, dim: isize },
    #[error("non-generic intersection at {cell}: meet has dimension {dim}")]
    NonGenericMeet { cell: Cell, dim: isize },
    #[error("missing data for {0}")]
    MissingCell(Cell),
    #[error("lift does not close: residual {residual:.3e} at {cell}")]
    ClosureFailure { cell: Cell, residual: f64 },
    #[error("seed for {cell} is off its constraint line by {residual:.3e}")]
    SeedOffLine { cell: Cell, residual: f64 },
    #[error("axes of cube {0} do not determine a point")]
    DegenerateAxes(Cell),
    #[error("unsupported domain: {0}")]
    InvalidDomain(String),
}

fn fmt_cell(c: &Option<Cell>) -> String {
    match c {
        Some(c) => format!(" at {c}"),
        None => String::new(),
    }
}

/// Failures of the smooth oracle.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum SmoothError {
    #[error("mixed partial ∂{i}∂{j}x is not in the tangent span (residual {residual:.3e})")]
    NotConjugate { i: usize, j: usize, residual: f64 },
    #[error("tangent vectors are linearly dependent at the evaluation point")]
    DependentTangents,
    #[error("coefficient a_{j}{i} vanishes, focal point L_{i}{j} is at infinity")]
    VanishingCoefficient { i: usize, j: usize },
    #[error("evaluation point {0:?} is outside the domain of the system")]
    OutOfDomain([f64; 3]),
    #[error("invalid finite difference step {0}")]
    InvalidStep(f64),
}

/// Failures of reading, validating and writing net documents.
#[derive(Debug, Error)]
pub enum DocError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed document: {0}")]
    Parse(String),
    #[error("invalid arguments: {0}")]
    Usage(String),
    #[error("schema violation: {0}")]
    Schema(String),
    #[error("expected a {expected} document, got {found}")]
    WrongKind { expected: String, found: String },
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Smooth(#[from] SmoothError),
}
