use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("matrix dimension is zero")]
    DimensionZero,
    #[error("matrix of dimension {dim} needs {expected} entries, got {got}")]
    ShapeMismatch { dim: usize, expected: usize, got: usize },
    #[error("matrix is not symmetric: |a[{row}][{col}] - a[{col}][{row}]| = {deviation:e}")]
    NotSymmetric { row: usize, col: usize, deviation: f64 },
    #[error("eigenvalue iteration did not converge")]
    NoConvergence,
    #[error("inverse temperature must be positive, got {0}")]
    NonPositiveBeta(f64),
    #[error("temperature must be positive, got kt = {0}")]
    NonPositiveTemperature(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("chain length {length} exceeds the supported maximum of {max}")]
    LengthTooLarge { length: usize, max: usize },
    #[error("exchange constant J must be nonzero")]
    ZeroExchange,
    #[error("no root: field h = {h} is outside the range [0, {max_h}] of the critical-point equation")]
    NoRoot { h: f64, max_h: f64 },
    #[error("quadrature did not reach tolerance {tolerance:e} within {panels} panels")]
    QuadratureFailure { tolerance: f64, panels: usize },
    #[error("grid is not uniform at index {0}")]
    NonUniformGrid(usize),
    #[error("series has {0} missing points")]
    HolesPresent(usize),
    #[error("all derivative values are zero")]
    AllZero,
    #[error("derivative extremum lies on the sweep boundary at {location}; widen the window")]
    ExtremumOnBoundary { location: f64 },
    #[error("sweep needs at least {min} points, got {got}")]
    TooFewPoints { min: usize, got: usize },
    #[error("{param} = {value}: {message}")]
    SweepPoint { param: String, value: f64, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
