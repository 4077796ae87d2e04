use thiserror::Error;

/// Failures raised by exact and numeric computations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {0}")]
    Pole(String),
    #[error("not divisible: {0}")]
    NotDivisible(String),
    #[error("not a Laurent polynomial: {0}")]
    NotPolynomial(String),
    #[error("identity violated: {0}")]
    IdentityViolation(String),
    #[error("basis expansion did not terminate within {0} steps")]
    NonTerminating(usize),
    #[error("input is not symmetric under x1 <-> x2")]
    NotSymmetric,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("contour unsupported: {0}")]
    ContourUnsupported(String),
    #[error("{what}: residual {value:e} exceeds tolerance {tol:e}")]
    ToleranceExceeded { what: String, value: f64, tol: f64 },
    #[error("trend violated: {0}")]
    TrendViolation(String),
    #[error("particles collide: |x_j - x_k| = {0:e}")]
    Collision(f64),
    #[error("separation variables degenerate: discriminant {0:e}")]
    DegenerateRoots(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
