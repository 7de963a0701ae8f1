use thiserror::Error;

/// Errors raised while building geometry, solving the integral equation or
/// evaluating moduli.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),

    #[error("invalid side: {0}")]
    InvalidSide(String),

    #[error("argument out of domain: {0}")]
    Domain(String),

    #[error("node count {n} is not a positive multiple of the vertex count {m}")]
    NodeCount { n: usize, m: usize },

    #[error("vector length {got} does not match the {expected} discretization nodes")]
    LengthMismatch { expected: usize, got: usize },

    #[error("GMRES did not converge in {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("GMRES breakdown after {iterations} iterations (relative residual {residual:e})")]
    Breakdown { iterations: usize, residual: f64 },

    #[error("invalid base point: {0}")]
    BasePoint(String),

    #[error("point {0} lies on or numerically on the contour")]
    OnContour(String),

    #[error("point {0} lies outside the domain")]
    OutsideDomain(String),

    #[error("marked points are not in positive cyclic order: {0}")]
    MarkedOrder(String),

    #[error("point {0} is not on the boundary")]
    NotOnBoundary(String),

    #[error("non-finite value produced: {0}")]
    NonFinite(String),
}

pub type Result<T> = std::result::Result<T, Error>;
