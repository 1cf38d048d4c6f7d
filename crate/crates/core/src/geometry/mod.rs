//! Convex polyhedra, the tangent great-circle arrangement on S², and
//! spherical-geometry utilities.

pub mod arrangement;
pub mod polyhedron;
pub mod spherical;
pub mod stereo;

use thiserror::Error;

/// Errors from geometric constructions.
#[derive(Debug, Error)]
pub enum GeometryError {
    #[error("invalid prism dimensions (require Lx >= Ly >= Lz > 0): ({0}, {1}, {2})")]
    InvalidDimension(f64, f64, f64),
    #[error("degenerate input: {0}")]
    Degeneracy(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}
