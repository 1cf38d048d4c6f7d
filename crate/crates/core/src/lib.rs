//! Tangent unit-vector fields on convex polyhedra.
//!
//! A library for computing topological lower bounds, conformal-trial upper
//! bounds, and numerical minimisers of the one-constant (Dirichlet) energy
//! of tangent unit-vector fields on convex polyhedra, with rectangular
//! prisms as the primary test geometry.
//!
//! All operations are pure and deterministic; values are immutable after
//! construction and safe to share across threads. Internally parallel
//! loops use deterministic (chunked, pairwise) reductions.

pub mod connection;
pub mod freegroup;
pub mod geometry;
pub mod homotopy;

mod math;

pub use geometry::arrangement::{classify_direction, tangent_partition, Location, SectorPartition};
pub use geometry::polyhedron::{build_convex, build_prism, solid_angle_polygon, Polyhedron};
pub use geometry::spherical::{polygon_area, SphericalPolygon};
pub use geometry::stereo::{inverse_stereographic, stereographic, ExtComplex};
pub use geometry::GeometryError;

pub use homotopy::{
    degree_at_value, expand_reflection, validate_class, wrapping_from_surface, HomotopyClass,
    HomotopyError, ReflSymClass, SurfaceMapSample, WrappingMeasurement,
};

pub use connection::{
    bcl_infimum, dual_certificate, minimal_connection, polyhedron_lower_bound, ConnectionError,
    ConnectionResult, DefectConfiguration, DualCertificate, SectorBound,
};

pub use freegroup::{
    abelianized_length, delta, improved_lower_bound, sphere_spelling_bound, spelling_length,
    FreeGroupError, SpellingResult, Word,
};

/// 3-vector used throughout.
pub type Vec3 = nalgebra::Vector3<f64>;
