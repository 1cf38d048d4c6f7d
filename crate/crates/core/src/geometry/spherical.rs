//! Geodesic polygons on the unit sphere and their signed areas.

use super::GeometryError;
use crate::math::{geodesic_tangent, signed_angle_around};
use crate::Vec3;

/// A geodesic polygon on S²: ordered unit vertices joined by minor great-circle
/// arcs. Consecutive vertices must be distinct and non-antipodal.
///
/// Orientation is carried by the vertex order; counterclockwise as seen from
/// outside the sphere (interior on the left) gives positive area.
#[derive(Debug, Clone)]
pub struct SphericalPolygon {
    vertices: Vec<Vec3>,
}

impl SphericalPolygon {
    /// Builds a polygon from ordered unit vertices.
    pub fn new(vertices: Vec<Vec3>) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::Degeneracy(format!(
                "polygon needs at least 3 vertices, got {}",
                vertices.len()
            )));
        }
        for v in &vertices {
            if (v.norm() - 1.0).abs() > 1e-9 {
                return Err(GeometryError::InvalidInput(format!(
                    "polygon vertex not unit: |v| = {}",
                    v.norm()
                )));
            }
        }
        for i in 0..vertices.len() {
            let a = &vertices[i];
            let b = &vertices[(i + 1) % vertices.len()];
            if (a + b).norm() < 1e-9 {
                return Err(GeometryError::Degeneracy(
                    "consecutive polygon vertices are antipodal".into(),
                ));
            }
            if (a - b).norm() < 1e-12 {
                return Err(GeometryError::Degeneracy(
                    "consecutive polygon vertices coincide".into(),
                ));
            }
        }
        Ok(Self { vertices })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Polygon with reversed orientation.
    pub fn reversed(&self) -> Self {
        let mut v = self.vertices.clone();
        v.reverse();
        Self { vertices: v }
    }

    /// Normalized Euclidean mean of the vertices. Interior point for
    /// geodesically convex polygons.
    pub fn centroid(&self) -> Vec3 {
        let sum: Vec3 = self.vertices.iter().sum();
        sum / sum.norm()
    }
}

/// Signed area in steradians of a simple geodesic polygon, by Gauss–Bonnet:
/// `A = 2π − Σ turning angles`, wrapped into (−2π, 2π].
///
/// Counterclockwise orientation (seen from outside) gives positive area;
/// reversing the orientation flips the sign. A polygon whose vertices all lie
/// on one great circle bounds a hemisphere and returns 2π.
pub fn polygon_area(poly: &SphericalPolygon) -> Result<f64, GeometryError> {
    let vs = &poly.vertices;
    let n = vs.len();
    let mut turn_sum = 0.0;
    for i in 0..n {
        let prev = &vs[(i + n - 1) % n];
        let here = &vs[i];
        let next = &vs[(i + 1) % n];
        // Tangent of the incoming arc at its endpoint `here`.
        let t_arrive = -geodesic_tangent(here, prev).ok_or_else(|| {
            GeometryError::Degeneracy("degenerate polygon side (antipodal or coincident)".into())
        })?;
        let t_out = geodesic_tangent(here, next).ok_or_else(|| {
            GeometryError::Degeneracy("degenerate polygon side".into())
        })?;
        turn_sum += signed_angle_around(&t_arrive, &t_out, here);
    }
    let raw = 2.0 * std::f64::consts::PI - turn_sum;
    // Wrap into (−2π, 2π]. Turning sums of simple polygons lie in (−2π, 2π),
    // so raw ∈ (0, 4π); a single wrap suffices.
    let two_pi = 2.0 * std::f64::consts::PI;
    let area = if raw > two_pi { raw - 2.0 * two_pi } else { raw };
    Ok(area)
}
