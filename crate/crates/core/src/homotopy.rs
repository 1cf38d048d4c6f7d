//! Homotopy invariants of tangent unit-vector fields: wrapping-number
//! matrices, admissibility sum rules, and extraction of wrapping numbers and
//! degrees from discretized surface maps.
//!
//! Orientation convention for cleaved surfaces: a surface separating vertex
//! `a` from the rest is oriented as seen *from the vertex*, which is the
//! clockwise orientation seen from outside the sphere of directions. With
//! this convention the identity corner map has wrapping number −1 on its
//! octant.

use crate::geometry::arrangement::{classify_direction, Location, SectorPartition};
use crate::math::triangle_signed_area;
use crate::Vec3;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Subdivision depth for triangles straddling sector boundaries.
const ATTRIBUTION_DEPTH: u32 = 6;
/// Image triangles with chord diameter above this are pre-refined.
const MAX_IMAGE_DIAMETER: f64 = 0.5;
/// Residuals above this cause a resolution-too-coarse error.
const RESIDUAL_LIMIT: f64 = 0.1;

#[derive(Debug, Error)]
pub enum HomotopyError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("sample resolution too coarse: max wrapping residual {max_residual}")]
    ResolutionTooCoarse { max_residual: f64 },
    #[error("value is not regular: {0}")]
    NotRegular(String),
    #[error("geometry error: {0}")]
    Geometry(#[from] crate::geometry::GeometryError),
}

/// A full set of wrapping numbers `w[vertex][sector]`, with the optional
/// companion invariants carried along for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HomotopyClass {
    pub wrapping: Vec<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edge_orientations: Option<Vec<i8>>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "kink")]
    pub kink_numbers: Option<Vec<i32>>,
    #[serde(default, skip_serializing_if = "Option::is_none", rename = "trapped")]
    pub trapped_areas: Option<Vec<f64>>,
}

impl HomotopyClass {
    pub fn from_wrapping(wrapping: Vec<Vec<i32>>) -> Self {
        Self { wrapping, edge_orientations: None, kink_numbers: None, trapped_areas: None }
    }

    pub fn zero(vertices: usize, sectors: usize) -> Self {
        Self::from_wrapping(vec![vec![0; sectors]; vertices])
    }

    pub fn is_zero(&self) -> bool {
        self.wrapping.iter().all(|row| row.iter().all(|&w| w == 0))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("class serialization cannot fail")
    }

    pub fn from_json(s: &str) -> Result<Self, HomotopyError> {
        serde_json::from_str(s).map_err(|e| HomotopyError::InvalidInput(format!("class JSON: {e}")))
    }
}

/// A violated admissibility rule.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Wrapping numbers in one sector do not sum to zero over the vertices.
    SectorSum { sector: usize, sum: i32 },
    /// Trapped areas do not sum to zero (mod 4π).
    TrappedAreaSum { sum: f64 },
}

/// Checks the admissibility sum rules: for every sector the wrapping numbers
/// sum to zero over vertices, and trapped areas (when present) sum to zero
/// mod 4π. Kink numbers are stored and reported but not validated; the
/// per-face kink sum rule has no stated closed form.
///
/// Returns the list of violated rules (empty = admissible).
pub fn validate_class(h: &HomotopyClass) -> Result<Vec<Violation>, HomotopyError> {
    let rows = h.wrapping.len();
    if rows == 0 {
        return Err(HomotopyError::InvalidInput("empty wrapping matrix".into()));
    }
    let cols = h.wrapping[0].len();
    if h.wrapping.iter().any(|r| r.len() != cols) {
        return Err(HomotopyError::InvalidInput(
            "ragged wrapping matrix (rows of unequal length)".into(),
        ));
    }
    let mut violations = Vec::new();
    for sigma in 0..cols {
        let sum: i32 = h.wrapping.iter().map(|r| r[sigma]).sum();
        if sum != 0 {
            violations.push(Violation::SectorSum { sector: sigma, sum });
        }
    }
    if let Some(trapped) = &h.trapped_areas {
        let sum: f64 = trapped.iter().sum();
        let four_pi = 4.0 * std::f64::consts::PI;
        let wrapped = sum - four_pi * (sum / four_pi).round();
        if wrapped.abs() > 1e-9 {
            violations.push(Violation::TrappedAreaSum { sum: wrapped });
        }
    }
    Ok(violations)
}

/// A reflection-symmetric prism class: wrapping numbers about the origin
/// vertex (one per coordinate octant), the χ offset of the improved bound,
/// and the prism dimensions.
///
/// Octant indexing: index bits (2,1,0) give the signs of (x,y,z), bit 0 = `+`
/// and bit 1 = `−`; octant 0 is (+,+,+), octant 7 is (−,−,−).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReflSymClass {
    pub octant_wrapping: [i32; 8],
    /// 0 or 1, fixed by the signs of the edge orientations and kink numbers.
    /// Always an explicit input; no inference rule is implemented.
    pub chi: u8,
    pub dims: (f64, f64, f64),
}

impl ReflSymClass {
    pub fn new(octant_wrapping: [i32; 8], chi: u8, dims: (f64, f64, f64)) -> Result<Self, HomotopyError> {
        if chi > 1 {
            return Err(HomotopyError::InvalidInput(format!("chi must be 0 or 1, got {chi}")));
        }
        let (lx, ly, lz) = dims;
        if !(lz > 0.0 && ly >= lz && lx >= ly) {
            return Err(HomotopyError::InvalidInput(format!(
                "prism dims must satisfy Lx >= Ly >= Lz > 0, got {dims:?}"
            )));
        }
        Ok(Self { octant_wrapping, chi, dims })
    }

    /// The single-octant class: one wrapping number −1 on (+,+,+).
    pub fn h0(dims: (f64, f64, f64)) -> Self {
        let mut w = [0; 8];
        w[0] = -1;
        Self { octant_wrapping: w, chi: 0, dims }
    }

    /// The three-contiguous-octant class: −1 on (+,+,+), (−,+,+), (+,−,+).
    pub fn h1(dims: (f64, f64, f64)) -> Self {
        let mut w = [0; 8];
        w[0] = -1; // (+,+,+)
        w[4] = -1; // (−,+,+)
        w[2] = -1; // (+,−,+)
        Self { octant_wrapping: w, chi: 0, dims }
    }

    /// Conformal means every nonzero octant wrapping number has one sign.
    pub fn is_conformal(&self) -> bool {
        let has_pos = self.octant_wrapping.iter().any(|&w| w > 0);
        let has_neg = self.octant_wrapping.iter().any(|&w| w < 0);
        !(has_pos && has_neg)
    }

    pub fn total_abs_wrapping(&self) -> i32 {
        self.octant_wrapping.iter().map(|w| w.abs()).sum()
    }
}

/// Unit direction in the interior of octant `k` (bit convention above).
pub fn octant_direction(k: usize) -> Vec3 {
    let s = |bit: usize| if (k >> bit) & 1 == 1 { -1.0 } else { 1.0 };
    Vec3::new(s(2), s(1), s(0)).normalize()
}

/// Maps octant indices (bit convention) to sector ids of a prism partition.
pub fn octant_sector_ids(part: &SectorPartition) -> Result<[usize; 8], HomotopyError> {
    if !part.is_prism_octants() {
        return Err(HomotopyError::InvalidInput(
            "partition is not the prism octant partition".into(),
        ));
    }
    let mut ids = [0usize; 8];
    for (k, id) in ids.iter_mut().enumerate() {
        match classify_direction(part, &octant_direction(k))? {
            Location::Sector(s) => *id = s,
            Location::Boundary => {
                return Err(HomotopyError::InvalidInput(
                    "octant centre classified as boundary".into(),
                ))
            }
        }
    }
    Ok(ids)
}

/// Octants adjacent (sharing an arc) to each octant: exactly the three
/// single-bit flips in the octant index.
pub fn prism_octant_adjacency() -> [[usize; 3]; 8] {
    let mut adj = [[0usize; 3]; 8];
    for k in 0..8 {
        adj[k] = [k ^ 4, k ^ 2, k ^ 1];
    }
    adj
}

/// Expands a reflection-symmetric class to the full 8×8 wrapping matrix:
/// vertex (i,j,k) of the prism carries `(−1)^(i+j+k)` times the origin
/// wrapping numbers robustly satisfying the sector sum rule.
///
/// Vertex index convention matches [`crate::build_prism`]: vertex
/// (i,j,k) ↦ 4i + 2j + k. Columns are partition sector ids.
pub fn expand_reflection(
    rs: &ReflSymClass,
    part: &SectorPartition,
) -> Result<HomotopyClass, HomotopyError> {
    let octant_ids = octant_sector_ids(part)?;
    let mut wrapping = vec![vec![0i32; part.sector_count()]; 8];
    for i in 0..2usize {
        for j in 0..2usize {
            for k in 0..2usize {
                let v = 4 * i + 2 * j + k;
                let sign = if (i + j + k) % 2 == 0 { 1 } else { -1 };
                for (oct, &sector) in octant_ids.iter().enumerate() {
                    wrapping[v][sector] = sign * rs.octant_wrapping[oct];
                }
            }
        }
    }
    Ok(HomotopyClass::from_wrapping(wrapping))
}

/// A triangulated surface with a unit 3-vector per node: the sampled values
/// of a map into S². Only the image values and the oriented connectivity
/// matter for wrapping and degree computations; geodesic interpolation is
/// implied between nodes.
#[derive(Debug, Clone)]
pub struct SurfaceMapSample {
    nodes: Vec<Vec3>,
    triangles: Vec<[usize; 3]>,
}

impl SurfaceMapSample {
    pub fn new(nodes: Vec<Vec3>, triangles: Vec<[usize; 3]>) -> Result<Self, HomotopyError> {
        for (i, v) in nodes.iter().enumerate() {
            if (v.norm() - 1.0).abs() > 1e-10 {
                return Err(HomotopyError::InvalidInput(format!(
                    "node {i} is not unit: |v| = {}",
                    v.norm()
                )));
            }
        }
        // Oriented 2-manifold with boundary: every undirected edge is used by
        // at most two triangles, and then in opposite directions.
        use std::collections::HashMap;
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for t in &triangles {
            if t.iter().any(|&i| i >= nodes.len()) {
                return Err(HomotopyError::InvalidInput("triangle index out of range".into()));
            }
            for e in 0..3 {
                let a = t[e];
                let b = t[(e + 1) % 3];
                if a == b {
                    return Err(HomotopyError::InvalidInput("degenerate triangle edge".into()));
                }
                *directed.entry((a, b)).or_insert(0) += 1;
            }
        }
        for (&(a, b), &cnt) in &directed {
            let rev = directed.get(&(b, a)).copied().unwrap_or(0);
            if cnt > 1 || rev > 1 {
                return Err(HomotopyError::InvalidInput(
                    "triangulation is not a consistently oriented manifold".into(),
                ));
            }
        }
        Ok(Self { nodes, triangles })
    }

    pub fn nodes(&self) -> &[Vec3] {
        &self.nodes
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Total signed image area (sum of signed spherical triangle areas).
    pub fn total_signed_area(&self) -> f64 {
        let parts: Vec<f64> = self
            .triangles
            .iter()
            .map(|t| triangle_signed_area(&self.nodes[t[0]], &self.nodes[t[1]], &self.nodes[t[2]]))
            .collect();
        crate::math::tree_sum(&parts)
    }

    /// One level of geodesic midpoint refinement (each triangle into four).
    pub fn refined(&self) -> Self {
        let mut nodes = self.nodes.clone();
        let mut triangles = Vec::with_capacity(self.triangles.len() * 4);
        use std::collections::HashMap;
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, nodes: &mut Vec<Vec3>| -> usize {
            let key = (a.min(b), a.max(b));
            if let Some(&m) = midpoint.get(&key) {
                return m;
            }
            let v = (nodes[a] + nodes[b]).normalize();
            nodes.push(v);
            let m = nodes.len() - 1;
            midpoint.insert(key, m);
            m
        };
        for t in &self.triangles {
            let ab = mid(t[0], t[1], &mut nodes);
            let bc = mid(t[1], t[2], &mut nodes);
            let ca = mid(t[2], t[0], &mut nodes);
            triangles.push([t[0], ab, ca]);
            triangles.push([t[1], bc, ab]);
            triangles.push([t[2], ca, bc]);
            triangles.push([ab, bc, ca]);
        }
        Self { nodes, triangles }
    }
}

/// Geodesic triangulation of the spherical triangle with the given corners,
/// orientation following the corner order, subdivided `levels` times.
pub fn triangulate_spherical_triangle(corners: [Vec3; 3], levels: u32) -> SurfaceMapSample {
    let mut sample = SurfaceMapSample {
        nodes: corners.to_vec(),
        triangles: vec![[0, 1, 2]],
    };
    for _ in 0..levels {
        sample = sample.refined();
    }
    sample
}

/// Per-sector wrapping numbers measured from a surface sample.
#[derive(Debug, Clone)]
pub struct WrappingMeasurement {
    /// Raw signed image area per sector divided by the sector area.
    pub raw: Vec<f64>,
    /// Nearest integers.
    pub wrapping: Vec<i32>,
    /// |raw − integer| per sector.
    pub residuals: Vec<f64>,
}

impl WrappingMeasurement {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().fold(0.0, |a, &b| a.max(b))
    }
}

/// Signed image area attributed to each sector, with recursive subdivision
/// of triangles that straddle sector boundaries.
pub fn sector_signed_areas(map: &SurfaceMapSample, part: &SectorPartition) -> Vec<f64> {
    let mut acc = vec![0.0; part.sector_count()];
    for t in map.triangles() {
        let (a, b, c) = (map.nodes[t[0]], map.nodes[t[1]], map.nodes[t[2]]);
        attribute_triangle(&a, &b, &c, part, 0, &mut acc);
    }
    acc
}

fn locate_loose(part: &SectorPartition, v: &Vec3) -> Option<usize> {
    match classify_direction(part, &v.normalize()) {
        Ok(Location::Sector(i)) => Some(i),
        _ => None,
    }
}

fn attribute_triangle(
    a: &Vec3,
    b: &Vec3,
    c: &Vec3,
    part: &SectorPartition,
    depth: u32,
    acc: &mut [f64],
) {
    let area = triangle_signed_area(a, b, c);
    let centroid = (a + b + c).normalize();
    let diameter = (a - b).norm().max((b - c).norm()).max((c - a).norm());
    let la = locate_loose(part, a);
    let lb = locate_loose(part, b);
    let lc = locate_loose(part, c);
    let lm = locate_loose(part, &centroid);
    let uniform = la.is_some() && la == lb && lb == lc && lc == lm;
    if (uniform && diameter <= MAX_IMAGE_DIAMETER) || area.abs() < 1e-16 {
        if let Some(i) = lm.or(la).or(lb).or(lc) {
            acc[i] += area;
        }
        return;
    }
    if depth >= ATTRIBUTION_DEPTH {
        // Attribute the remaining sliver to the best available sector.
        if let Some(i) = lm.or(la).or(lb).or(lc) {
            acc[i] += area;
        } else if let Some(i) = part
            .sectors()
            .iter()
            .min_by(|s, t| {
                let ds = (s.polygon.centroid() - centroid).norm();
                let dt = (t.polygon.centroid() - centroid).norm();
                ds.partial_cmp(&dt).unwrap()
            })
            .map(|s| s.id)
        {
            acc[i] += area;
        }
        return;
    }
    let ab = (a + b).normalize();
    let bc = (b + c).normalize();
    let ca = (c + a).normalize();
    attribute_triangle(a, &ab, &ca, part, depth + 1, acc);
    attribute_triangle(b, &bc, &ab, part, depth + 1, acc);
    attribute_triangle(c, &ca, &bc, part, depth + 1, acc);
    attribute_triangle(&ab, &bc, &ca, part, depth + 1, acc);
}

/// Measures wrapping numbers of a cleaved-surface sample: for each sector,
/// the signed image area inside it divided by its area, rounded to the
/// nearest integer. Residuals above 0.1 are rejected as too coarse rather
/// than silently rounded.
pub fn wrapping_from_surface(
    map: &SurfaceMapSample,
    part: &SectorPartition,
) -> Result<WrappingMeasurement, HomotopyError> {
    let areas = sector_signed_areas(map, part);
    let mut raw = Vec::with_capacity(areas.len());
    let mut wrapping = Vec::with_capacity(areas.len());
    let mut residuals = Vec::with_capacity(areas.len());
    for (s, &signed) in part.sectors().iter().zip(&areas) {
        let x = signed / s.area;
        let w = x.round();
        raw.push(x);
        wrapping.push(w as i32);
        residuals.push((x - w).abs());
    }
    let m = WrappingMeasurement { raw, wrapping, residuals };
    let max_residual = m.max_residual();
    if max_residual > RESIDUAL_LIMIT {
        return Err(HomotopyError::ResolutionTooCoarse { max_residual });
    }
    Ok(m)
}

/// Algebraic and absolute degree of the piecewise-geodesic map at a regular
/// value `s`: the signed and unsigned counts of triangles covering `s`.
pub fn degree_at_value(
    map: &SurfaceMapSample,
    s: &Vec3,
) -> Result<(i32, u32), HomotopyError> {
    if (s.norm() - 1.0).abs() > 1e-10 {
        return Err(HomotopyError::InvalidInput("value is not a unit vector".into()));
    }
    let mut algebraic = 0i32;
    let mut absolute = 0u32;
    for t in map.triangles() {
        let (a, b, c) = (map.nodes[t[0]], map.nodes[t[1]], map.nodes[t[2]]);
        if a.cross(&b).dot(&c).abs() < 1e-14 && triangle_signed_area(&a, &b, &c).abs() < 1e-14 {
            continue; // degenerate image triangle covers nothing
        }
        // The half-space sign test below is blind to the antipodal triangle;
        // require s on the triangle's side of the sphere first.
        if (a + b + c).dot(s) <= 0.0 {
            continue;
        }
        let d1 = a.cross(&b).dot(s);
        let d2 = b.cross(&c).dot(s);
        let d3 = c.cross(&a).dot(s);
        let tol = 1e-9;
        let pos = d1 > tol && d2 > tol && d3 > tol;
        let neg = d1 < -tol && d2 < -tol && d3 < -tol;
        if pos {
            algebraic += 1;
            absolute += 1;
        } else if neg {
            algebraic -= 1;
            absolute += 1;
        } else {
            // Ambiguous only if s is near this triangle's boundary: at most
            // one determinant small and the others of one sign.
            let small = [d1, d2, d3].iter().filter(|d| d.abs() <= tol).count();
            if small > 0 {
                let rest_pos = [d1, d2, d3].iter().all(|&d| d > -tol);
                let rest_neg = [d1, d2, d3].iter().all(|&d| d < tol);
                if rest_pos || rest_neg {
                    return Err(HomotopyError::NotRegular(format!(
                        "value within tolerance of a triangle image edge (dets {d1:e}, {d2:e}, {d3:e})"
                    )));
                }
            }
        }
    }
    Ok((algebraic, absolute))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::arrangement::tangent_partition;
    use crate::geometry::polyhedron::build_prism;
    use crate::geometry::stereo::{inverse_stereographic, stereographic, ExtComplex};
    use num_complex::Complex64;

    fn prism_partition() -> SectorPartition {
        tangent_partition(&build_prism(1.0, 1.0, 1.0).unwrap()).unwrap()
    }

    #[test]
    fn zero_class_is_admissible() {
        let h = HomotopyClass::zero(8, 8);
        assert!(validate_class(&h).unwrap().is_empty());
    }

    #[test]
    fn single_entry_violates_sum_rule() {
        let mut h = HomotopyClass::zero(8, 8);
        h.wrapping[1][1] = 1;
        let v = validate_class(&h).unwrap();
        assert_eq!(v, vec![Violation::SectorSum { sector: 1, sum: 1 }]);
    }

    #[test]
    fn ragged_matrix_rejected() {
        let h = HomotopyClass::from_wrapping(vec![vec![0; 8], vec![0; 7]]);
        assert!(validate_class(&h).is_err());
    }

    #[test]
    fn expanded_reflection_classes_are_admissible() {
        let part = prism_partition();
        for rs in [
            ReflSymClass::h0((1.0, 1.0, 1.0)),
            ReflSymClass::h1((1.0, 1.0, 1.0)),
            ReflSymClass::new([2, -1, 0, 1, -2, 0, 1, -1], 1, (2.0, 1.5, 1.0)).unwrap(),
        ] {
            let h = expand_reflection(&rs, &part).unwrap();
            assert!(validate_class(&h).unwrap().is_empty());
        }
        // All-zero expands to all-zero.
        let z = ReflSymClass::new([0; 8], 0, (1.0, 1.0, 1.0)).unwrap();
        assert!(expand_reflection(&z, &part).unwrap().is_zero());
    }

    #[test]
    fn expansion_alternates_signs_across_reflections() {
        let part = prism_partition();
        let rs = ReflSymClass::h0((1.0, 1.0, 1.0));
        let h = expand_reflection(&rs, &part).unwrap();
        let ids = octant_sector_ids(&part).unwrap();
        let sigma = ids[0];
        // Vertex (i,j,k) ↦ 4i+2j+k carries (−1)^{i+j+k} w.
        assert_eq!(h.wrapping[0][sigma], -1);
        assert_eq!(h.wrapping[4][sigma], 1);
        assert_eq!(h.wrapping[6][sigma], -1);
        assert_eq!(h.wrapping[7][sigma], 1);
    }

    /// Identity map on the octant, oriented as seen from the vertex.
    fn identity_octant_sample(levels: u32) -> SurfaceMapSample {
        // Corner order (x̂, ẑ, ŷ) is clockwise seen from outside the sphere.
        triangulate_spherical_triangle(
            [Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 0.0, 1.0), Vec3::new(0.0, 1.0, 0.0)],
            levels,
        )
    }

    #[test]
    fn identity_octant_map_has_wrapping_minus_one() {
        let part = prism_partition();
        let sample = identity_octant_sample(4);
        let m = wrapping_from_surface(&sample, &part).unwrap();
        let ids = octant_sector_ids(&part).unwrap();
        for (oct, &sec) in ids.iter().enumerate() {
            let expect = if oct == 0 { -1 } else { 0 };
            assert_eq!(m.wrapping[sec], expect, "octant {oct}");
        }
        assert!(m.max_residual() < 0.05);
    }

    #[test]
    fn constant_map_has_zero_wrapping() {
        let part = prism_partition();
        let v = Vec3::new(1.0, 2.0, 3.0).normalize();
        let nodes = vec![v, v, v, v];
        let sample = SurfaceMapSample::new(nodes, vec![[0, 1, 2], [0, 2, 3]]).unwrap();
        let m = wrapping_from_surface(&sample, &part).unwrap();
        assert!(m.wrapping.iter().all(|&w| w == 0));
    }

    #[test]
    fn wrapping_stable_under_refinement() {
        let part = prism_partition();
        let coarse = identity_octant_sample(3);
        let fine = coarse.refined();
        let mc = wrapping_from_surface(&coarse, &part).unwrap();
        let mf = wrapping_from_surface(&fine, &part).unwrap();
        assert_eq!(mc.wrapping, mf.wrapping);
    }

    #[test]
    fn attribution_conserves_total_signed_area() {
        let part = prism_partition();
        let sample = identity_octant_sample(3);
        let per_sector = sector_signed_areas(&sample, &part);
        let total: f64 = per_sector.iter().sum();
        let direct = sample.total_signed_area();
        assert!(
            (total - direct).abs() < 1e-6 * 4.0 * std::f64::consts::PI,
            "{total} vs {direct}"
        );
    }

    /// Triangulated annulus mapped through w ↦ w² and onto the sphere.
    fn squared_annulus_sample() -> SurfaceMapSample {
        let n_theta = 96;
        let n_r = 8;
        let r0 = 0.5;
        let r1 = 1.5;
        let mut nodes = Vec::new();
        for ir in 0..=n_r {
            let r = r0 + (r1 - r0) * ir as f64 / n_r as f64;
            for it in 0..n_theta {
                let th = 2.0 * std::f64::consts::PI * it as f64 / n_theta as f64;
                let w = Complex64::new(r * th.cos(), r * th.sin());
                let w2 = w * w;
                nodes.push(inverse_stereographic(&ExtComplex::Finite(w2)));
            }
        }
        let mut triangles = Vec::new();
        let idx = |ir: usize, it: usize| ir * n_theta + (it % n_theta);
        for ir in 0..n_r {
            for it in 0..n_theta {
                let a = idx(ir, it);
                let b = idx(ir, it + 1);
                let c = idx(ir + 1, it);
                let d = idx(ir + 1, it + 1);
                // Counterclockwise in the parameter plane.
                triangles.push([a, d, b]);
                triangles.push([a, c, d]);
            }
        }
        SurfaceMapSample::new(nodes, triangles).unwrap()
    }

    /// Brute-force oracle: count preimages of s by walking every triangle.
    fn brute_force_degree(sample: &SurfaceMapSample, s: &Vec3) -> (i32, u32) {
        let mut alg = 0;
        let mut abs = 0;
        for t in sample.triangles() {
            let (a, b, c) = (
                sample.nodes()[t[0]],
                sample.nodes()[t[1]],
                sample.nodes()[t[2]],
            );
            if (a + b + c).dot(s) <= 0.0 {
                continue;
            }
            let d1 = a.cross(&b).dot(s);
            let d2 = b.cross(&c).dot(s);
            let d3 = c.cross(&a).dot(s);
            if d1 > 0.0 && d2 > 0.0 && d3 > 0.0 {
                alg += 1;
                abs += 1;
            } else if d1 < 0.0 && d2 < 0.0 && d3 < 0.0 {
                alg -= 1;
                abs += 1;
            }
        }
        (alg, abs)
    }

    #[test]
    fn squared_map_has_degree_two() {
        let sample = squared_annulus_sample();
        // Generic value in the doubly covered annular image: w-plane radius
        // ~1 with argument away from the grid lines.
        let p = Complex64::from_polar(1.1, 0.83);
        let s = inverse_stereographic(&ExtComplex::Finite(p));
        let (alg, abs) = degree_at_value(&sample, &s).unwrap();
        assert_eq!((alg, abs), (2, 2));
        assert_eq!(brute_force_degree(&sample, &s), (2, 2));
        assert!(abs as i32 >= alg.abs());
    }

    #[test]
    fn value_outside_image_has_degree_zero() {
        let sample = squared_annulus_sample();
        // w² image excludes a disk around 0: pick s near the north pole.
        let s = inverse_stereographic(&ExtComplex::finite(0.01, 0.02));
        let (alg, abs) = degree_at_value(&sample, &s).unwrap();
        assert_eq!((alg, abs), (0, 0));
    }

    #[test]
    fn identity_octant_degree_is_single_cover() {
        let sample = identity_octant_sample(4);
        let s = Vec3::new(1.0, 1.2, 0.9).normalize();
        let (alg, abs) = degree_at_value(&sample, &s).unwrap();
        assert_eq!(abs, 1);
        assert_eq!(alg, -1); // clockwise orientation convention
    }

    #[test]
    fn class_json_round_trip() {
        let part = prism_partition();
        let h = expand_reflection(&ReflSymClass::h1((1.0, 1.0, 1.0)), &part).unwrap();
        let s = h.to_json();
        let h2 = HomotopyClass::from_json(&s).unwrap();
        assert_eq!(h, h2);
        assert!(s.contains("\"wrapping\""));
    }

    #[test]
    fn non_unit_node_rejected() {
        let r = SurfaceMapSample::new(
            vec![Vec3::new(1.0, 0.0, 0.0), Vec3::new(0.0, 2.0, 0.0), Vec3::new(0.0, 0.0, 1.0)],
            vec![[0, 1, 2]],
        );
        assert!(r.is_err());
    }

    #[test]
    fn stereographic_of_unit_circle_lands_on_equator() {
        // Consistency of the stereo convention used by the squared-map test.
        let w = stereographic(&Vec3::new(0.0, 1.0, 0.0));
        assert!((w.as_finite().unwrap() - Complex64::new(0.0, 1.0)).norm() < 1e-14);
    }
}
