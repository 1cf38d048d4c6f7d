//! The arrangement on S² of great circles tangent to the faces of a convex
//! polyhedron, and its open sectors.

use super::polyhedron::Polyhedron;
use super::spherical::{polygon_area, SphericalPolygon};
use super::GeometryError;
use crate::math::signed_angle_around;
use crate::Vec3;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// Angular tolerance for deduplicating circle normals (up to sign).
const NORMAL_DEDUP_TOL: f64 = 1e-10;
/// Tolerance for exact-sign predicates on dot products.
const SIGN_TOL: f64 = 1e-12;
/// Angular distance to a circle below which a direction counts as boundary.
const BOUNDARY_TOL: f64 = 1e-9;

/// One sector: an open spherical polygon of S² minus the tangent circles.
#[derive(Debug, Clone)]
pub struct Sector {
    pub id: usize,
    pub polygon: SphericalPolygon,
    /// Area in steradians (positive).
    pub area: f64,
    /// Sign of the dot product with each circle normal, per circle.
    pub signs: Vec<i8>,
    /// Ids of sectors sharing a boundary arc.
    pub adjacent: Vec<usize>,
}

/// The full arrangement: deduplicated circles and the sectors they cut.
#[derive(Debug, Clone)]
pub struct SectorPartition {
    circles: Vec<Vec3>,
    sectors: Vec<Sector>,
    sign_lookup: HashMap<Vec<i8>, usize>,
}

/// Result of locating a direction in the partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Sector(usize),
    Boundary,
}

#[derive(Serialize, Deserialize)]
struct PartitionJson {
    circles: Vec<[f64; 3]>,
    sectors: Vec<SectorJson>,
}

#[derive(Serialize, Deserialize)]
struct SectorJson {
    id: usize,
    vertices: Vec<[f64; 3]>,
    area: f64,
    adjacent: Vec<usize>,
}

impl SectorPartition {
    /// Unit normals of the deduplicated tangent great circles.
    pub fn circles(&self) -> &[Vec3] {
        &self.circles
    }

    pub fn sectors(&self) -> &[Sector] {
        &self.sectors
    }

    pub fn sector_count(&self) -> usize {
        self.sectors.len()
    }

    pub fn total_area(&self) -> f64 {
        self.sectors.iter().map(|s| s.area).sum()
    }

    /// JSON export with circle normals, per-sector vertex lists, and areas.
    pub fn to_json(&self) -> String {
        let j = PartitionJson {
            circles: self.circles.iter().map(|n| [n.x, n.y, n.z]).collect(),
            sectors: self
                .sectors
                .iter()
                .map(|s| SectorJson {
                    id: s.id,
                    vertices: s.polygon.vertices().iter().map(|v| [v.x, v.y, v.z]).collect(),
                    area: s.area,
                    adjacent: s.adjacent.clone(),
                })
                .collect(),
        };
        serde_json::to_string(&j).expect("partition serialization cannot fail")
    }

    /// True if this is the coordinate-octant partition of a rectangular prism
    /// (three axis-aligned circles, eight sectors).
    pub fn is_prism_octants(&self) -> bool {
        if self.circles.len() != 3 || self.sectors.len() != 8 {
            return false;
        }
        let mut axes = [false; 3];
        for n in &self.circles {
            for (k, e) in [Vec3::x(), Vec3::y(), Vec3::z()].iter().enumerate() {
                if n.cross(e).norm() < 1e-9 {
                    axes[k] = true;
                }
            }
        }
        axes.iter().all(|&b| b)
    }
}

/// Computes the tangent great-circle arrangement of a polyhedron.
///
/// Face normals are deduplicated up to sign; the sectors are the connected
/// components (equivalently, the nonempty open sign cells) of the complement,
/// each reported with its boundary polygon, area, and arc-adjacency.
pub fn tangent_partition(p: &Polyhedron) -> Result<SectorPartition, GeometryError> {
    let mut circles: Vec<Vec3> = Vec::new();
    for f in p.faces() {
        let n = canonical_sign(f.normal);
        if !circles.iter().any(|m| (m - n).norm() < NORMAL_DEDUP_TOL) {
            circles.push(n);
        }
    }
    build_partition(circles)
}

fn canonical_sign(n: Vec3) -> Vec3 {
    // Flip so the component of largest magnitude is positive.
    let a = [n.x.abs(), n.y.abs(), n.z.abs()];
    let i = (0..3).max_by(|&u, &v| a[u].partial_cmp(&a[v]).unwrap()).unwrap();
    if n[i] < 0.0 {
        -n
    } else {
        n
    }
}

/// Builds the arrangement of the given great circles (unit normals, already
/// deduplicated up to sign).
pub fn build_partition(circles: Vec<Vec3>) -> Result<SectorPartition, GeometryError> {
    let k = circles.len();
    if k < 2 {
        return Err(GeometryError::Degeneracy(format!(
            "arrangement needs at least 2 distinct circles, got {k}"
        )));
    }

    // Arrangement vertices: pairwise intersections, merged across circles.
    let mut verts: Vec<Vec3> = Vec::new();
    let add_vertex = |v: Vec3, verts: &mut Vec<Vec3>| -> usize {
        for (i, u) in verts.iter().enumerate() {
            if (u - v).norm() < NORMAL_DEDUP_TOL {
                return i;
            }
        }
        verts.push(v);
        verts.len() - 1
    };
    for i in 0..k {
        for j in (i + 1)..k {
            let c = circles[i].cross(&circles[j]);
            if c.norm() < NORMAL_DEDUP_TOL {
                return Err(GeometryError::Degeneracy(
                    "coincident circles survived deduplication".into(),
                ));
            }
            let c = c.normalize();
            add_vertex(c, &mut verts);
            add_vertex(-c, &mut verts);
        }
    }

    // Arcs: consecutive vertices around each circle, counterclockwise.
    // Arc a->b stores its circle; half-edge ids are 2*arc (ccw) and 2*arc+1 (cw).
    struct Arc {
        circle: usize,
        a: usize,
        b: usize,
    }
    let mut arcs: Vec<Arc> = Vec::new();
    for (ci, n) in circles.iter().enumerate() {
        let mut on: Vec<usize> = (0..verts.len())
            .filter(|&vi| verts[vi].dot(n).abs() < 1e-9)
            .collect();
        if on.len() < 3 {
            return Err(GeometryError::Degeneracy(format!(
                "circle {ci} carries only {} arrangement vertices",
                on.len()
            )));
        }
        // Sort by angle in a frame perpendicular to n.
        let ref_axis = if n.x.abs() < 0.9 { Vec3::x() } else { Vec3::y() };
        let u = (ref_axis - n * n.dot(&ref_axis)).normalize();
        let w = n.cross(&u);
        on.sort_by(|&p, &q| {
            let ap = verts[p].dot(&w).atan2(verts[p].dot(&u));
            let aq = verts[q].dot(&w).atan2(verts[q].dot(&u));
            ap.partial_cmp(&aq).unwrap()
        });
        for idx in 0..on.len() {
            let a = on[idx];
            let b = on[(idx + 1) % on.len()];
            if (verts[a] + verts[b]).norm() < 1e-9 {
                return Err(GeometryError::Degeneracy(
                    "antipodal consecutive arrangement vertices".into(),
                ));
            }
            arcs.push(Arc { circle: ci, a, b });
        }
    }

    // Outgoing half-edges per vertex, with their departure tangents.
    // Half-edge h = 2*arc + d: d = 0 travels a->b (ccw around the circle
    // normal), d = 1 travels b->a.
    let origin = |h: usize| -> usize {
        let arc = &arcs[h / 2];
        if h % 2 == 0 {
            arc.a
        } else {
            arc.b
        }
    };
    let target = |h: usize| -> usize {
        let arc = &arcs[h / 2];
        if h % 2 == 0 {
            arc.b
        } else {
            arc.a
        }
    };
    let tangent_at = |h: usize, at: usize| -> Vec3 {
        let arc = &arcs[h / 2];
        let t = circles[arc.circle].cross(&verts[at]).normalize();
        if h % 2 == 0 {
            t
        } else {
            -t
        }
    };
    let mut out_edges: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for h in 0..2 * arcs.len() {
        out_edges[origin(h)].push(h);
    }

    // Left-face traversal: at the head of h, continue with the outgoing
    // half-edge of largest counterclockwise angle from the reversed arrival
    // direction (the twin sits at angle 0 and is excluded).
    let twin = |h: usize| -> usize { h ^ 1 };
    let next_halfedge = |h: usize| -> Result<usize, GeometryError> {
        let v = target(h);
        let d_rev = -tangent_at(h, v);
        let mut best: Option<(f64, usize)> = None;
        for &e in &out_edges[v] {
            if e == twin(h) {
                continue;
            }
            let t = tangent_at(e, v);
            let mut ang = signed_angle_around(&d_rev, &t, &verts[v]);
            if ang <= SIGN_TOL {
                ang += 2.0 * std::f64::consts::PI;
            }
            if best.map_or(true, |(a, _)| ang > a) {
                best = Some((ang, e));
            }
        }
        best.map(|(_, e)| e).ok_or_else(|| {
            GeometryError::Degeneracy("dead-end vertex in arrangement".into())
        })
    };

    let mut face_of = vec![usize::MAX; 2 * arcs.len()];
    let mut faces: Vec<Vec<usize>> = Vec::new(); // half-edge cycles
    for h0 in 0..2 * arcs.len() {
        if face_of[h0] != usize::MAX {
            continue;
        }
        let fid = faces.len();
        let mut cycle = Vec::new();
        let mut h = h0;
        loop {
            if face_of[h] != usize::MAX {
                return Err(GeometryError::Degeneracy(
                    "face traversal revisited a half-edge".into(),
                ));
            }
            face_of[h] = fid;
            cycle.push(h);
            h = next_halfedge(h)?;
            if h == h0 {
                break;
            }
            if cycle.len() > 4 * arcs.len() {
                return Err(GeometryError::Degeneracy("unterminated face walk".into()));
            }
        }
        faces.push(cycle);
    }

    // Euler check for the arrangement graph.
    let (nv, ne, nf) = (verts.len(), arcs.len(), faces.len());
    if nv as i64 - ne as i64 + nf as i64 != 2 {
        return Err(GeometryError::Degeneracy(format!(
            "arrangement Euler relation violated: {nv} - {ne} + {nf} != 2"
        )));
    }

    // Assemble sectors.
    let mut sectors = Vec::with_capacity(nf);
    let mut sign_lookup = HashMap::new();
    for (fid, cycle) in faces.iter().enumerate() {
        let vertex_cycle: Vec<Vec3> = cycle.iter().map(|&h| verts[origin(h)]).collect();
        let polygon = SphericalPolygon::new(vertex_cycle)?;
        let area = polygon_area(&polygon)?;
        if area <= 0.0 {
            return Err(GeometryError::Degeneracy(format!(
                "sector {fid} has non-positive area {area}"
            )));
        }
        let interior = polygon.centroid();
        let signs: Vec<i8> = circles
            .iter()
            .map(|n| if interior.dot(n) > 0.0 { 1 } else { -1 })
            .collect();
        // Interior point must be clear of every circle.
        if circles.iter().any(|n| interior.dot(n).abs() < SIGN_TOL) {
            return Err(GeometryError::Degeneracy(format!(
                "sector {fid} interior point sits on a circle"
            )));
        }
        if sign_lookup.insert(signs.clone(), fid).is_some() {
            return Err(GeometryError::Degeneracy(
                "two sectors share a sign vector".into(),
            ));
        }
        sectors.push(Sector { id: fid, polygon, area, signs, adjacent: Vec::new() });
    }

    // Arc adjacency: the two half-edges of an arc bound the two neighbors.
    for arc_id in 0..arcs.len() {
        let f0 = face_of[2 * arc_id];
        let f1 = face_of[2 * arc_id + 1];
        if f0 != f1 {
            if !sectors[f0].adjacent.contains(&f1) {
                sectors[f0].adjacent.push(f1);
            }
            if !sectors[f1].adjacent.contains(&f0) {
                sectors[f1].adjacent.push(f0);
            }
        }
    }
    for s in &mut sectors {
        s.adjacent.sort_unstable();
    }

    Ok(SectorPartition { circles, sectors, sign_lookup })
}

/// Locates a unit direction: the sector containing it, or `Boundary` when
/// within angular tolerance 1e-9 of any circle.
pub fn classify_direction(part: &SectorPartition, e: &Vec3) -> Result<Location, GeometryError> {
    if (e.norm() - 1.0).abs() > 1e-12 {
        return Err(GeometryError::InvalidInput(format!(
            "direction is not unit: |e| = {}",
            e.norm()
        )));
    }
    let mut signs = Vec::with_capacity(part.circles.len());
    for n in &part.circles {
        let d = e.dot(n);
        if d.abs() < BOUNDARY_TOL {
            return Ok(Location::Boundary);
        }
        signs.push(if d > 0.0 { 1 } else { -1 });
    }
    part.sign_lookup
        .get(&signs)
        .map(|&id| Location::Sector(id))
        .ok_or_else(|| {
            GeometryError::InvalidInput("direction could not be matched to a sector".into())
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::polyhedron::{build_convex, build_prism};
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn prism_partition_is_eight_octants() {
        let p = build_prism(2.0, 1.0, 0.5).unwrap();
        let part = tangent_partition(&p).unwrap();
        assert_eq!(part.circles().len(), 3);
        assert_eq!(part.sector_count(), 8);
        for s in part.sectors() {
            assert!((s.area - FRAC_PI_2).abs() < 1e-12, "octant area {}", s.area);
            assert_eq!(s.adjacent.len(), 3);
        }
        assert!((part.total_area() - 4.0 * PI).abs() < 1e-9);
        assert!(part.is_prism_octants());
    }

    #[test]
    fn tetrahedron_partition_has_fourteen_sectors() {
        let p = build_convex(&[
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ])
        .unwrap();
        let part = tangent_partition(&p).unwrap();
        assert_eq!(part.sector_count(), 14);
        assert!((part.total_area() - 4.0 * PI).abs() < 1e-9);
        assert!(!part.is_prism_octants());
    }

    /// Hexahedron with generically perturbed face planes but cube combinatorics.
    pub fn perturbed_hexahedron() -> crate::geometry::polyhedron::Polyhedron {
        // Plane pairs near x, y, z with slightly tilted normals.
        let planes = [
            (Vec3::new(-1.0, 0.03, -0.02).normalize(), 0.0),
            (Vec3::new(1.0, -0.01, 0.04).normalize(), 1.0),
            (Vec3::new(0.02, -1.0, 0.05).normalize(), 0.0),
            (Vec3::new(-0.04, 1.0, 0.01).normalize(), 1.0),
            (Vec3::new(0.05, 0.02, -1.0).normalize(), 0.0),
            (Vec3::new(-0.03, -0.05, 1.0).normalize(), 1.0),
        ];
        // Vertices: intersect one plane from each axis pair (cube corners).
        let mut pts = Vec::new();
        for ix in 0..2 {
            for iy in 0..2 {
                for iz in 0..2 {
                    let (n1, c1) = planes[ix];
                    let (n2, c2) = planes[2 + iy];
                    let (n3, c3) = planes[4 + iz];
                    let m = nalgebra::Matrix3::from_rows(&[
                        n1.transpose(),
                        n2.transpose(),
                        n3.transpose(),
                    ]);
                    let b = Vec3::new(
                        c1 * if ix == 0 { -1.0 } else { 1.0 },
                        c2 * if iy == 0 { -1.0 } else { 1.0 },
                        c3 * if iz == 0 { -1.0 } else { 1.0 },
                    );
                    let v = m.lu().solve(&b).unwrap();
                    pts.push(v);
                }
            }
        }
        build_convex(&pts).unwrap()
    }

    #[test]
    fn generic_hexahedron_has_generic_sector_count() {
        let p = perturbed_hexahedron();
        assert_eq!(p.face_count(), 6);
        let part = tangent_partition(&p).unwrap();
        // f² − f + 2 with f = 6 distinct circles.
        assert_eq!(part.sector_count(), 32);
        assert!((part.total_area() - 4.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn classify_octants_and_boundaries() {
        let p = build_prism(1.0, 1.0, 1.0).unwrap();
        let part = tangent_partition(&p).unwrap();
        let e1 = Vec3::new(1.0, 1.0, 1.0).normalize();
        let e2 = Vec3::new(-1.0, 1.0, 1.0).normalize();
        let s1 = classify_direction(&part, &e1).unwrap();
        let s2 = classify_direction(&part, &e2).unwrap();
        assert_ne!(s1, Location::Boundary);
        assert_ne!(s2, Location::Boundary);
        assert_ne!(s1, s2);
        assert_eq!(
            classify_direction(&part, &Vec3::new(1.0, 0.0, 0.0)).unwrap(),
            Location::Boundary
        );
        assert!(classify_direction(&part, &Vec3::new(0.5, 0.5, 0.5)).is_err());
    }

    #[test]
    fn monte_carlo_classification_matches_areas() {
        let p = build_convex(&[
            Vec3::new(1.0, 1.0, 1.0),
            Vec3::new(1.0, -1.0, -1.0),
            Vec3::new(-1.0, 1.0, -1.0),
            Vec3::new(-1.0, -1.0, 1.0),
        ])
        .unwrap();
        let part = tangent_partition(&p).unwrap();
        let n = 100_000usize;
        let mut counts = vec![0usize; part.sector_count()];
        let mut boundary = 0usize;
        let mut s = 0x853c49e6748fea9bu64;
        for _ in 0..n {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (s >> 11) as f64 / (1u64 << 53) as f64;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = (s >> 11) as f64 / (1u64 << 53) as f64;
            let z = 2.0 * a - 1.0;
            let phi = 2.0 * PI * b;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let e = Vec3::new(r * phi.cos(), r * phi.sin(), z).normalize();
            match classify_direction(&part, &e).unwrap() {
                Location::Sector(i) => counts[i] += 1,
                Location::Boundary => boundary += 1,
            }
        }
        assert!(boundary < 10); // measure-zero boundary
        for sct in part.sectors() {
            let frac = counts[sct.id] as f64 / n as f64;
            let est = 4.0 * PI * frac;
            let se = 4.0 * PI * (frac * (1.0 - frac) / n as f64).sqrt();
            assert!(
                (est - sct.area).abs() <= 3.0 * se + 1e-9,
                "sector {} area {} vs MC {} (se {})",
                sct.id,
                sct.area,
                est,
                se
            );
        }
    }
}
