//! Convex polyhedra with full vertex/edge/face incidence.

use super::spherical::SphericalPolygon;
use super::GeometryError;
use crate::Vec3;
use serde::{Deserialize, Serialize};

/// A face: vertex indices in counterclockwise order seen from outside, plus
/// the outward unit normal.
#[derive(Debug, Clone)]
pub struct Face {
    pub vertex_ids: Vec<usize>,
    pub normal: Vec3,
}

/// An edge: the two endpoint vertex ids (low index first), the unit direction
/// from the first to the second, and the two incident face ids.
#[derive(Debug, Clone)]
pub struct Edge {
    pub vertices: (usize, usize),
    pub direction: Vec3,
    pub faces: (usize, usize),
}

/// A convex polyhedron. Immutable after construction; all constructors
/// validate convexity and the Euler relation v − e + f = 2.
#[derive(Debug, Clone)]
pub struct Polyhedron {
    vertices: Vec<Vec3>,
    faces: Vec<Face>,
    edges: Vec<Edge>,
    prism_dims: Option<(f64, f64, f64)>,
}

#[derive(Serialize, Deserialize)]
struct PolyhedronJson {
    vertices: Vec<[f64; 3]>,
    faces: Vec<Vec<usize>>,
}

impl Polyhedron {
    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// Prism side lengths (Lx, Ly, Lz) when built by [`build_prism`].
    pub fn prism_dims(&self) -> Option<(f64, f64, f64)> {
        self.prism_dims
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    /// Centroid of the vertex set.
    pub fn centroid(&self) -> Vec3 {
        self.vertices.iter().sum::<Vec3>() / self.vertices.len() as f64
    }

    /// Ids of edges incident at vertex `a`.
    pub fn edges_at_vertex(&self, a: usize) -> Vec<usize> {
        self.edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.vertices.0 == a || e.vertices.1 == a)
            .map(|(i, _)| i)
            .collect()
    }

    /// Length of the shortest edge incident at vertex `a`.
    pub fn min_edge_length_at(&self, a: usize) -> f64 {
        self.edges_at_vertex(a)
            .iter()
            .map(|&i| {
                let (u, v) = self.edges[i].vertices;
                (self.vertices[u] - self.vertices[v]).norm()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// Serializes as `{"vertices": [[x,y,z],...], "faces": [[i,j,...],...]}`.
    pub fn to_json(&self) -> String {
        let j = PolyhedronJson {
            vertices: self.vertices.iter().map(|v| [v.x, v.y, v.z]).collect(),
            faces: self.faces.iter().map(|f| f.vertex_ids.clone()).collect(),
        };
        serde_json::to_string(&j).expect("polyhedron serialization cannot fail")
    }

    /// Rebuilds a polyhedron from the JSON schema; normals and edges are
    /// recomputed and the usual invariants validated.
    pub fn from_json(s: &str) -> Result<Self, GeometryError> {
        let j: PolyhedronJson = serde_json::from_str(s)
            .map_err(|e| GeometryError::InvalidInput(format!("polyhedron JSON: {e}")))?;
        let vertices: Vec<Vec3> = j.vertices.iter().map(|p| Vec3::new(p[0], p[1], p[2])).collect();
        let centroid = vertices.iter().sum::<Vec3>() / vertices.len().max(1) as f64;
        let mut faces = Vec::new();
        for ids in j.faces {
            if ids.len() < 3 || ids.iter().any(|&i| i >= vertices.len()) {
                return Err(GeometryError::InvalidInput("bad face index list".into()));
            }
            let mut ids = ids;
            let a = vertices[ids[0]];
            let b = vertices[ids[1]];
            let c = vertices[ids[2]];
            let mut normal = (b - a).cross(&(c - a));
            if normal.norm() < 1e-14 {
                return Err(GeometryError::Degeneracy("degenerate face".into()));
            }
            normal.normalize_mut();
            if normal.dot(&(a - centroid)) < 0.0 {
                normal = -normal;
                ids.reverse();
            }
            faces.push(Face { vertex_ids: ids, normal });
        }
        finish_polyhedron(vertices, faces, None)
    }
}

/// Builds a rectangular prism `[0,Lx]×[0,Ly]×[0,Lz]` with the origin at a
/// vertex and edges along the coordinate axes. Requires `Lx ≥ Ly ≥ Lz > 0`.
pub fn build_prism(lx: f64, ly: f64, lz: f64) -> Result<Polyhedron, GeometryError> {
    if !(lz > 0.0 && ly >= lz && lx >= ly) || !lx.is_finite() {
        return Err(GeometryError::InvalidDimension(lx, ly, lz));
    }
    // Vertex (i,j,k) ↦ index i*4 + j*2 + k.
    let mut vertices = Vec::with_capacity(8);
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                vertices.push(Vec3::new(i as f64 * lx, j as f64 * ly, k as f64 * lz));
            }
        }
    }
    let idx = |i: usize, j: usize, k: usize| i * 4 + j * 2 + k;
    // Faces listed with outward normals; vertex order counterclockwise from outside.
    let face_data: [(Vec3, [usize; 4]); 6] = [
        (Vec3::new(-1.0, 0.0, 0.0), [idx(0, 0, 0), idx(0, 0, 1), idx(0, 1, 1), idx(0, 1, 0)]),
        (Vec3::new(1.0, 0.0, 0.0), [idx(1, 0, 0), idx(1, 1, 0), idx(1, 1, 1), idx(1, 0, 1)]),
        (Vec3::new(0.0, -1.0, 0.0), [idx(0, 0, 0), idx(1, 0, 0), idx(1, 0, 1), idx(0, 0, 1)]),
        (Vec3::new(0.0, 1.0, 0.0), [idx(0, 1, 0), idx(0, 1, 1), idx(1, 1, 1), idx(1, 1, 0)]),
        (Vec3::new(0.0, 0.0, -1.0), [idx(0, 0, 0), idx(0, 1, 0), idx(1, 1, 0), idx(1, 0, 0)]),
        (Vec3::new(0.0, 0.0, 1.0), [idx(0, 0, 1), idx(1, 0, 1), idx(1, 1, 1), idx(0, 1, 1)]),
    ];
    let faces = face_data
        .iter()
        .map(|(n, ids)| Face { vertex_ids: ids.to_vec(), normal: *n })
        .collect();
    finish_polyhedron(vertices, faces, Some((lx, ly, lz)))
}

/// Builds the convex hull of a point set, merging coplanar facets into single
/// polygonal faces. Needs at least 4 affinely independent points.
///
/// Desk-scale plane-enumeration hull: every supporting plane through three
/// input points is tested against the whole set. Robust to coplanar inputs
/// (cube corners and the like) without perturbation.
pub fn build_convex(points: &[Vec3]) -> Result<Polyhedron, GeometryError> {
    // Deduplicate points.
    let scale = points
        .iter()
        .flat_map(|p| [p.x.abs(), p.y.abs(), p.z.abs()])
        .fold(1e-30, f64::max);
    let mut pts: Vec<Vec3> = Vec::new();
    for p in points {
        if !pts.iter().any(|q| (p - q).norm() < 1e-12 * scale) {
            pts.push(*p);
        }
    }
    if pts.len() < 4 {
        return Err(GeometryError::Degeneracy(format!(
            "need at least 4 distinct points, got {}",
            pts.len()
        )));
    }
    // Affine-rank check.
    let mut max_vol: f64 = 0.0;
    for i in 1..pts.len() {
        for j in (i + 1)..pts.len() {
            for k in (j + 1)..pts.len() {
                let v = (pts[i] - pts[0])
                    .cross(&(pts[j] - pts[0]))
                    .dot(&(pts[k] - pts[0]))
                    .abs();
                max_vol = max_vol.max(v);
            }
        }
    }
    if max_vol < 1e-10 * scale * scale * scale {
        return Err(GeometryError::Degeneracy("input points are coplanar".into()));
    }

    let tol = 1e-9 * scale;
    // Enumerate supporting planes.
    let mut planes: Vec<(Vec3, f64)> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut nor = (pts[j] - pts[i]).cross(&(pts[k] - pts[i]));
                if nor.norm() < 1e-12 * scale * scale {
                    continue;
                }
                nor.normalize_mut();
                let off = nor.dot(&pts[i]);
                let mut above = false;
                let mut below = false;
                for p in &pts {
                    let d = nor.dot(p) - off;
                    if d > tol {
                        above = true;
                    } else if d < -tol {
                        below = true;
                    }
                    if above && below {
                        break;
                    }
                }
                if above && below {
                    continue;
                }
                // Orient outward.
                let (nor, off) = if above { (-nor, -off) } else { (nor, off) };
                if !planes
                    .iter()
                    .any(|(m, c)| (m - nor).norm() < 1e-9 && (c - off).abs() < tol)
                {
                    planes.push((nor, off));
                }
            }
        }
    }

    // Supporting vertices per plane; hull vertices lie on >= 3 planes.
    let mut on_plane: Vec<Vec<usize>> = vec![Vec::new(); planes.len()];
    let mut plane_count = vec![0usize; n];
    for (pi, (nor, off)) in planes.iter().enumerate() {
        for (qi, p) in pts.iter().enumerate() {
            if (nor.dot(p) - off).abs() <= tol {
                on_plane[pi].push(qi);
                plane_count[qi] += 1;
            }
        }
    }
    let keep: Vec<usize> = (0..n).filter(|&i| plane_count[i] >= 3).collect();
    let remap: Vec<Option<usize>> = {
        let mut r = vec![None; n];
        for (new, &old) in keep.iter().enumerate() {
            r[old] = Some(new);
        }
        r
    };
    let vertices: Vec<Vec3> = keep.iter().map(|&i| pts[i]).collect();

    let mut faces = Vec::new();
    for (pi, (nor, _)) in planes.iter().enumerate() {
        let ids: Vec<usize> = on_plane[pi]
            .iter()
            .filter_map(|&old| remap[old])
            .collect();
        if ids.len() < 3 {
            return Err(GeometryError::Degeneracy("face with fewer than 3 corners".into()));
        }
        // Order counterclockwise around the face centroid, seen from outside.
        let centroid: Vec3 = ids.iter().map(|&i| vertices[i]).sum::<Vec3>() / ids.len() as f64;
        let u = {
            let r = vertices[ids[0]] - centroid;
            (r - nor * nor.dot(&r)).normalize()
        };
        let w = nor.cross(&u);
        let mut angled: Vec<(f64, usize)> = ids
            .iter()
            .map(|&i| {
                let r = vertices[i] - centroid;
                (r.dot(&w).atan2(r.dot(&u)), i)
            })
            .collect();
        angled.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let mut ordered: Vec<usize> = angled.into_iter().map(|(_, i)| i).collect();
        // Drop collinear chain vertices (points mid-edge of a merged face).
        ordered = drop_collinear(&vertices, ordered, tol);
        if ordered.len() < 3 {
            return Err(GeometryError::Degeneracy("degenerate face after merge".into()));
        }
        faces.push(Face { vertex_ids: ordered, normal: *nor });
    }

    finish_polyhedron(vertices, faces, None)
}

fn drop_collinear(vertices: &[Vec3], ids: Vec<usize>, tol: f64) -> Vec<usize> {
    let n = ids.len();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let prev = vertices[ids[(i + n - 1) % n]];
        let here = vertices[ids[i]];
        let next = vertices[ids[(i + 1) % n]];
        if (here - prev).cross(&(next - here)).norm() > tol * (next - prev).norm() {
            out.push(ids[i]);
        }
    }
    out
}

/// Derives edges from faces, checks convexity and the Euler relation.
/// The paper text states the relation with v and e swapped, which fails for
/// the cube; the standard identity v − e + f = 2 is asserted here.
fn finish_polyhedron(
    vertices: Vec<Vec3>,
    faces: Vec<Face>,
    prism_dims: Option<(f64, f64, f64)>,
) -> Result<Polyhedron, GeometryError> {
    use std::collections::HashMap;
    let mut edge_faces: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
    for (fi, f) in faces.iter().enumerate() {
        let k = f.vertex_ids.len();
        for i in 0..k {
            let a = f.vertex_ids[i];
            let b = f.vertex_ids[(i + 1) % k];
            let key = (a.min(b), a.max(b));
            edge_faces.entry(key).or_default().push(fi);
        }
    }
    let mut keys: Vec<(usize, usize)> = edge_faces.keys().copied().collect();
    keys.sort();
    let mut edges = Vec::with_capacity(keys.len());
    for key in keys {
        let fs = &edge_faces[&key];
        if fs.len() != 2 {
            return Err(GeometryError::Degeneracy(format!(
                "edge {key:?} borders {} faces (expected 2)",
                fs.len()
            )));
        }
        let dir = (vertices[key.1] - vertices[key.0]).normalize();
        edges.push(Edge { vertices: key, direction: dir, faces: (fs[0], fs[1]) });
    }

    let (v, e, f) = (vertices.len(), edges.len(), faces.len());
    if v as i64 - e as i64 + f as i64 != 2 {
        return Err(GeometryError::Degeneracy(format!(
            "Euler relation violated: v - e + f = {} - {} + {} != 2",
            v, e, f
        )));
    }

    // Convexity: every vertex on or behind every face plane.
    let scale = vertices
        .iter()
        .flat_map(|p| [p.x.abs(), p.y.abs(), p.z.abs()])
        .fold(1e-30, f64::max);
    for face in &faces {
        let p0 = vertices[face.vertex_ids[0]];
        for (vi, p) in vertices.iter().enumerate() {
            let d = face.normal.dot(&(p - p0));
            if d > 1e-9 * scale {
                return Err(GeometryError::Degeneracy(format!(
                    "vertex {vi} lies outside a face plane by {d:e}; not convex"
                )));
            }
        }
    }

    Ok(Polyhedron { vertices, faces, edges, prism_dims })
}

/// The geodesic polygon `O^a` of directions about vertex `a` subtended by the
/// polyhedron: one vertex per incident edge direction, ordered counterclockwise
/// (positive area). Errors on flat (coplanar-edge) corners.
pub fn solid_angle_polygon(p: &Polyhedron, a: usize) -> Result<SphericalPolygon, GeometryError> {
    if a >= p.vertex_count() {
        return Err(GeometryError::InvalidInput(format!("vertex id {a} out of range")));
    }
    let dirs: Vec<Vec3> = p
        .edges_at_vertex(a)
        .iter()
        .map(|&ei| {
            let (u, v) = p.edges[ei].vertices;
            let other = if u == a { v } else { u };
            (p.vertices[other] - p.vertices[a]).normalize()
        })
        .collect();
    if dirs.len() < 3 {
        return Err(GeometryError::Degeneracy(format!(
            "vertex {a} has {} incident edges",
            dirs.len()
        )));
    }
    // Coplanar edge directions mean a flat corner.
    let mut max_vol: f64 = 0.0;
    for i in 0..dirs.len() {
        for j in (i + 1)..dirs.len() {
            for k in (j + 1)..dirs.len() {
                max_vol = max_vol.max(dirs[i].cross(&dirs[j]).dot(&dirs[k]).abs());
            }
        }
    }
    if max_vol < 1e-10 {
        return Err(GeometryError::Degeneracy(format!("flat corner at vertex {a}")));
    }
    // Order counterclockwise around the cone axis.
    let axis = dirs.iter().sum::<Vec3>().normalize();
    let u = (dirs[0] - axis * axis.dot(&dirs[0])).normalize();
    let w = axis.cross(&u);
    let mut angled: Vec<(f64, Vec3)> = dirs
        .iter()
        .map(|d| (d.dot(&w).atan2(d.dot(&u)), *d))
        .collect();
    angled.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let ordered: Vec<Vec3> = angled.into_iter().map(|(_, d)| d).collect();
    let poly = SphericalPolygon::new(ordered)?;
    // The counterclockwise-around-axis ordering gives positive orientation.
    Ok(poly)
}
