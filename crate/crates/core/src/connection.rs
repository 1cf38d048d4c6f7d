//! Minimal connections between point defects and the energy lower bounds
//! they induce, with an LP-duality verification certificate.

use crate::geometry::arrangement::SectorPartition;
use crate::geometry::polyhedron::Polyhedron;
use crate::homotopy::{validate_class, HomotopyClass};
use crate::Vec3;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ConnectionError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("inadmissible configuration: {0}")]
    Inadmissible(String),
    #[error("internal error: {0}")]
    Internal(String),
}

/// Positions and integer degrees of a set of point defects.
#[derive(Debug, Clone)]
pub struct DefectConfiguration {
    pub points: Vec<Vec3>,
    pub degrees: Vec<i32>,
}

impl DefectConfiguration {
    pub fn new(points: Vec<Vec3>, degrees: Vec<i32>) -> Result<Self, ConnectionError> {
        if points.len() != degrees.len() {
            return Err(ConnectionError::InvalidInput(format!(
                "{} points but {} degrees",
                points.len(),
                degrees.len()
            )));
        }
        Ok(Self { points, degrees })
    }

    pub fn degree_sum(&self) -> i32 {
        self.degrees.iter().sum()
    }

    /// Positive and negative copy lists (multiplicity-expanded), as indices
    /// into `points`.
    pub fn expanded(&self) -> (Vec<usize>, Vec<usize>) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (i, &d) in self.degrees.iter().enumerate() {
            for _ in 0..d.max(0) {
                pos.push(i);
            }
            for _ in 0..(-d).max(0) {
                neg.push(i);
            }
        }
        (pos, neg)
    }
}

/// A minimal connection: its length, the optimal pairing, and dual values
/// certifying optimality.
#[derive(Debug, Clone)]
pub struct ConnectionResult {
    /// Total length of the minimal pairing.
    pub length: f64,
    /// `pairing[i] = j` pairs positive copy `i` with negative copy `j`.
    /// Lexicographically smallest among optimal pairings.
    pub pairing: Vec<usize>,
    /// Dual values, one per point of `pos` then `neg`: 1-Lipschitz on the
    /// point set with objective equal to the primal length.
    pub dual_values: Vec<f64>,
}

/// O(n³) Hungarian algorithm (shortest augmenting paths with potentials).
/// Returns (minimal cost, column assigned to each row).
fn hungarian(cost: &[Vec<f64>]) -> (f64, Vec<usize>) {
    let n = cost.len();
    if n == 0 {
        return (0.0, Vec::new());
    }
    const INF: f64 = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1]; // row matched to column j (1-based; 0 = none)
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0usize;
        let mut minv = vec![INF; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = INF;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    let mut row_to_col = vec![usize::MAX; n];
    for j in 1..=n {
        if p[j] != 0 {
            row_to_col[p[j] - 1] = j - 1;
        }
    }
    let total = (0..n).map(|i| cost[i][row_to_col[i]]).sum();
    (total, row_to_col)
}

/// Assignment cost achievable with rows 0..k fixed to the given columns.
fn completion_cost(cost: &[Vec<f64>], fixed: &[usize]) -> f64 {
    let n = cost.len();
    let k = fixed.len();
    let fixed_cost: f64 = fixed.iter().enumerate().map(|(i, &j)| cost[i][j]).sum();
    if k == n {
        return fixed_cost;
    }
    let free_cols: Vec<usize> = (0..n).filter(|j| !fixed.contains(j)).collect();
    let sub: Vec<Vec<f64>> = (k..n)
        .map(|i| free_cols.iter().map(|&j| cost[i][j]).collect())
        .collect();
    let (c, _) = hungarian(&sub);
    fixed_cost + c
}

/// Solves the minimal-connection problem between equally sized point tuples.
///
/// The assignment is solved by the Hungarian method and then refined to the
/// lexicographically smallest optimal pairing for deterministic reports. For
/// m ≤ 7 the unit tests additionally verify the value against exhaustive
/// permutation search.
pub fn minimal_connection(pos: &[Vec3], neg: &[Vec3]) -> Result<ConnectionResult, ConnectionError> {
    if pos.len() != neg.len() {
        return Err(ConnectionError::InvalidInput(format!(
            "size mismatch: {} positive vs {} negative",
            pos.len(),
            neg.len()
        )));
    }
    let m = pos.len();
    if m == 0 {
        return Ok(ConnectionResult { length: 0.0, pairing: Vec::new(), dual_values: Vec::new() });
    }
    let cost: Vec<Vec<f64>> = pos
        .iter()
        .map(|p| neg.iter().map(|q| (p - q).norm()).collect())
        .collect();
    let (length, _) = hungarian(&cost);

    // Lexicographic refinement among optimal pairings.
    let tol = 1e-9 * (1.0 + length);
    let mut fixed: Vec<usize> = Vec::with_capacity(m);
    for _ in 0..m {
        let mut chosen = None;
        for j in 0..m {
            if fixed.contains(&j) {
                continue;
            }
            let mut trial = fixed.clone();
            trial.push(j);
            if completion_cost(&cost, &trial) <= length + tol {
                chosen = Some(j);
                break;
            }
        }
        fixed.push(chosen.ok_or_else(|| {
            ConnectionError::Internal("lexicographic refinement lost the optimum".into())
        })?);
    }
    let pairing = fixed;

    // Dual potentials on the 2m points via shortest paths (see dual_potentials).
    let points: Vec<Vec3> = pos.iter().chain(neg.iter()).copied().collect();
    let matched: Vec<(usize, usize)> =
        pairing.iter().enumerate().map(|(i, &j)| (i, m + j)).collect();
    let dual_values = dual_potentials(&points, &matched)?;

    Ok(ConnectionResult { length, pairing, dual_values })
}

/// Shortest-path potentials making every matched pair tight while satisfying
/// all Lipschitz constraints |ξ_a − ξ_b| ≤ |r_a − r_b|. Bellman–Ford from a
/// virtual source; a negative cycle would contradict optimality of the
/// matching and is reported as an internal error.
fn dual_potentials(
    points: &[Vec3],
    matched: &[(usize, usize)],
) -> Result<Vec<f64>, ConnectionError> {
    let n = points.len();
    let mut dist = vec![0.0f64; n];
    // Edges: k→j with weight |r_j − r_k| for all pairs (constraint
    // ξ_j − ξ_k ≤ |r_j − r_k|), plus p→q with weight −|r_p − r_q| for each
    // matched (p, q) (forces tightness).
    for _ in 0..=n {
        let mut changed = false;
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    continue;
                }
                let w = (points[j] - points[k]).norm();
                if dist[k] + w < dist[j] - 1e-15 {
                    dist[j] = dist[k] + w;
                    changed = true;
                }
            }
        }
        for &(p, q) in matched {
            let w = -(points[p] - points[q]).norm();
            if dist[p] + w < dist[q] - 1e-15 {
                dist[q] = dist[p] + w;
                changed = true;
            }
        }
        if !changed {
            // Shift so the minimum is zero (objective is shift-invariant).
            let lo = dist.iter().copied().fold(f64::INFINITY, f64::min);
            return Ok(dist.iter().map(|d| d - lo).collect());
        }
    }
    Err(ConnectionError::Internal(
        "negative cycle in dual construction; pairing not optimal".into(),
    ))
}

/// The infimum Dirichlet energy for point defects in free space:
/// 8π times the minimal-connection length of the multiplicity-expanded
/// positive and negative defect tuples.
pub fn bcl_infimum(cfg: &DefectConfiguration) -> Result<f64, ConnectionError> {
    if cfg.degree_sum() != 0 {
        return Err(ConnectionError::Inadmissible(format!(
            "degrees sum to {}, not zero",
            cfg.degree_sum()
        )));
    }
    let (pos, neg) = cfg.expanded();
    let p: Vec<Vec3> = pos.iter().map(|&i| cfg.points[i]).collect();
    let n: Vec<Vec3> = neg.iter().map(|&i| cfg.points[i]).collect();
    let r = minimal_connection(&p, &n)?;
    Ok(8.0 * std::f64::consts::PI * r.length)
}

/// The dual certificate for a defect configuration: feasible 1-Lipschitz
/// values ξ with objective Σ ξ_j d_j equal to the minimal-connection length.
#[derive(Debug, Clone)]
pub struct DualCertificate {
    pub xi: Vec<f64>,
    /// Σ ξ_j d_j.
    pub objective: f64,
    /// Primal minimal-connection length.
    pub primal_length: f64,
    /// |objective − primal_length|.
    pub gap: f64,
}

/// Builds the dual certificate and checks strong duality. Also verifies that
/// the McShane extension ξ(r) = max_j (ξ_j − |r − r_j|) reproduces ξ at the
/// defects, i.e. that ξ is realizable by a 1-Lipschitz function.
pub fn dual_certificate(cfg: &DefectConfiguration) -> Result<DualCertificate, ConnectionError> {
    if cfg.degree_sum() != 0 {
        return Err(ConnectionError::Inadmissible(format!(
            "degrees sum to {}, not zero",
            cfg.degree_sum()
        )));
    }
    let (pos, neg) = cfg.expanded();
    let p: Vec<Vec3> = pos.iter().map(|&i| cfg.points[i]).collect();
    let nn: Vec<Vec3> = neg.iter().map(|&i| cfg.points[i]).collect();
    let conn = minimal_connection(&p, &nn)?;

    // Matched pairs in original defect indices.
    let matched: Vec<(usize, usize)> = conn
        .pairing
        .iter()
        .enumerate()
        .map(|(i, &j)| (pos[i], neg[j]))
        .collect();
    let xi = dual_potentials(&cfg.points, &matched)?;

    // Feasibility and McShane consistency.
    for j in 0..xi.len() {
        for k in 0..xi.len() {
            let d = (cfg.points[j] - cfg.points[k]).norm();
            if (xi[j] - xi[k]).abs() > d + 1e-9 {
                return Err(ConnectionError::Internal("dual values not 1-Lipschitz".into()));
            }
        }
        let mcshane = (0..xi.len())
            .map(|k| xi[k] - (cfg.points[j] - cfg.points[k]).norm())
            .fold(f64::NEG_INFINITY, f64::max);
        if (mcshane - xi[j]).abs() > 1e-9 {
            return Err(ConnectionError::Internal(
                "McShane extension does not reproduce dual values".into(),
            ));
        }
    }

    let objective: f64 = cfg
        .degrees
        .iter()
        .zip(&xi)
        .map(|(&d, &x)| d as f64 * x)
        .sum();
    let gap = (objective - conn.length).abs();
    if gap > 1e-9 * (1.0 + conn.length) {
        return Err(ConnectionError::Internal(format!(
            "duality gap {gap} exceeds tolerance"
        )));
    }
    Ok(DualCertificate { xi, objective, primal_length: conn.length, gap })
}

/// Per-sector detail of the polyhedral lower bound.
#[derive(Debug, Clone, Serialize)]
pub struct SectorBound {
    pub sigma: usize,
    pub area: f64,
    #[serde(rename = "L")]
    pub length: f64,
    /// Vertex-id pairs of the per-sector minimal connection.
    pub pairing: Vec<(usize, usize)>,
}

/// Lower bound for the infimum Dirichlet energy of a tangent unit-vector
/// field with invariants `h`: per sector, twice the sector area times the
/// minimal-connection length of the vertices carrying nonzero wrapping
/// (each with multiplicity |w|), summed over sectors.
pub fn polyhedron_lower_bound(
    p: &Polyhedron,
    h: &HomotopyClass,
    part: &SectorPartition,
) -> Result<(f64, Vec<SectorBound>), ConnectionError> {
    let violations = validate_class(h)
        .map_err(|e| ConnectionError::InvalidInput(format!("class validation: {e}")))?;
    if !violations.is_empty() {
        return Err(ConnectionError::Inadmissible(format!(
            "class violates {} sum rule(s)",
            violations.len()
        )));
    }
    if h.wrapping.len() != p.vertex_count() {
        return Err(ConnectionError::InvalidInput(format!(
            "wrapping matrix has {} rows for {} vertices",
            h.wrapping.len(),
            p.vertex_count()
        )));
    }
    if h.wrapping[0].len() != part.sector_count() {
        return Err(ConnectionError::InvalidInput(format!(
            "wrapping matrix has {} columns for {} sectors",
            h.wrapping[0].len(),
            part.sector_count()
        )));
    }
    let mut total = 0.0;
    let mut details = Vec::new();
    for s in part.sectors() {
        let mut pos_pts = Vec::new();
        let mut pos_ids = Vec::new();
        let mut neg_pts = Vec::new();
        let mut neg_ids = Vec::new();
        for (a, row) in h.wrapping.iter().enumerate() {
            let w = row[s.id];
            for _ in 0..w.max(0) {
                pos_pts.push(p.vertices()[a]);
                pos_ids.push(a);
            }
            for _ in 0..(-w).max(0) {
                neg_pts.push(p.vertices()[a]);
                neg_ids.push(a);
            }
        }
        let conn = minimal_connection(&pos_pts, &neg_pts)?;
        total += 2.0 * s.area * conn.length;
        details.push(SectorBound {
            sigma: s.id,
            area: s.area,
            length: conn.length,
            pairing: conn
                .pairing
                .iter()
                .enumerate()
                .map(|(i, &j)| (pos_ids[i], neg_ids[j]))
                .collect(),
        });
    }
    Ok((total, details))
}
