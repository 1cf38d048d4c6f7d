//! Small numeric helpers shared across modules.

use crate::Vec3;

/// Pairwise (tree-ordered) summation. Deterministic for a fixed input order
/// and substantially more accurate than naive left-to-right accumulation on
/// large quadrature sums.
pub fn tree_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        2 => values[0] + values[1],
        n => {
            let mid = n / 2;
            tree_sum(&values[..mid]) + tree_sum(&values[mid..])
        }
    }
}

/// Signed angle from `a` to `b` around `axis` (all unit, `a`,`b` ⟂ `axis`),
/// counterclockwise positive as seen from the tip of `axis`. Range (−π, π].
pub fn signed_angle_around(a: &Vec3, b: &Vec3, axis: &Vec3) -> f64 {
    let s = a.cross(b).dot(axis);
    let c = a.dot(b);
    s.atan2(c)
}

/// Unit tangent at `from` of the geodesic toward `to`. Requires the points
/// to be non-antipodal and distinct.
pub fn geodesic_tangent(from: &Vec3, to: &Vec3) -> Option<Vec3> {
    let t = to - from * from.dot(to);
    let n = t.norm();
    if n < 1e-14 {
        None
    } else {
        Some(t / n)
    }
}

/// Spherical linear interpolation from `a` toward `b` by fraction `t` of the
/// angle between them. `a`, `b` unit and non-antipodal.
pub fn slerp(a: &Vec3, b: &Vec3, t: f64) -> Vec3 {
    let cos_theta = a.dot(b).clamp(-1.0, 1.0);
    let theta = cos_theta.acos();
    if theta < 1e-12 {
        return *a;
    }
    let sin_theta = theta.sin();
    let wa = ((1.0 - t) * theta).sin() / sin_theta;
    let wb = (t * theta).sin() / sin_theta;
    let v = a * wa + b * wb;
    v / v.norm()
}

/// Signed area of the spherical triangle (a, b, c) (unit vectors), positive
/// for counterclockwise orientation seen from outside the sphere.
/// Oosterom–Strackee, stable for small triangles.
pub fn triangle_signed_area(a: &Vec3, b: &Vec3, c: &Vec3) -> f64 {
    let num = a.dot(&b.cross(c));
    let den = 1.0 + a.dot(b) + b.dot(c) + c.dot(a);
    2.0 * num.atan2(den)
}

/// Cubic smoothstep on [0, 1].
pub fn smoothstep(t: f64) -> f64 {
    let t = t.clamp(0.0, 1.0);
    t * t * (3.0 - 2.0 * t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_sum_matches_naive_on_small_input() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(tree_sum(&v), 15.0);
    }

    #[test]
    fn octant_triangle_area() {
        let a = Vec3::new(1.0, 0.0, 0.0);
        let b = Vec3::new(0.0, 1.0, 0.0);
        let c = Vec3::new(0.0, 0.0, 1.0);
        let area = triangle_signed_area(&a, &b, &c);
        assert!((area - std::f64::consts::FRAC_PI_2).abs() < 1e-14);
        let rev = triangle_signed_area(&c, &b, &a);
        assert!((rev + std::f64::consts::FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn slerp_endpoints_and_midpoint() {
        let a = Vec3::new(1.0, 0.0, 0.0);
        let b = Vec3::new(0.0, 0.0, 1.0);
        assert!((slerp(&a, &b, 0.0) - a).norm() < 1e-15);
        assert!((slerp(&a, &b, 1.0) - b).norm() < 1e-15);
        let m = slerp(&a, &b, 0.5);
        let expect = Vec3::new(1.0, 0.0, 1.0) / 2.0_f64.sqrt();
        assert!((m - expect).norm() < 1e-14);
    }
}
