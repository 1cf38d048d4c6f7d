//! Stereographic projection between S² and the extended complex plane.
//!
//! Convention: `w = (e_x + i e_y)/(1 + e_z)`, so the north pole (0,0,1) maps
//! to 0 and the south pole (0,0,−1) to ∞. All conformal-map code in this
//! crate conjugates through this single convention.

use crate::Vec3;
use num_complex::Complex64;

/// Extended complex value: a finite complex number or the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtComplex {
    Finite(Complex64),
    Infinity,
}

impl ExtComplex {
    pub fn finite(re: f64, im: f64) -> Self {
        ExtComplex::Finite(Complex64::new(re, im))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtComplex::Infinity)
    }

    /// The finite value, if any.
    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            ExtComplex::Finite(z) => Some(*z),
            ExtComplex::Infinity => None,
        }
    }

    /// Homogeneous representation [num : den] with den = 0 at infinity.
    pub fn homogeneous(&self) -> (Complex64, Complex64) {
        match self {
            ExtComplex::Finite(z) => (*z, Complex64::new(1.0, 0.0)),
            ExtComplex::Infinity => (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
        }
    }

    /// Builds from a homogeneous pair, normalizing 0/0-free ratios.
    pub fn from_homogeneous(num: Complex64, den: Complex64) -> Self {
        if den.norm() <= 1e-300 * num.norm() || (den.norm() == 0.0 && num.norm() > 0.0) {
            ExtComplex::Infinity
        } else {
            ExtComplex::Finite(num / den)
        }
    }
}

impl From<Complex64> for ExtComplex {
    fn from(z: Complex64) -> Self {
        ExtComplex::Finite(z)
    }
}

/// Stereographic projection of a unit vector, `w = (e_x + i e_y)/(1 + e_z)`.
/// The south pole maps to infinity.
pub fn stereographic(e: &Vec3) -> ExtComplex {
    let denom = 1.0 + e.z;
    // Near the south pole use the equivalent conjugate-reciprocal form
    // w = (1 − e_z)/(e_x − i e_y) to avoid 0/0 loss.
    if denom < 1e-12 {
        let num = 1.0 - e.z;
        let d = Complex64::new(e.x, -e.y);
        if d.norm() == 0.0 {
            return ExtComplex::Infinity;
        }
        return ExtComplex::Finite(num / d);
    }
    ExtComplex::Finite(Complex64::new(e.x / denom, e.y / denom))
}

/// Inverse stereographic projection; infinity maps to the south pole.
pub fn inverse_stereographic(w: &ExtComplex) -> Vec3 {
    match w {
        ExtComplex::Infinity => Vec3::new(0.0, 0.0, -1.0),
        ExtComplex::Finite(z) => {
            let r2 = z.norm_sqr();
            if !r2.is_finite() {
                return Vec3::new(0.0, 0.0, -1.0);
            }
            let denom = 1.0 + r2;
            Vec3::new(2.0 * z.re / denom, 2.0 * z.im / denom, (1.0 - r2) / denom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poles_and_unit_points() {
        assert_eq!(
            stereographic(&Vec3::new(0.0, 0.0, 1.0)).as_finite().unwrap(),
            Complex64::new(0.0, 0.0)
        );
        assert_eq!(
            stereographic(&Vec3::new(1.0, 0.0, 0.0)).as_finite().unwrap(),
            Complex64::new(1.0, 0.0)
        );
        assert!(stereographic(&Vec3::new(0.0, 0.0, -1.0)).is_infinite());
        let south = inverse_stereographic(&ExtComplex::Infinity);
        assert!((south - Vec3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn round_trip_identity() {
        // Deterministic sample including near-pole points.
        let mut pts = vec![
            Vec3::new(0.0, 0.0, 1.0),
            Vec3::new(1e-8, 0.0, 1.0).normalize(),
            Vec3::new(1e-8, -1e-9, -1.0).normalize(),
            Vec3::new(0.3, -0.4, 0.866).normalize(),
        ];
        let mut s = 0x9e3779b97f4a7c15u64;
        for _ in 0..10_000 {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let a = (s >> 11) as f64 / (1u64 << 53) as f64;
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let b = (s >> 11) as f64 / (1u64 << 53) as f64;
            let z = 2.0 * a - 1.0;
            let phi = 2.0 * std::f64::consts::PI * b;
            let r = (1.0 - z * z).max(0.0).sqrt();
            pts.push(Vec3::new(r * phi.cos(), r * phi.sin(), z));
        }
        for e in pts {
            let back = inverse_stereographic(&stereographic(&e));
            assert!((back - e).norm() < 1e-12, "round trip failed for {e:?}");
        }
    }
}
