use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector2, Vector3};

use super::sample::SampledCurve;
use crate::diagram::{extract_diagram, ExtractOptions};
use crate::error::{Error, Result};

/// Fallback directions tried after the preference list is exhausted.
pub const FALLBACK_ATTEMPTS: usize = 64;

/// Viewing axis plus a right-handed image-plane basis: `det(u, v, direction) = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionFrame {
    direction: Vector3<f64>,
    u: Vector3<f64>,
    v: Vector3<f64>,
}

impl ProjectionFrame {
    /// Builds the frame looking along `direction`. Returns `None` for a zero
    /// or non-finite vector.
    pub fn from_direction(direction: Vector3<f64>) -> Option<Self> {
        let norm = direction.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return None;
        }
        let d = direction / norm;
        let (mut axis, mut smallest) = (0, d.x.abs());
        for k in 1..3 {
            if d[k].abs() < smallest {
                axis = k;
                smallest = d[k].abs();
            }
        }
        let helper = Vector3::ith(axis, 1.0);
        let u = (helper - d * helper.dot(&d)).normalize();
        let v = d.cross(&u);
        Some(ProjectionFrame { direction: d, u, v })
    }

    /// Drop z: image coordinates are (x, y), height is z.
    pub fn z_axis() -> Self {
        Self::from_direction(Vector3::z()).unwrap()
    }

    pub fn direction(&self) -> Vector3<f64> {
        self.direction
    }

    pub fn u(&self) -> Vector3<f64> {
        self.u
    }

    pub fn v(&self) -> Vector3<f64> {
        self.v
    }

    pub fn project(&self, p: &Vector3<f64>) -> Vector2<f64> {
        Vector2::new(p.dot(&self.u), p.dot(&self.v))
    }

    pub fn height(&self, p: &Vector3<f64>) -> f64 {
        p.dot(&self.direction)
    }

    /// Reflection through the image plane (negates height).
    pub fn reflection(&self) -> Matrix3<f64> {
        Matrix3::identity() - 2.0 * self.direction * self.direction.transpose()
    }

    /// Same viewing line from the opposite side, still right-handed.
    pub fn flipped(&self) -> Self {
        ProjectionFrame { direction: -self.direction, u: self.u, v: -self.v }
    }
}

/// The z, x, y axis views, in that order.
pub fn default_frames() -> Vec<ProjectionFrame> {
    [Vector3::z(), Vector3::x(), Vector3::y()]
        .into_iter()
        .filter_map(ProjectionFrame::from_direction)
        .collect()
}

/// Deterministic upper-hemisphere directions spaced by the golden angle.
pub fn golden_frames(count: usize) -> Vec<ProjectionFrame> {
    let golden = PI * (3.0 - 5f64.sqrt());
    (0..count)
        .filter_map(|k| {
            let cos_theta = 1.0 - (k as f64 + 0.5) / count as f64;
            let sin_theta = (1.0 - cos_theta * cos_theta).sqrt();
            let phi = golden * (k as f64 + 1.0);
            ProjectionFrame::from_direction(Vector3::new(sin_theta * phi.cos(), sin_theta * phi.sin(), cos_theta))
        })
        .collect()
}

/// First frame (preferences, then golden-angle fallbacks) under which the
/// diagram extraction succeeds without a genericity failure.
pub fn find_generic_projection(curve: &SampledCurve, preferences: &[ProjectionFrame]) -> Result<ProjectionFrame> {
    let opts = ExtractOptions::default();
    let mut attempts = 0;
    for frame in preferences.iter().copied().chain(golden_frames(FALLBACK_ATTEMPTS)) {
        attempts += 1;
        match extract_diagram(curve, &frame, &opts) {
            Ok(_) => return Ok(frame),
            Err(Error::NonGenericProjection(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoGenericProjection { attempts })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_orthonormal(f: &ProjectionFrame) {
        let (d, u, v) = (f.direction(), f.u(), f.v());
        for (a, b) in [(d, u), (d, v), (u, v)] {
            assert!(a.dot(&b).abs() < 1e-12);
        }
        for a in [d, u, v] {
            assert!((a.norm() - 1.0).abs() < 1e-12);
        }
        let det = Matrix3::from_columns(&[u, v, d]).determinant();
        assert!((det - 1.0).abs() < 1e-12);
    }

    #[test]
    fn z_axis_drops_z() {
        let f = ProjectionFrame::z_axis();
        assert_eq!(f.u(), Vector3::x());
        assert_eq!(f.v(), Vector3::y());
        assert_eq!(f.project(&Vector3::new(1.0, 2.0, 3.0)), Vector2::new(1.0, 2.0));
        assert_eq!(f.height(&Vector3::new(1.0, 2.0, 3.0)), 3.0);
    }

    #[test]
    fn frames_are_right_handed() {
        for f in default_frames().iter().chain(golden_frames(64).iter()) {
            assert_orthonormal(f);
            assert_orthonormal(&f.flipped());
        }
        assert_eq!(golden_frames(64).len(), 64);
        assert!(ProjectionFrame::from_direction(Vector3::zeros()).is_none());
    }
}
