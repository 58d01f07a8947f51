use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type Point = [f64; 2];

/// Rotation about `center` by the angle `theta(rho) = amplitude * (1 - rho^2/R^2)^exponent`
/// for `rho < R`, identity outside. Exponent 0 gives a rigid rotation of the open ball.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialTwist {
    pub center: Point,
    pub radius: f64,
    pub amplitude: f64,
    pub exponent: f64,
}

impl RadialTwist {
    pub fn new(center: Point, radius: f64, amplitude: f64, exponent: f64) -> Result<Self> {
        let t = RadialTwist {
            center,
            radius,
            amplitude,
            exponent,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = self
            .center
            .iter()
            .chain([&self.radius, &self.amplitude, &self.exponent])
            .all(|v| v.is_finite());
        if !finite || self.radius <= 0.0 || self.exponent < 0.0 {
            return Err(Error::InvalidArgument(format!("bad twist parameters {self:?}")));
        }
        if norm(self.center) + self.radius >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "twist support {:?}, radius {} reaches the boundary",
                self.center, self.radius
            )));
        }
        Ok(())
    }

    /// The same twist with a different amplitude.
    pub fn with_amplitude(&self, amplitude: f64) -> Self {
        RadialTwist { amplitude, ..*self }
    }

    /// Conjugate by `p -> p / s`.
    pub fn scaled(&self, s: f64) -> Self {
        RadialTwist {
            center: [self.center[0] / s, self.center[1] / s],
            radius: self.radius / s,
            ..*self
        }
    }

    fn profile(&self, rho: f64) -> f64 {
        if rho >= self.radius {
            0.0
        } else {
            1.0 - (rho / self.radius).powi(2)
        }
    }

    pub fn theta(&self, rho: f64) -> f64 {
        if rho >= self.radius {
            return 0.0;
        }
        self.amplitude * self.profile(rho).powf(self.exponent)
    }

    /// Autonomous generating Hamiltonian, zero outside the support.
    pub fn hamiltonian(&self, rho: f64) -> f64 {
        if rho >= self.radius {
            return 0.0;
        }
        let k = self.exponent + 1.0;
        self.amplitude * self.radius.powi(2) / (2.0 * PI * k) * self.profile(rho).powf(k)
    }

    /// `A R^4 / (2 pi (k+1)(k+2))`.
    pub fn calabi(&self) -> f64 {
        let k = self.exponent;
        self.amplitude * self.radius.powi(4) / (2.0 * PI * (k + 1.0) * (k + 2.0))
    }

    pub fn distance_to_center(&self, p: Point) -> f64 {
        norm([p[0] - self.center[0], p[1] - self.center[1]])
    }

    pub fn contains(&self, p: Point) -> bool {
        self.distance_to_center(p) < self.radius
    }

    /// Rotation angle applied to `p` by the time-`s` map of the flow.
    pub fn angle_at(&self, p: Point, s: f64) -> f64 {
        s * self.theta(self.distance_to_center(p))
    }

    /// Image of `p` under the time-`s` map of the generating flow.
    pub fn flow(&self, p: Point, s: f64) -> Point {
        rotate_about(p, self.center, self.angle_at(p, s))
    }

    pub fn apply(&self, p: Point) -> Point {
        self.flow(p, 1.0)
    }

    pub fn disjoint_from(&self, other: &RadialTwist) -> bool {
        norm([self.center[0] - other.center[0], self.center[1] - other.center[1]]) >= self.radius + other.radius
    }
}

pub fn norm(p: Point) -> f64 {
    p[0].hypot(p[1])
}

pub fn rotate_about(p: Point, c: Point, angle: f64) -> Point {
    if angle == 0.0 {
        return p;
    }
    let (s, co) = angle.sin_cos();
    let (dx, dy) = (p[0] - c[0], p[1] - c[1]);
    [c[0] + co * dx - s * dy, c[1] + s * dx + co * dy]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_rotation_fixes_points() {
        let t = RadialTwist::new([0.0, 0.0], 0.9, 2.0 * PI, 0.0).unwrap();
        let p = [0.3, -0.4];
        let q = t.apply(p);
        assert!((q[0] - p[0]).abs() < 1e-15 && (q[1] - p[1]).abs() < 1e-15);
    }

    #[test]
    fn quarter_turn_at_known_radius() {
        // theta(0.5) = A (1 - 0.25)^1 = pi/2 for A = 2pi/3
        let t = RadialTwist::new([0.0, 0.0], 1.0 - 1e-9, 2.0 * PI / 3.0, 1.0).unwrap();
        let r0 = 0.5 * (1.0 - 1e-9);
        let q = t.apply([r0, 0.0]);
        assert!(q[0].abs() < 1e-9 && (q[1] - r0).abs() < 1e-9);
    }

    #[test]
    fn hamiltonian_derivative_matches_profile() {
        let t = RadialTwist::new([0.1, 0.2], 0.5, 3.0, 2.0).unwrap();
        for rho in [0.05, 0.2, 0.4] {
            let h = 1e-6;
            let d = (t.hamiltonian(rho + h) - t.hamiltonian(rho - h)) / (2.0 * h);
            assert!((d + rho * t.theta(rho) / PI).abs() < 1e-8);
        }
    }

    #[test]
    fn validation() {
        assert!(RadialTwist::new([0.5, 0.0], 0.5, 1.0, 1.0).is_err());
        assert!(RadialTwist::new([0.0, 0.0], 0.5, 1.0, -1.0).is_err());
        assert!(RadialTwist::new([0.0, 0.0], 0.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn outside_support_is_fixed() {
        let t = RadialTwist::new([0.2, 0.0], 0.3, 5.0, 1.0).unwrap();
        assert_eq!(t.apply([-0.5, 0.1]), [-0.5, 0.1]);
    }
}
