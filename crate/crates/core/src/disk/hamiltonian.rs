use std::f64::consts::PI;
use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use serde::{Deserialize, Serialize};

use super::twist::{norm, Point};
use crate::{Error, Result};

/// Named time-dependent Hamiltonians with compact support inside the disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Builtin {
    /// Autonomous `H(rho) = A R^2 / (2 pi (k+1)) (1 - rho^2/R^2)^(k+1)`; its time-1 map is the
    /// radial twist with the same parameters.
    RadialBump {
        center: Point,
        radius: f64,
        amplitude: f64,
        exponent: f64,
    },
    /// `H = A (1 - |p - c(t)|^2/R^2)_+^(k+1)` with `c(t)` running once around a circle of
    /// radius `orbit` about `center`.
    MovingBump {
        center: Point,
        orbit: f64,
        radius: f64,
        amplitude: f64,
        exponent: f64,
    },
}

impl Builtin {
    pub fn name(&self) -> &'static str {
        match self {
            Builtin::RadialBump { .. } => "radial-bump",
            Builtin::MovingBump { .. } => "moving-bump",
        }
    }

    fn validate(&self) -> Result<()> {
        let (reach, radius, exponent) = match *self {
            Builtin::RadialBump {
                center,
                radius,
                exponent,
                ..
            } => (norm(center) + radius, radius, exponent),
            Builtin::MovingBump {
                center,
                orbit,
                radius,
                exponent,
                ..
            } => (norm(center) + orbit.abs() + radius, radius, exponent),
        };
        if !(radius > 0.0 && exponent >= 0.0 && reach < 1.0) {
            return Err(Error::InvalidArgument(format!("bad Hamiltonian parameters {self:?}")));
        }
        Ok(())
    }

    /// Support ball at time `t`.
    fn support(&self, t: f64) -> (Point, f64) {
        match *self {
            Builtin::RadialBump { center, radius, .. } => (center, radius),
            Builtin::MovingBump {
                center, orbit, radius, ..
            } => {
                let (s, c) = (2.0 * PI * t).sin_cos();
                ([center[0] + orbit * c, center[1] + orbit * s], radius)
            }
        }
    }

    /// Value and gradient.
    fn eval(&self, t: f64, p: Point) -> (f64, Point) {
        let (c, radius) = self.support(t);
        let d = [p[0] - c[0], p[1] - c[1]];
        let u = 1.0 - (d[0] * d[0] + d[1] * d[1]) / (radius * radius);
        if u <= 0.0 {
            return (0.0, [0.0, 0.0]);
        }
        let (scale, k) = match *self {
            Builtin::RadialBump {
                amplitude, exponent, ..
            } => (
                amplitude * radius * radius / (2.0 * PI * (exponent + 1.0)),
                exponent + 1.0,
            ),
            Builtin::MovingBump {
                amplitude, exponent, ..
            } => (amplitude, exponent + 1.0),
        };
        let g = -2.0 * scale * k * u.powf(k - 1.0) / (radius * radius);
        (scale * u.powf(k), [g * d[0], g * d[1]])
    }
}

/// A Hamiltonian flow over `t in [0,1]`, optionally time-reparametrized and conjugated by a scaling.
///
/// With `tau(t) = t + alpha sin(2 pi t) / (2 pi)` the reparametrized Hamiltonian is
/// `tau'(t) H(tau(t), p)`: same time-1 map, different speed along the path.
/// With scale `s` the Hamiltonian is `s^-2 H(t, s p)`, generating `phi_s^-1 f phi_s`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HamiltonianFlow {
    pub builtin: Builtin,
    pub reparam: f64,
    pub steps: usize,
    pub scale: f64,
    /// Run the path backwards: `-H(1 - t, p)`, generating the inverse map.
    pub reversed: bool,
}

pub const DEFAULT_FLOW_STEPS: usize = 2000;

impl HamiltonianFlow {
    pub fn new(builtin: Builtin) -> Result<Self> {
        builtin.validate()?;
        Ok(HamiltonianFlow {
            builtin,
            reparam: 0.0,
            steps: DEFAULT_FLOW_STEPS,
            scale: 1.0,
            reversed: false,
        })
    }

    pub fn with_reparam(mut self, alpha: f64) -> Result<Self> {
        if alpha.is_nan() || alpha.abs() >= 1.0 {
            return Err(Error::InvalidArgument(format!(
                "reparametrization strength {alpha} not in (-1, 1)"
            )));
        }
        self.reparam = alpha;
        Ok(self)
    }

    pub fn with_steps(mut self, steps: usize) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidArgument("zero integration steps".into()));
        }
        self.steps = steps;
        Ok(self)
    }

    pub fn shrunk(mut self, r: f64) -> Self {
        self.scale *= r;
        self
    }

    pub fn inverse(mut self) -> Self {
        self.reversed = !self.reversed;
        self
    }

    /// Builtin time and the factor multiplying the builtin Hamiltonian.
    fn time_change(&self, t: f64) -> (f64, f64) {
        let (t, sign) = if self.reversed { (1.0 - t, -1.0) } else { (t, 1.0) };
        if self.reparam == 0.0 {
            return (t, sign);
        }
        let w = 2.0 * PI * t;
        (
            t + self.reparam * w.sin() / (2.0 * PI),
            sign * (1.0 + self.reparam * w.cos()),
        )
    }

    pub fn value(&self, t: f64, p: Point) -> f64 {
        let (tau, speed) = self.time_change(t);
        let s = self.scale;
        speed * self.builtin.eval(tau, [s * p[0], s * p[1]]).0 / (s * s)
    }

    /// `X = pi (dH/dy, -dH/dx)`.
    pub fn field(&self, t: f64, p: Point) -> Point {
        let (tau, speed) = self.time_change(t);
        let s = self.scale;
        let g = self.builtin.eval(tau, [s * p[0], s * p[1]]).1;
        let f = PI * speed / s;
        [f * g[1], -f * g[0]]
    }

    /// One RK4 step from `t` to `t + h`.
    pub fn rk4(&self, t: f64, h: f64, p: Point) -> Point {
        let add = |p: Point, k: Point, c: f64| [p[0] + c * k[0], p[1] + c * k[1]];
        let k1 = self.field(t, p);
        let k2 = self.field(t + h / 2.0, add(p, k1, h / 2.0));
        let k3 = self.field(t + h / 2.0, add(p, k2, h / 2.0));
        let k4 = self.field(t + h, add(p, k3, h));
        [
            p[0] + h / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
            p[1] + h / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        ]
    }

    /// Time-1 map with `steps` uniform RK4 steps.
    pub fn apply(&self, p: Point) -> Result<Point> {
        self.integrate(p, self.steps)
    }

    pub fn integrate(&self, mut p: Point, steps: usize) -> Result<Point> {
        let h = 1.0 / steps as f64;
        for i in 0..steps {
            p = self.rk4(i as f64 * h, h, p);
            if !(p[0].is_finite() && p[1].is_finite()) || norm(p) > 1.0 {
                return Err(Error::Integration(format!("trajectory left the disk at step {i}")));
            }
        }
        Ok(p)
    }

    /// Ball containing the support for all times, in the scaled coordinates.
    pub fn support_ball(&self) -> (Point, f64) {
        let (c, r) = match self.builtin {
            Builtin::RadialBump { center, radius, .. } => (center, radius),
            Builtin::MovingBump {
                center, orbit, radius, ..
            } => (center, orbit.abs() + radius),
        };
        ([c[0] / self.scale, c[1] / self.scale], r / self.scale)
    }

    /// `int_0^1 int H_t Omega dt` by Gauss-Legendre quadrature in time and polar coordinates
    /// about the instantaneous support center; two orders must agree.
    pub fn calabi(&self) -> Result<f64> {
        let coarse = self.calabi_with(24);
        let fine = self.calabi_with(48);
        if !fine.is_finite() || (fine - coarse).abs() > 1e-9 * (1.0 + fine.abs()) {
            return Err(Error::Quadrature(format!(
                "Calabi quadrature did not settle: {coarse} vs {fine}"
            )));
        }
        Ok(fine)
    }

    fn calabi_with(&self, order: usize) -> f64 {
        let n = NonZeroUsize::new(order).expect("positive order");
        let gl = GaussLegendre::new(n);
        let s = self.scale;
        gl.integrate(0.0, 1.0, |t| {
            let (tau, _) = self.time_change(t);
            let (c, radius) = self.builtin.support(tau);
            let (c, radius) = ([c[0] / s, c[1] / s], radius / s);
            let radial = gl.integrate(0.0, radius, |rho| {
                let ring = gl.integrate(0.0, 2.0 * PI, |a| {
                    self.value(t, [c[0] + rho * a.cos(), c[1] + rho * a.sin()])
                });
                ring * rho
            });
            radial / PI
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::twist::RadialTwist;

    fn bump() -> HamiltonianFlow {
        HamiltonianFlow::new(Builtin::RadialBump {
            center: [0.1, -0.1],
            radius: 0.6,
            amplitude: 4.0,
            exponent: 2.0,
        })
        .unwrap()
    }

    #[test]
    fn radial_bump_reproduces_twist() {
        let t = RadialTwist::new([0.1, -0.1], 0.6, 4.0, 2.0).unwrap();
        let f = bump();
        for p in [[0.2, 0.0], [-0.3, 0.1], [0.1, 0.3]] {
            let a = t.apply(p);
            let b = f.apply(p).unwrap();
            assert!((a[0] - b[0]).abs() < 1e-9 && (a[1] - b[1]).abs() < 1e-9, "{a:?} {b:?}");
        }
    }

    #[test]
    fn calabi_matches_twist_closed_form() {
        let t = RadialTwist::new([0.1, -0.1], 0.6, 4.0, 2.0).unwrap();
        assert!((bump().calabi().unwrap() - t.calabi()).abs() < 1e-10);
    }

    #[test]
    fn moving_bump_calabi() {
        // A R^2 / (k + 2) in units of Omega
        let f = HamiltonianFlow::new(Builtin::MovingBump {
            center: [0.0, 0.0],
            orbit: 0.3,
            radius: 0.4,
            amplitude: 2.0,
            exponent: 1.0,
        })
        .unwrap();
        assert!((f.calabi().unwrap() - 2.0 * 0.16 / 3.0).abs() < 1e-10);
        let g = f.with_reparam(0.5).unwrap();
        assert!((g.calabi().unwrap() - f.calabi().unwrap()).abs() < 1e-10);
    }

    #[test]
    fn reparam_keeps_time_one_map() {
        let f = bump().with_steps(2000).unwrap();
        let g = f.with_reparam(0.6).unwrap();
        let a = f.apply([0.3, 0.2]).unwrap();
        let b = g.apply([0.3, 0.2]).unwrap();
        assert!((a[0] - b[0]).abs() < 1e-9 && (a[1] - b[1]).abs() < 1e-9);
    }

    #[test]
    fn scaling_conjugates() {
        let f = bump();
        let g = f.shrunk(2.0);
        let a = f.apply([0.3, 0.2]).unwrap();
        let b = g.apply([0.15, 0.1]).unwrap();
        assert!((a[0] / 2.0 - b[0]).abs() < 1e-14 && (a[1] / 2.0 - b[1]).abs() < 1e-14);
        assert!((g.calabi().unwrap() - f.calabi().unwrap() / 16.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_flow_inverts() {
        let f = HamiltonianFlow::new(Builtin::MovingBump {
            center: [0.0, 0.1],
            orbit: 0.2,
            radius: 0.5,
            amplitude: 0.3,
            exponent: 1.0,
        })
        .unwrap();
        let p = [0.1, 0.2];
        let q = f.inverse().apply(f.apply(p).unwrap()).unwrap();
        assert!((q[0] - p[0]).abs() < 1e-9 && (q[1] - p[1]).abs() < 1e-9);
        assert!((f.inverse().calabi().unwrap() + f.calabi().unwrap()).abs() < 1e-12);
    }

    #[test]
    fn rejects_support_outside_disk() {
        assert!(HamiltonianFlow::new(Builtin::MovingBump {
            center: [0.0, 0.0],
            orbit: 0.5,
            radius: 0.6,
            amplitude: 1.0,
            exponent: 1.0,
        })
        .is_err());
        assert!(bump().with_reparam(1.0).is_err());
    }
}
