use serde::{Deserialize, Serialize};

use super::hamiltonian::HamiltonianFlow;
use super::twist::{norm, Point, RadialTwist};
use crate::{Error, Result};

/// One stage of a generating path, run over its own unit time interval.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Piece {
    /// The radial twist `twist^power`, conjugated by `p -> p / scale`.
    Twist {
        twist: RadialTwist,
        power: i32,
        scale: f64,
    },
    Flow {
        flow: HamiltonianFlow,
    },
}

impl Piece {
    /// The twist actually applied, with power and scale folded in.
    pub fn effective_twist(&self) -> Option<RadialTwist> {
        match *self {
            Piece::Twist { twist, power, scale } => {
                Some(twist.with_amplitude(twist.amplitude * power as f64).scaled(scale))
            }
            Piece::Flow { .. } => None,
        }
    }

    fn apply(&self, p: Point) -> Result<Point> {
        match self {
            Piece::Twist { .. } => Ok(self.effective_twist().unwrap().apply(p)),
            Piece::Flow { flow } => flow.apply(p),
        }
    }

    fn inverse(&self) -> Piece {
        match *self {
            Piece::Twist { twist, power, scale } => Piece::Twist {
                twist,
                power: -power,
                scale,
            },
            Piece::Flow { flow } => Piece::Flow { flow: flow.inverse() },
        }
    }

    fn shrunk(&self, r: f64) -> Piece {
        match *self {
            Piece::Twist { twist, power, scale } => Piece::Twist {
                twist,
                power,
                scale: scale * r,
            },
            Piece::Flow { flow } => Piece::Flow { flow: flow.shrunk(r) },
        }
    }

    fn calabi(&self) -> Result<f64> {
        match self {
            Piece::Twist { .. } => Ok(self.effective_twist().unwrap().calabi()),
            Piece::Flow { flow } => flow.calabi(),
        }
    }

    /// Ball containing the support of every time-`t` map of this stage.
    pub fn support_ball(&self) -> (Point, f64) {
        match self {
            Piece::Twist { .. } => {
                let t = self.effective_twist().unwrap();
                (t.center, t.radius)
            }
            Piece::Flow { flow } => flow.support_ball(),
        }
    }
}

/// An area-preserving map of the disk given with a generating path: the pieces run in order.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DiskMap {
    pieces: Vec<Piece>,
}

impl DiskMap {
    pub fn identity() -> Self {
        DiskMap::default()
    }

    pub fn from_pieces(pieces: Vec<Piece>) -> Self {
        DiskMap { pieces }
    }

    pub fn twist(t: RadialTwist) -> Self {
        DiskMap::twists(&[(t, 1)])
    }

    /// `t_m^{e_m} o ... o t_1^{e_1}` for the list `[(t_1, e_1), ..., (t_m, e_m)]`.
    pub fn twists(list: &[(RadialTwist, i32)]) -> Self {
        DiskMap {
            pieces: list
                .iter()
                .map(|&(twist, power)| Piece::Twist {
                    twist,
                    power,
                    scale: 1.0,
                })
                .collect(),
        }
    }

    pub fn flow(flow: HamiltonianFlow) -> Self {
        DiskMap {
            pieces: vec![Piece::Flow { flow }],
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_identity(&self) -> bool {
        self.pieces.is_empty()
    }

    /// True when every stage is a closed-form twist.
    pub fn is_closed_form(&self) -> bool {
        self.pieces.iter().all(|p| matches!(p, Piece::Twist { .. }))
    }

    pub fn kind(&self) -> &'static str {
        if self.is_closed_form() {
            "twist-composition"
        } else {
            "hamiltonian-flow"
        }
    }

    /// `self o other`: `other` runs first.
    pub fn compose(&self, other: &DiskMap) -> DiskMap {
        let mut pieces = other.pieces.clone();
        pieces.extend_from_slice(&self.pieces);
        DiskMap { pieces }
    }

    pub fn inverse(&self) -> DiskMap {
        DiskMap {
            pieces: self.pieces.iter().rev().map(Piece::inverse).collect(),
        }
    }

    pub fn power(&self, p: usize) -> DiskMap {
        DiskMap {
            pieces: (0..p).flat_map(|_| self.pieces.iter().copied()).collect(),
        }
    }

    pub fn apply(&self, mut p: Point) -> Result<Point> {
        if norm(p) > 1.0 {
            return Err(Error::InvalidArgument(format!("point {p:?} outside the disk")));
        }
        for piece in &self.pieces {
            p = piece.apply(p)?;
        }
        Ok(p)
    }

    pub fn calabi(&self) -> Result<f64> {
        self.pieces.iter().map(Piece::calabi).sum()
    }

    /// `s_r(f) = phi_r f phi_r^-1` with `phi_r(p) = p / r`.
    pub fn shrink(&self, r: f64) -> Result<DiskMap> {
        if !(r > 1.0 && r.is_finite()) {
            return Err(Error::InvalidArgument(format!("shrink factor {r} must exceed 1")));
        }
        Ok(DiskMap {
            pieces: self.pieces.iter().map(|p| p.shrunk(r)).collect(),
        })
    }

    /// Effective twists of a closed-form map.
    pub fn effective_twists(&self) -> Option<Vec<RadialTwist>> {
        self.pieces.iter().map(Piece::effective_twist).collect()
    }

    /// Radius of the smallest origin-centered ball containing every stage's support.
    pub fn support_radius(&self) -> f64 {
        self.pieces
            .iter()
            .map(|p| {
                let (c, r) = p.support_ball();
                norm(c) + r
            })
            .fold(0.0, f64::max)
    }

    /// Distinct support disks of a closed-form map whose disks are pairwise disjoint or equal.
    pub fn support_disks(&self) -> Result<Vec<(Point, f64)>> {
        let twists = self.effective_twists().ok_or(Error::NoExactArea)?;
        let mut disks: Vec<(Point, f64)> = Vec::new();
        for t in twists {
            let d = (t.center, t.radius);
            if disks.contains(&d) {
                continue;
            }
            let overlaps = disks
                .iter()
                .any(|&(c, r)| norm([c[0] - d.0[0], c[1] - d.0[1]]) < r + d.1);
            if overlaps {
                return Err(Error::NoExactArea);
            }
            disks.push(d);
        }
        Ok(disks)
    }

    /// `Omega`-area of the union of support disks (`R^2` per disk).
    pub fn support_area(&self) -> Result<f64> {
        Ok(self.support_disks()?.iter().map(|&(_, r)| r * r).sum())
    }

    /// Jacobian determinant at `p` by central differences.
    pub fn jacobian_det(&self, p: Point, h: f64) -> Result<f64> {
        let d = |dx: f64, dy: f64| self.apply([p[0] + dx, p[1] + dy]);
        let (xp, xm, yp, ym) = (d(h, 0.0)?, d(-h, 0.0)?, d(0.0, h)?, d(0.0, -h)?);
        let j = [
            [(xp[0] - xm[0]) / (2.0 * h), (yp[0] - ym[0]) / (2.0 * h)],
            [(xp[1] - xm[1]) / (2.0 * h), (yp[1] - ym[1]) / (2.0 * h)],
        ];
        Ok(j[0][0] * j[1][1] - j[0][1] * j[1][0])
    }
}

/// `t1` followed by `t2` with its amplitude re-solved so that the Calabi invariant vanishes.
pub fn make_kercal_map(t1: RadialTwist, t2: RadialTwist) -> Result<DiskMap> {
    t1.validate()?;
    t2.validate()?;
    if !t1.disjoint_from(&t2) {
        return Err(Error::OverlappingSupports(format!("{t1:?} and {t2:?}")));
    }
    let cal = |a: f64| DiskMap::twists(&[(t1, 1), (t2.with_amplitude(a), 1)]).calabi();
    let scale = t1.calabi().abs().max(f64::MIN_POSITIVE);
    let mut a0 = t2.amplitude;
    let mut a1 = if a0 == 0.0 { 1.0 } else { -a0 };
    let (mut f0, mut f1) = (cal(a0)?, cal(a1)?);
    for _ in 0..60 {
        if f1.abs() <= 1e-13 * scale {
            return Ok(DiskMap::twists(&[(t1, 1), (t2.with_amplitude(a1), 1)]));
        }
        if f1 == f0 {
            break;
        }
        let a2 = a1 - f1 * (a1 - a0) / (f1 - f0);
        (a0, f0) = (a1, f1);
        a1 = a2;
        f1 = cal(a1)?;
    }
    Err(Error::RootFinding(format!(
        "no amplitude for {t2:?} balances the Calabi invariant of {t1:?}"
    )))
}
