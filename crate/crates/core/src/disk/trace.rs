use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::hamiltonian::HamiltonianFlow;
use super::map::{DiskMap, Piece};
use super::twist::{norm, rotate_about, Point, RadialTwist};
use crate::{Error, Result};

/// Minimum allowed distance between strands at any time of a loop.
pub const COLLISION_TOL: f64 = 1e-7;

/// `(-1/2, 0), (0, 1/100), (1/2, 0)`: the middle point sits slightly off the axis so that
/// straight move-in segments avoid triple collinearity.
pub const BASEPOINT: [Point; 3] = [[-0.5, 0.0], [0.0, 0.01], [0.5, 0.0]];

/// Three distinct points of the open disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[Point; 3]", into = "[Point; 3]")]
pub struct Config3 {
    points: [Point; 3],
}

impl Config3 {
    pub fn new(points: [Point; 3]) -> Result<Self> {
        if let Some(p) = points.iter().find(|p| !norm(**p).lt(&1.0)) {
            return Err(Error::InvalidArgument(format!("point {p:?} not in the open disk")));
        }
        let c = Config3 { points };
        let sep = c.min_separation();
        if sep <= COLLISION_TOL {
            return Err(Error::Collision { separation: sep });
        }
        Ok(c)
    }

    pub fn basepoint() -> Self {
        Config3 { points: BASEPOINT }
    }

    pub fn points(&self) -> [Point; 3] {
        self.points
    }

    pub fn min_separation(&self) -> f64 {
        pairs()
            .map(|(i, j)| dist(self.points[i], self.points[j]))
            .fold(f64::INFINITY, f64::min)
    }
}

impl TryFrom<[Point; 3]> for Config3 {
    type Error = Error;

    fn try_from(points: [Point; 3]) -> Result<Self> {
        Config3::new(points)
    }
}

impl From<Config3> for [Point; 3] {
    fn from(c: Config3) -> Self {
        c.points
    }
}

/// Resolution controls; `level` halves the step bounds and doubles flow steps each increment.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceOptions {
    /// Bound on the turning angle of any strand-difference vector within one step.
    pub max_turn: f64,
    /// Bound on the rotation angle of any strand within one step.
    pub max_rotation: f64,
    pub level: u32,
    /// Bisection depth for closed-form segments, and doubling count for flow segments.
    pub max_depth: u32,
}

impl Default for TraceOptions {
    fn default() -> Self {
        TraceOptions {
            max_turn: PI / 8.0,
            max_rotation: PI / 16.0,
            level: 0,
            max_depth: 48,
        }
    }
}

impl TraceOptions {
    fn turn(&self) -> f64 {
        self.max_turn / f64::from(1u32 << self.level.min(20))
    }

    fn rotation(&self) -> f64 {
        self.max_rotation / f64::from(1u32 << self.level.min(20))
    }
}

/// Sampled strands of the loop `l(g; x)`: move-in on `[0, 1/3]`, the generating path of `g`
/// on `[1/3, 2/3]`, move-out on `[2/3, 1]`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryBundle {
    pub times: Vec<f64>,
    pub positions: Vec<[Point; 3]>,
    /// Minimum strand separation over each step (a lower bound on flow and twist steps).
    pub separations: Vec<f64>,
}

impl TrajectoryBundle {
    fn start(t: f64, pos: [Point; 3]) -> Self {
        TrajectoryBundle {
            times: vec![t],
            positions: vec![pos],
            separations: Vec::new(),
        }
    }

    fn push(&mut self, t: f64, pos: [Point; 3], sep: f64) -> Result<()> {
        if sep < COLLISION_TOL {
            return Err(Error::Collision { separation: sep });
        }
        self.times.push(t);
        self.positions.push(pos);
        self.separations.push(sep);
        Ok(())
    }

    fn last(&self) -> [Point; 3] {
        *self.positions.last().expect("bundle is never empty")
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn min_separation(&self) -> f64 {
        self.separations.iter().copied().fold(f64::INFINITY, f64::min)
    }
}

/// Traces `l(f^p; x)` from `basepoint`.
pub fn trace_loop(
    f: &DiskMap,
    x: &Config3,
    p: usize,
    basepoint: &Config3,
    opts: &TraceOptions,
) -> Result<TrajectoryBundle> {
    if p == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let mut b = TrajectoryBundle::start(0.0, basepoint.points);
    linear(&mut b, x.points, 1.0 / 3.0)?;
    let stages = p * f.pieces().len();
    let mut k = 0;
    for _ in 0..p {
        for piece in f.pieces() {
            let (t0, t1) = (
                1.0 / 3.0 + k as f64 / (3.0 * stages as f64),
                1.0 / 3.0 + (k + 1) as f64 / (3.0 * stages as f64),
            );
            match piece {
                Piece::Twist { .. } => twist_segment(&mut b, &piece.effective_twist().unwrap(), t0, t1, opts)?,
                Piece::Flow { flow } => flow_segment(&mut b, flow, t0, t1, opts)?,
            }
            k += 1;
        }
    }
    linear(&mut b, basepoint.points, 1.0)?;
    Ok(b)
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    [(0, 1), (0, 2), (1, 2)].into_iter()
}

fn dist(a: Point, b: Point) -> f64 {
    norm([a[0] - b[0], a[1] - b[1]])
}

fn diff(pos: &[Point; 3], i: usize, j: usize) -> Point {
    [pos[j][0] - pos[i][0], pos[j][1] - pos[i][1]]
}

/// Straight-line move of all strands; one step, with the exact minimum separation.
fn linear(b: &mut TrajectoryBundle, to: [Point; 3], t1: f64) -> Result<()> {
    let from = b.last();
    let sep = pairs()
        .map(|(i, j)| {
            let d0 = diff(&from, i, j);
            let d1 = diff(&to, i, j);
            let v = [d1[0] - d0[0], d1[1] - d0[1]];
            let vv = v[0] * v[0] + v[1] * v[1];
            let s = if vv == 0.0 {
                0.0
            } else {
                (-(d0[0] * v[0] + d0[1] * v[1]) / vv).clamp(0.0, 1.0)
            };
            norm([d0[0] + s * v[0], d0[1] + s * v[1]])
        })
        .fold(f64::INFINITY, f64::min);
    b.push(t1, to, sep)
}

/// Step acceptance: strand travel `travel[i]` over the step bounds how far each difference
/// vector can turn.
fn step_ok(p0: &[Point; 3], p1: &[Point; 3], travel: [f64; 3], max_turn: f64) -> (bool, f64) {
    let mut ok = true;
    let mut sep = f64::INFINITY;
    for (i, j) in pairs() {
        let l = travel[i] + travel[j];
        let d0 = norm(diff(p0, i, j));
        let d1 = norm(diff(p1, i, j));
        let lower = d0.max(d1) - l;
        sep = sep.min(lower.max(0.0)).min(d0).min(d1);
        if l > max_turn * lower {
            ok = false;
        }
    }
    (ok, sep)
}

fn twist_segment(b: &mut TrajectoryBundle, twist: &RadialTwist, t0: f64, t1: f64, opts: &TraceOptions) -> Result<()> {
    let start = b.last();
    let angles: Vec<f64> = start.iter().map(|&p| twist.angle_at(p, 1.0)).collect();
    let radii: Vec<f64> = start.iter().map(|&p| twist.distance_to_center(p)).collect();
    let at = |s: f64| -> [Point; 3] {
        let mut out = start;
        for i in 0..3 {
            out[i] = rotate_about(start[i], twist.center, s * angles[i]);
        }
        out
    };
    let max_angle = angles.iter().fold(0.0f64, |m, a| m.max(a.abs()));
    if max_angle == 0.0 {
        return Ok(());
    }
    let chunks = (max_angle / opts.rotation()).ceil().max(1.0) as usize;
    let mut stack: Vec<(f64, f64, u32)> = (0..chunks)
        .rev()
        .map(|c| (c as f64 / chunks as f64, (c + 1) as f64 / chunks as f64, 0))
        .collect();
    let mut s_prev = 0.0;
    let mut p_prev = start;
    while let Some((s0, s1, depth)) = stack.pop() {
        debug_assert_eq!(s0, s_prev);
        let p1 = at(s1);
        let travel = [0, 1, 2].map(|i| angles[i].abs() * radii[i] * (s1 - s0));
        let (ok, sep) = step_ok(&p_prev, &p1, travel, opts.turn());
        if !ok {
            if depth < opts.max_depth {
                let mid = 0.5 * (s0 + s1);
                stack.push((mid, s1, depth + 1));
                stack.push((s0, mid, depth + 1));
                continue;
            }
            if sep < COLLISION_TOL {
                return Err(Error::Collision { separation: sep });
            }
            return Err(Error::UnresolvedCrossing(format!(
                "twist step at s = {s0} not resolvable at depth {depth}"
            )));
        }
        b.push(t0 + s1 * (t1 - t0), p1, sep)?;
        s_prev = s1;
        p_prev = p1;
    }
    Ok(())
}

fn flow_segment(b: &mut TrajectoryBundle, flow: &HamiltonianFlow, t0: f64, t1: f64, opts: &TraceOptions) -> Result<()> {
    let start = b.last();
    let base = flow.steps.max(1) << opts.level.min(20);
    'refine: for doubling in 0..=opts.max_depth.min(10) {
        let n = base << doubling;
        let h = 1.0 / n as f64;
        let mut samples = Vec::with_capacity(n);
        let mut prev = start;
        for k in 0..n {
            let mut next = prev;
            for i in 0..3 {
                next[i] = flow.rk4(k as f64 * h, h, prev[i]);
                if !norm(next[i]).le(&1.0) {
                    return Err(Error::Integration(format!("strand {i} left the disk at step {k}")));
                }
            }
            // chords stand in for arc lengths here
            let travel = [0, 1, 2].map(|i| dist(prev[i], next[i]));
            let (ok, sep) = step_ok(&prev, &next, travel, opts.turn());
            if !ok {
                if sep < COLLISION_TOL {
                    return Err(Error::Collision { separation: sep });
                }
                continue 'refine;
            }
            samples.push((t0 + (k + 1) as f64 * h * (t1 - t0), next, sep));
            prev = next;
        }
        for (t, pos, sep) in samples {
            b.push(t, pos, sep)?;
        }
        return Ok(());
    }
    Err(Error::UnresolvedCrossing("flow segment not resolvable".into()))
}
