//! Stratified, matched sampling of three-point configurations.
//!
//! The disk is cut into regions: the support disks of a closed-form map (or one
//! origin-centered ball holding the support) and the rest. A stratum fixes how many of the
//! three points fall in each region; its probability under `Omega^3` is multinomial in the
//! regions' areas. Configurations with every point outside the support give the trivial
//! braid and are never sampled.
//!
//! Sample `i` of stratum `k` draws from streams keyed by `(k, i, attempt)`, and every map in a
//! run consumes those streams identically. For a sequence of shrinks `s_r^n f` the points in
//! support disks are therefore exact rescalings of one another.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::QmSpec;
use crate::disk::{pure_braid, Config3, DiskMap, Point, TraceOptions};
use crate::rng::{mix, stream_rng};
use crate::{Error, Result};

/// Rejection rate above which a run is aborted.
pub const MAX_REJECTION_RATE: f64 = 0.05;

const MAX_ATTEMPTS: u64 = 64;

/// Disks cutting up the support of `f`.
pub fn regions_of(f: &DiskMap) -> Vec<(Point, f64)> {
    if f.is_identity() {
        return Vec::new();
    }
    match f.support_disks() {
        Ok(d) => d,
        Err(_) => {
            let r = f.support_radius();
            if r > 0.0 {
                vec![([0.0, 0.0], r)]
            } else {
                Vec::new()
            }
        }
    }
}

/// Count vectors over `m` regions plus the outside, excluding "all outside".
pub fn strata(m: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, left: usize, slots: usize, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in (0..=left).rev() {
            prefix.push(c);
            rec(prefix, left - c, slots - 1, out);
            prefix.pop();
        }
    }
    if m == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), 3, m + 1, &mut out);
    out.retain(|c| c[m] != 3);
    out
}

/// `Omega^3`-probability of a stratum.
pub fn stratum_weight(counts: &[usize], regions: &[(Point, f64)]) -> f64 {
    let mut areas: Vec<f64> = regions.iter().map(|&(_, r)| r * r).collect();
    areas.push(1.0 - areas.iter().sum::<f64>());
    let fact = |n: usize| (1..=n).product::<usize>() as f64;
    let coef = 6.0 / counts.iter().map(|&c| fact(c)).product::<f64>();
    coef * counts
        .iter()
        .zip(&areas)
        .map(|(&c, &a)| a.powi(c as i32))
        .product::<f64>()
}

fn in_disk(rng: &mut ChaCha8Rng, c: Point, r: f64) -> Point {
    let u: f64 = rng.random();
    let a: f64 = rng.random::<f64>() * 2.0 * PI;
    let rho = r * u.sqrt();
    [c[0] + rho * a.cos(), c[1] + rho * a.sin()]
}

fn outside(rng: &mut ChaCha8Rng, regions: &[(Point, f64)]) -> Result<Point> {
    for _ in 0..1_000_000 {
        let p = in_disk(rng, [0.0, 0.0], 1.0);
        if regions.iter().all(|&(c, r)| (p[0] - c[0]).hypot(p[1] - c[1]) >= r) {
            return Ok(p);
        }
    }
    Err(Error::InvalidArgument("support leaves no room outside".into()))
}

/// A configuration from the stratum `counts`, strand labels assigned uniformly at random.
pub fn sample_in_stratum(
    counts: &[usize],
    regions: &[(Point, f64)],
    main: &mut ChaCha8Rng,
    out: &mut ChaCha8Rng,
) -> Result<[Point; 3]> {
    let mut pts: Vec<Point> = Vec::with_capacity(3);
    for (k, &(c, r)) in regions.iter().enumerate() {
        for _ in 0..counts[k] {
            pts.push(in_disk(main, c, r));
        }
    }
    for _ in 0..counts[regions.len()] {
        pts.push(outside(out, regions)?);
    }
    pts.shuffle(main);
    Ok([pts[0], pts[1], pts[2]])
}

/// Samples of one stratum, for every map of a run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StratumData {
    pub counts: Vec<usize>,
    /// Probability of the stratum under each map's regions.
    pub weights: Vec<f64>,
    /// `values[j][i] = phi(gamma(f_j^p; x_i)) / p`.
    pub values: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PairedRun {
    pub strata: Vec<StratumData>,
    pub accepted: usize,
    pub rejections: usize,
}

/// Whether an error means "draw another configuration".
fn is_rejection(e: &Error) -> bool {
    matches!(e, Error::Collision { .. } | Error::UnresolvedCrossing(_))
}

/// Runs the same stratified samples through every map in `maps`.
///
/// All maps must cut the disk into the same number of regions.
pub fn paired_run(maps: &[DiskMap], qm: &QmSpec, p: usize, n: usize, seed: u64) -> Result<PairedRun> {
    if p == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    if n == 0 {
        return Err(Error::EmptySample);
    }
    let regions: Vec<Vec<(Point, f64)>> = maps.iter().map(regions_of).collect();
    let m = regions.first().map_or(0, Vec::len);
    if regions.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidArgument(
            "maps cut the disk into different regions".into(),
        ));
    }
    let strata = strata(m);
    if strata.is_empty() {
        return Ok(PairedRun {
            strata: Vec::new(),
            accepted: n,
            rejections: 0,
        });
    }
    if n < strata.len() {
        return Err(Error::InvalidArgument(format!(
            "{n} samples cannot cover {} strata",
            strata.len()
        )));
    }
    let per = |k: usize| n / strata.len() + usize::from(k < n % strata.len());
    let tasks: Vec<(usize, usize)> = (0..strata.len())
        .flat_map(|k| (0..per(k)).map(move |i| (k, i)))
        .collect();
    let base = Config3::basepoint();
    let opts = TraceOptions::default();
    let results: Vec<Result<(Vec<f64>, usize)>> = tasks
        .par_iter()
        .map(|&(k, i)| {
            let mut rejected = 0;
            'attempt: for a in 0..MAX_ATTEMPTS {
                let mut values = Vec::with_capacity(maps.len());
                for (j, f) in maps.iter().enumerate() {
                    let mut main = stream_rng(seed, mix(&[k as u64, i as u64, a, 0]));
                    let mut out = stream_rng(seed, mix(&[k as u64, i as u64, a, 1]));
                    let pts = sample_in_stratum(&strata[k], &regions[j], &mut main, &mut out)?;
                    let word = Config3::new(pts).and_then(|x| pure_braid(f, &x, p, &base, &opts));
                    match word {
                        Ok(w) => {
                            let v = qm.evaluate(&w)?;
                            values.push(*v.numer() as f64 / *v.denom() as f64 / p as f64);
                        }
                        Err(e) if is_rejection(&e) => {
                            rejected += 1;
                            continue 'attempt;
                        }
                        Err(e) => return Err(e),
                    }
                }
                return Ok((values, rejected));
            }
            Err(Error::ExcessiveRejection {
                rate: 1.0,
                limit: MAX_REJECTION_RATE,
            })
        })
        .collect();
    let mut data: Vec<StratumData> = strata
        .iter()
        .map(|c| StratumData {
            counts: c.clone(),
            weights: regions.iter().map(|r| stratum_weight(c, r)).collect(),
            values: vec![Vec::new(); maps.len()],
        })
        .collect();
    let mut rejections = 0;
    for (&(k, _), r) in tasks.iter().zip(results) {
        let (values, rej) = r?;
        rejections += rej;
        for (j, v) in values.into_iter().enumerate() {
            data[k].values[j].push(v);
        }
    }
    let rate = rejections as f64 / (n + rejections) as f64;
    if rate > MAX_REJECTION_RATE {
        return Err(Error::ExcessiveRejection {
            rate,
            limit: MAX_REJECTION_RATE,
        });
    }
    Ok(PairedRun {
        strata: data,
        accepted: n,
        rejections,
    })
}

/// Mean and unbiased sample variance.
pub fn mean_var(xs: &[f64]) -> (f64, f64) {
    let n = xs.len();
    if n == 0 {
        return (0.0, 0.0);
    }
    let mean = xs.iter().sum::<f64>() / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let ss = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>();
    (mean, ss / (n - 1) as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::RadialTwist;

    #[test]
    fn strata_enumeration() {
        assert!(strata(0).is_empty());
        assert_eq!(strata(1), vec![vec![3, 0], vec![2, 1], vec![1, 2]]);
        assert_eq!(strata(2).len(), 9);
    }

    #[test]
    fn weights_sum_with_trivial_stratum_to_one() {
        let regions = vec![([-0.4, 0.0], 0.5), ([0.5, 0.0], 0.3)];
        let total: f64 = strata(2).iter().map(|c| stratum_weight(c, &regions)).sum();
        let outside: f64 = 1.0 - 0.25 - 0.09;
        assert!((total + outside.powi(3) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn samples_land_in_their_regions() {
        let regions = vec![([-0.4, 0.0], 0.5), ([0.5, 0.0], 0.3)];
        let mut main = stream_rng(1, 2);
        let mut out = stream_rng(1, 3);
        for _ in 0..100 {
            let pts = sample_in_stratum(&[1, 1, 1], &regions, &mut main, &mut out).unwrap();
            let mut tally = [0; 3];
            for p in pts {
                let k = regions
                    .iter()
                    .position(|&(c, r)| (p[0] - c[0]).hypot(p[1] - c[1]) < r)
                    .unwrap_or(2);
                tally[k] += 1;
            }
            assert_eq!(tally, [1, 1, 1]);
        }
    }

    #[test]
    fn identity_run_is_empty() {
        let run = paired_run(&[DiskMap::identity()], &QmSpec::RademacherMinusWrithe, 3, 10, 0).unwrap();
        assert!(run.strata.is_empty());
    }

    #[test]
    fn shrunk_maps_need_matching_regions() {
        let t = RadialTwist::new([0.0, 0.0], 0.5, 1.0, 1.0).unwrap();
        let f = DiskMap::twist(t);
        let r = paired_run(&[f, DiskMap::identity()], &QmSpec::Writhe, 1, 10, 0);
        assert!(matches!(r, Err(Error::InvalidArgument(_))));
    }
}
