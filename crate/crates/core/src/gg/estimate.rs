use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::sampling::{mean_var, paired_run, PairedRun};
use crate::braid::QmSpec;
use crate::disk::DiskMap;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StratumEstimate {
    pub counts: Vec<usize>,
    pub weight: f64,
    pub samples: usize,
    pub mean: f64,
    pub stddev: f64,
}

/// Monte Carlo estimate of `Gamma_3` at a fixed power.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GGEstimate {
    pub map_kind: String,
    pub qm: String,
    pub power: usize,
    pub samples: usize,
    pub seed: u64,
    pub mean: f64,
    pub stderr: f64,
    pub rejections: usize,
    pub strata: Vec<StratumEstimate>,
}

impl GGEstimate {
    /// Whether the estimate differs from zero by more than `z` standard errors.
    pub fn significant(&self, z: f64) -> bool {
        self.mean.abs() > z * self.stderr
    }
}

fn estimate_from_run(run: &PairedRun, j: usize, f: &DiskMap, qm: &QmSpec, p: usize, n: usize, seed: u64) -> GGEstimate {
    let mut mean = 0.0;
    let mut var = 0.0;
    let strata = run
        .strata
        .iter()
        .map(|s| {
            let w = s.weights[j];
            let (m, v) = mean_var(&s.values[j]);
            let k = s.values[j].len();
            mean += w * m;
            var += w * w * v / k as f64;
            StratumEstimate {
                counts: s.counts.clone(),
                weight: w,
                samples: k,
                mean: m,
                stddev: v.sqrt(),
            }
        })
        .collect();
    GGEstimate {
        map_kind: f.kind().to_string(),
        qm: qm.to_string(),
        power: p,
        samples: n,
        seed,
        mean,
        stderr: var.sqrt(),
        rejections: run.rejections,
        strata,
    }
}

/// Estimates `integral phi(gamma(f^p; x)) / p dOmega^3(x)` with `n` stratified samples.
pub fn gamma_estimate(f: &DiskMap, qm: &QmSpec, p: usize, n: usize, seed: u64) -> Result<GGEstimate> {
    let run = paired_run(std::slice::from_ref(f), qm, p, n, seed)?;
    Ok(estimate_from_run(&run, 0, f, qm, p, n, seed))
}

/// Estimates for several maps on one set of matched samples.
pub fn paired_gamma(maps: &[DiskMap], qm: &QmSpec, p: usize, n: usize, seed: u64) -> Result<Vec<GGEstimate>> {
    let run = paired_run(maps, qm, p, n, seed)?;
    Ok(maps
        .iter()
        .enumerate()
        .map(|(j, f)| estimate_from_run(&run, j, f, qm, p, n, seed))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Extrapolation {
    pub estimates: Vec<GGEstimate>,
    /// Differences of successive means, ordered like `estimates`.
    pub trend: Vec<f64>,
}

impl Extrapolation {
    pub fn last(&self) -> &GGEstimate {
        self.estimates.last().expect("at least one power")
    }
}

/// Estimates at increasing powers, all on the same seed.
pub fn gamma_extrapolate(f: &DiskMap, qm: &QmSpec, powers: &[usize], n: usize, seed: u64) -> Result<Extrapolation> {
    if powers.is_empty() || powers.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument(
            "powers must be a non-empty increasing list".into(),
        ));
    }
    let estimates = powers
        .iter()
        .map(|&p| gamma_estimate(f, qm, p, n, seed))
        .collect::<Result<Vec<_>>>()?;
    let trend = estimates.windows(2).map(|w| w[1].mean - w[0].mean).collect();
    Ok(Extrapolation { estimates, trend })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalingStatus {
    Pass,
    Fail,
    /// The unscaled estimate is too close to zero for a ratio to mean anything.
    Uninformative,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingReport {
    pub r: f64,
    pub power: usize,
    pub original: GGEstimate,
    pub scaled: GGEstimate,
    /// `Gamma(s_r f) / Gamma(f)`.
    pub ratio: f64,
    /// Delta-method combination of the two standard errors, as if the estimates were
    /// independent. The pass flag uses this one.
    pub ratio_stderr: f64,
    /// Delta-method error exploiting the matched samples; tighter, reported for diagnosis.
    pub paired_stderr: f64,
    /// `r^-6`.
    pub expected: f64,
    pub z: f64,
    pub status: ScalingStatus,
}

/// Checks `Gamma(s_r f) = r^-6 Gamma(f)` on matched samples.
///
/// The law needs `phi(sigma_1) = 0`, since the braid of a configuration with a single point in
/// the support is a power of the generators only in that case.
pub fn scaling_check(f: &DiskMap, qm: &QmSpec, r: f64, p: usize, n: usize, seed: u64, z: f64) -> Result<ScalingReport> {
    if !qm.value_on_sigma1()?.is_zero() {
        return Err(Error::ScalingInapplicable);
    }
    let g = f.shrink(r)?;
    let run = paired_run(&[f.clone(), g.clone()], qm, p, n, seed)?;
    let original = estimate_from_run(&run, 0, f, qm, p, n, seed);
    let scaled = estimate_from_run(&run, 1, &g, qm, p, n, seed);
    let expected = r.powi(-6);
    let e = original.mean;
    let ratio = if e == 0.0 { f64::NAN } else { scaled.mean / e };
    // delta method: Var(E'/E) ~ Var(E' - R E) / E^2, with per-stratum paired variances
    let mut var = 0.0;
    if e != 0.0 {
        for s in &run.strata {
            let (w0, w1) = (s.weights[0], s.weights[1]);
            let d: Vec<f64> = s.values[0]
                .iter()
                .zip(&s.values[1])
                .map(|(a, b)| w1 * b - ratio * w0 * a)
                .collect();
            let (_, v) = mean_var(&d);
            var += v / d.len() as f64;
        }
    }
    let paired_stderr = var.sqrt() / e.abs();
    let ratio_stderr = if e == 0.0 || scaled.mean == 0.0 {
        f64::NAN
    } else {
        ratio.abs() * ((original.stderr / e).powi(2) + (scaled.stderr / scaled.mean).powi(2)).sqrt()
    };
    let informative = e != 0.0 && e.abs() >= 3.0 * original.stderr;
    let (zscore, status) = if !informative {
        (f64::NAN, ScalingStatus::Uninformative)
    } else if ratio_stderr == 0.0 {
        let ok = (ratio - expected).abs() <= 1e-9 * expected;
        (0.0, if ok { ScalingStatus::Pass } else { ScalingStatus::Fail })
    } else {
        let zs = (ratio - expected) / ratio_stderr;
        (
            zs,
            if zs.abs() <= z {
                ScalingStatus::Pass
            } else {
                ScalingStatus::Fail
            },
        )
    };
    Ok(ScalingReport {
        r,
        power: p,
        original,
        scaled,
        ratio,
        ratio_stderr,
        paired_stderr,
        expected,
        z: zscore,
        status,
    })
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::disk::RadialTwist;

    fn full_twist(radius: f64) -> DiskMap {
        DiskMap::twist(RadialTwist::new([0.0, 0.0], radius, 2.0 * PI, 0.0).unwrap())
    }

    #[test]
    fn full_twist_is_exact() {
        // every configuration inside the plateau gives the full twist, with phi = -6
        let e = gamma_estimate(&full_twist(0.6), &QmSpec::RademacherMinusWrithe, 1, 60, 3).unwrap();
        let r6 = 0.6f64.powi(6);
        assert!((e.mean + 6.0 * r6).abs() < 1e-12, "{}", e.mean);
        assert!(e.stderr < 1e-12);
    }

    #[test]
    fn identity_estimate_is_zero() {
        let e = gamma_estimate(&DiskMap::identity(), &QmSpec::Writhe, 2, 5, 0).unwrap();
        assert_eq!((e.mean, e.stderr), (0.0, 0.0));
        assert!(e.strata.is_empty());
    }

    #[test]
    fn empty_sample_is_an_error() {
        assert_eq!(
            gamma_estimate(&full_twist(0.5), &QmSpec::Writhe, 1, 0, 0),
            Err(Error::EmptySample)
        );
    }

    #[test]
    fn same_seed_same_estimate() {
        let f = DiskMap::twist(RadialTwist::new([0.0, 0.0], 0.6, 3.0, 1.0).unwrap());
        let a = gamma_estimate(&f, &QmSpec::RademacherMinusWrithe, 2, 30, 11).unwrap();
        let b = gamma_estimate(&f, &QmSpec::RademacherMinusWrithe, 2, 30, 11).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn writhe_scaling_is_refused() {
        assert_eq!(
            scaling_check(&full_twist(0.5), &QmSpec::Writhe, 2.0, 1, 30, 0, 3.0).map(|_| ()),
            Err(Error::ScalingInapplicable)
        );
    }

    #[test]
    fn full_twist_scales_exactly() {
        let rep = scaling_check(&full_twist(0.6), &QmSpec::RademacherMinusWrithe, 2.0, 1, 30, 1, 3.0).unwrap();
        assert_eq!(rep.status, ScalingStatus::Pass);
        assert!((rep.ratio - 2f64.powi(-6)).abs() < 1e-12);
    }

    #[test]
    fn extrapolation_needs_increasing_powers() {
        assert!(gamma_extrapolate(&full_twist(0.5), &QmSpec::Writhe, &[2, 1], 10, 0).is_err());
        let x = gamma_extrapolate(&full_twist(0.5), &QmSpec::RademacherMinusWrithe, &[1, 2], 12, 0).unwrap();
        assert_eq!(x.trend.len(), 1);
        assert!(x.trend[0].abs() < 1e-12);
    }
}
