//! The sequence `f_n = s_r^n f` of shrunk copies of a map in the kernel of the Calabi
//! homomorphism, with the bounds that separate it from itself and from the powers of `g`.

use serde::{Deserialize, Serialize};

use super::certificate::{area_bound, bound_certificate, AreaBound, BoundCertificate, Validity};
use super::estimate::{gamma_estimate, GGEstimate};
use super::sampling::{mean_var, paired_run};
use crate::braid::QmSpec;
use crate::disk::DiskMap;
use crate::{Error, Result};

/// `|Cal f|` accepted as zero.
pub const CALABI_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SequencePoint {
    pub n: u32,
    /// Estimate for `f_0` on the samples shared with `f_n`.
    pub base_mean: f64,
    pub mean: f64,
    pub stderr: f64,
    /// `r^(-6n) * base_mean`.
    pub predicted: f64,
    /// `sqrt(stderr^2 + (r^(-6n) stderr_0)^2)`, treating the two estimates as independent.
    pub combined_stderr: f64,
    /// Standard error of `mean - predicted` over the paired samples.
    pub diff_stderr: f64,
    pub rejections: usize,
}

impl SequencePoint {
    /// Agreement with the iterated scaling law within `z` standard errors.
    pub fn consistent(&self, z: f64) -> bool {
        let tol = z * self.combined_stderr + 1e-12 * self.predicted.abs();
        (self.mean - self.predicted).abs() <= tol
    }
}

/// Estimates `Gamma(f_n)` and `Gamma(f_0)` on one set of matched samples.
pub fn sequence_point(
    f: &DiskMap,
    qm: &QmSpec,
    r: f64,
    n: u32,
    p: usize,
    samples: usize,
    seed: u64,
) -> Result<SequencePoint> {
    let mut fnn = f.clone();
    for _ in 0..n {
        fnn = fnn.shrink(r)?;
    }
    let factor = r.powi(-6 * n as i32);
    let run = paired_run(&[f.clone(), fnn], qm, p, samples, seed)?;
    let (mut base, mut mean, mut var0, mut var, mut dvar) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for s in &run.strata {
        let (w0, w1) = (s.weights[0], s.weights[1]);
        let k = s.values[0].len() as f64;
        let (m0, v0) = mean_var(&s.values[0]);
        var0 += w0 * w0 * v0 / k;
        let (m1, v1) = mean_var(&s.values[1]);
        base += w0 * m0;
        mean += w1 * m1;
        var += w1 * w1 * v1 / k;
        let d: Vec<f64> = s.values[0]
            .iter()
            .zip(&s.values[1])
            .map(|(a, b)| w1 * b - factor * w0 * a)
            .collect();
        dvar += mean_var(&d).1 / k;
    }
    Ok(SequencePoint {
        n,
        base_mean: base,
        mean,
        stderr: var.sqrt(),
        predicted: factor * base,
        combined_stderr: (var + factor * factor * var0).sqrt(),
        diff_stderr: dvar.sqrt(),
        rejections: run.rejections,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SequenceReport {
    pub r: f64,
    pub n_max: u32,
    pub m_max: u64,
    pub calabi: f64,
    /// `area[m][n]` bounds `d([f_m], [f_n])` from below.
    pub area_table: Vec<Vec<AreaBound>>,
    pub points: Vec<SequencePoint>,
    /// Every point agrees with `r^(-6n) Gamma(f_0)` within 3 standard errors.
    pub scaling_consistent: bool,
    /// `|Gamma(f_n)|` is non-increasing within error bars.
    pub monotone: bool,
    pub g_estimate: GGEstimate,
    pub assumed_defect: f64,
    /// `sup_n |Gamma(f_n)|` used as `C_K`.
    pub c_k: f64,
    pub certificates: Vec<BoundCertificate>,
    /// Shrinking commutes with composition, checked on the pieces of `f`.
    pub transport_identity: bool,
    pub notes: Vec<String>,
}

pub struct SequenceParams {
    pub r: f64,
    pub n_max: u32,
    pub m_max: u64,
    pub power: usize,
    pub samples: usize,
    pub seed: u64,
    pub assumed_defect: f64,
}

/// Checks the preconditions on `f` and `g` and returns the estimate for `g`.
pub fn sequence_preconditions(
    f: &DiskMap,
    g: &DiskMap,
    qm: &QmSpec,
    prm: &SequenceParams,
) -> Result<(f64, GGEstimate)> {
    if !(prm.r > 1.0 && prm.r.is_finite()) {
        return Err(Error::InvalidArgument(format!("shrink factor {} must exceed 1", prm.r)));
    }
    if prm.m_max == 0 {
        return Err(Error::InvalidArgument("m_max must be at least 1".into()));
    }
    let cal = f.calabi()?;
    if cal.abs() > CALABI_TOLERANCE {
        return Err(Error::InvalidArgument(format!(
            "Calabi invariant of f is {cal:e}, not zero"
        )));
    }
    let ge = gamma_estimate(g, qm, prm.power, prm.samples, prm.seed)?;
    if !ge.significant(3.0) {
        return Err(Error::InvalidArgument(format!(
            "estimate for g ({:e} +- {:e}) is not 3 standard errors from zero",
            ge.mean, ge.stderr
        )));
    }
    Ok((cal, ge))
}

fn transport_identity(f: &DiskMap, r: f64) -> Result<bool> {
    let pieces = f.pieces();
    if pieces.len() < 2 {
        return Ok(true);
    }
    let (head, tail) = pieces.split_at(pieces.len() / 2);
    let a = DiskMap::from_pieces(head.to_vec());
    let b = DiskMap::from_pieces(tail.to_vec());
    // f runs `a` first, then `b`
    Ok(f.shrink(r)? == b.shrink(r)?.compose(&a.shrink(r)?))
}

/// Assembles the report from precomputed points (which may come from a checkpoint).
pub fn sequence_report(
    f: &DiskMap,
    prm: &SequenceParams,
    calabi: f64,
    g_estimate: GGEstimate,
    points: Vec<SequencePoint>,
) -> Result<SequenceReport> {
    if points.len() != prm.n_max as usize + 1 || points.iter().enumerate().any(|(i, p)| p.n as usize != i) {
        return Err(Error::InvalidArgument(
            "sequence points must cover n = 0..=n_max in order".into(),
        ));
    }
    let area_table = (0..=prm.n_max)
        .map(|m| {
            (0..=prm.n_max)
                .map(|n| area_bound(f, prm.r, m, n))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let scaling_consistent = points.iter().all(|p| p.consistent(3.0));
    let monotone = points
        .windows(2)
        .all(|w| w[1].mean.abs() <= w[0].mean.abs() + 3.0 * (w[0].stderr + w[1].stderr));
    let c_k = points.iter().map(|p| p.mean.abs()).fold(0.0, f64::max);
    let certificates = (1..=prm.m_max)
        .map(|m| {
            let mut c = bound_certificate(g_estimate.mean, prm.assumed_defect, c_k, m, Validity::ConditionalOnD)?;
            c.reference = format!("{{f_n : 0 <= n <= {}}}", prm.n_max);
            Ok(c)
        })
        .collect::<Result<Vec<_>>>()?;
    let notes = vec![
        "d([f_n],[f_m]) <= C_2|n-m| rests on transporting a conjugate factorization of s_r(f) \
         through s_r^n; no factorization is searched for, only the transport identity is checked"
            .into(),
        format!(
            "certificates assume the defect of the averaged quasi-morphism is at most {}",
            prm.assumed_defect
        ),
    ];
    Ok(SequenceReport {
        r: prm.r,
        n_max: prm.n_max,
        m_max: prm.m_max,
        calabi,
        area_table,
        scaling_consistent,
        monotone,
        points,
        g_estimate,
        assumed_defect: prm.assumed_defect,
        c_k,
        certificates,
        transport_identity: transport_identity(f, prm.r)?,
        notes,
    })
}

pub fn sequence_experiment(f: &DiskMap, g: &DiskMap, qm: &QmSpec, prm: &SequenceParams) -> Result<SequenceReport> {
    let (cal, ge) = sequence_preconditions(f, g, qm, prm)?;
    let points = (0..=prm.n_max)
        .map(|n| sequence_point(f, qm, prm.r, n, prm.power, prm.samples, prm.seed))
        .collect::<Result<Vec<_>>>()?;
    sequence_report(f, prm, cal, ge, points)
}

#[cfg(test)]
mod tests {
    use std::f64::consts::PI;

    use super::*;
    use crate::disk::{make_kercal_map, RadialTwist};

    fn params(n_max: u32, m_max: u64) -> SequenceParams {
        SequenceParams {
            r: 2.0,
            n_max,
            m_max,
            power: 1,
            samples: 30,
            seed: 4,
            assumed_defect: 6.0,
        }
    }

    fn kercal() -> DiskMap {
        let a = RadialTwist::new([-0.45, 0.0], 0.5, 2.0 * PI, 0.0).unwrap();
        let b = RadialTwist::new([0.55, 0.0], 0.35, -1.0, 0.0).unwrap();
        make_kercal_map(a, b).unwrap()
    }

    fn full_twist() -> DiskMap {
        DiskMap::twist(RadialTwist::new([0.0, 0.0], 0.6, 2.0 * PI, 0.0).unwrap())
    }

    #[test]
    fn minimal_experiment() {
        let rep = sequence_experiment(&kercal(), &full_twist(), &QmSpec::RademacherMinusWrithe, &params(0, 1)).unwrap();
        assert_eq!(rep.certificates.len(), 1);
        assert_eq!(rep.area_table.len(), 1);
        assert_eq!(rep.area_table[0][0].bound, 0.0);
        assert!(rep.transport_identity);
        assert!(rep.certificates.iter().all(|c| c.validity == Validity::ConditionalOnD));
    }

    #[test]
    fn preconditions() {
        let qm = QmSpec::RademacherMinusWrithe;
        assert!(sequence_experiment(&full_twist(), &full_twist(), &qm, &params(1, 1)).is_err());
        assert!(sequence_experiment(&kercal(), &DiskMap::identity(), &qm, &params(1, 1)).is_err());
    }

    #[test]
    fn report_needs_every_point() {
        let prm = params(2, 1);
        let ge = gamma_estimate(&full_twist(), &QmSpec::RademacherMinusWrithe, 1, 30, 0).unwrap();
        assert!(sequence_report(&kercal(), &prm, 0.0, ge, Vec::new()).is_err());
    }
}
