//! Per-sample braids on uniform configurations, and checks of what each stratum must give.

use num_rational::Rational64;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::sampling::{regions_of, MAX_REJECTION_RATE};
use crate::braid::{linking_numbers, QmSpec};
use crate::disk::{pure_braid, Config3, DiskMap, Point, TraceOptions};
use crate::rng::{mix, stream_rng};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BraidSample {
    pub index: usize,
    pub config: [Point; 3],
    pub word: Vec<i32>,
    pub linking: Vec<Vec<i64>>,
    pub phi: Rational64,
    /// Strands starting inside the support.
    pub inside: [bool; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleBatch {
    pub samples: Vec<BraidSample>,
    pub rejections: usize,
}

impl SampleBatch {
    pub fn rejection_rate(&self) -> f64 {
        self.rejections as f64 / (self.samples.len() + self.rejections) as f64
    }
}

const MAX_ATTEMPTS: u64 = 64;

/// Traces `n` configurations drawn uniformly from `D^3`.
pub fn trace_samples(f: &DiskMap, qm: &QmSpec, p: usize, n: usize, seed: u64) -> Result<SampleBatch> {
    if n == 0 {
        return Err(Error::EmptySample);
    }
    if p == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let regions = regions_of(f);
    let base = Config3::basepoint();
    let opts = TraceOptions::default();
    let results: Vec<Result<(BraidSample, usize)>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rejected = 0;
            for a in 0..MAX_ATTEMPTS {
                let mut rng = stream_rng(seed, mix(&[i as u64, a, 2]));
                let pts: [Point; 3] = std::array::from_fn(|_| {
                    let u: f64 = rand::Rng::random(&mut rng);
                    let t: f64 = rand::Rng::random::<f64>(&mut rng) * std::f64::consts::TAU;
                    [u.sqrt() * t.cos(), u.sqrt() * t.sin()]
                });
                match Config3::new(pts).and_then(|x| pure_braid(f, &x, p, &base, &opts)) {
                    Ok(w) => {
                        let inside = pts.map(|q| regions.iter().any(|&(c, r)| (q[0] - c[0]).hypot(q[1] - c[1]) < r));
                        let sample = BraidSample {
                            index: i,
                            config: pts,
                            linking: linking_numbers(&w)?,
                            phi: qm.evaluate(&w)?,
                            word: w.letters().to_vec(),
                            inside,
                        };
                        return Ok((sample, rejected));
                    }
                    Err(Error::Collision { .. } | Error::UnresolvedCrossing(_)) => rejected += 1,
                    Err(e) => return Err(e),
                }
            }
            Err(Error::ExcessiveRejection {
                rate: 1.0,
                limit: MAX_REJECTION_RATE,
            })
        })
        .collect();
    let mut batch = SampleBatch {
        samples: Vec::with_capacity(n),
        rejections: 0,
    };
    for r in results {
        let (s, rej) = r?;
        batch.samples.push(s);
        batch.rejections += rej;
    }
    if batch.rejection_rate() > MAX_REJECTION_RATE {
        return Err(Error::ExcessiveRejection {
            rate: batch.rejection_rate(),
            limit: MAX_REJECTION_RATE,
        });
    }
    Ok(batch)
}

/// Tally of a batch by the number of strands starting in the support.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct StratumAudit {
    /// Samples with 0, 1, 2 and 3 strands inside.
    pub counts: [usize; 4],
    /// Samples with at most one strand inside whose braid is not trivial.
    pub nontrivial_outside: Vec<usize>,
    /// Two-inside samples with nonzero `phi` or linking involving the outside strand.
    pub two_inside_violations: Vec<usize>,
}

impl StratumAudit {
    pub fn clean(&self) -> bool {
        self.nontrivial_outside.is_empty() && self.two_inside_violations.is_empty()
    }
}

/// Checks every sample against the stratum structure of the scaling argument.
///
/// These identities hold sample by sample only when `f^p` fixes the strands inside the
/// support (a full twist, say); otherwise the closing segments of the loop add bounded
/// corrections that vanish only in the homogenized limit.
pub fn audit_strata(batch: &SampleBatch) -> StratumAudit {
    let mut audit = StratumAudit::default();
    for s in &batch.samples {
        let k = s.inside.iter().filter(|&&b| b).count();
        audit.counts[k] += 1;
        match k {
            0 | 1 => {
                if !s.word.is_empty() {
                    audit.nontrivial_outside.push(s.index);
                }
            }
            2 => {
                let out = s.inside.iter().position(|&b| !b).expect("one strand outside");
                let linked_out = (0..3).any(|j| j != out && s.linking[out][j] != 0);
                if !s.phi.is_zero() || linked_out {
                    audit.two_inside_violations.push(s.index);
                }
            }
            _ => {}
        }
    }
    audit
}
