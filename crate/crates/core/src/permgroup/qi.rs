use serde::Serialize;

use super::MetricMatrix;
use crate::{Error, Result};

/// How far the distance-to-basepoint map `[g] -> d([b],[g])` is from an
/// isometric embedding into the half line.
///
/// This is a finite-scale proxy only: on a finite metric space every map is
/// a quasi-isometry, so the constants are what carries information.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistortionReport {
    pub basepoint: usize,
    /// `values[i] = d([b], class_i)`.
    pub values: Vec<f64>,
    /// Multiplicative constant of the reported pair; always 1 because the
    /// upper bound `|r(x)-r(y)| <= d(x,y)` is the triangle inequality.
    pub lambda: f64,
    /// Smallest additive constant valid with `lambda`.
    pub additive: f64,
    /// Smallest multiplicative constant valid with zero additive constant,
    /// `None` when two distinct classes share an image value.
    pub lambda_without_additive: Option<f64>,
    /// Largest gap between consecutive sorted image values.
    pub coverage_radius: f64,
}

/// Exhaustive pair scan of the basepoint-distance embedding.
pub fn qi_diagnostic(metric: &MetricMatrix, basepoint: usize) -> Result<DistortionReport> {
    let n = metric.len();
    if basepoint >= n {
        return Err(Error::InvalidArgument(format!(
            "basepoint {basepoint} outside {n} classes"
        )));
    }
    let values: Vec<f64> = (0..n).map(|i| metric.d[basepoint][i]).collect();
    let mut additive = 0.0f64;
    let mut lambda_zero = Some(1.0f64);
    for i in 0..n {
        for j in i + 1..n {
            let d = metric.d[i][j];
            let gap = (values[i] - values[j]).abs();
            additive = additive.max(d - gap).max(gap - d);
            lambda_zero = match lambda_zero {
                Some(l) if gap > 0.0 => Some(l.max(d / gap).max(gap / d)),
                _ => None,
            };
        }
    }
    let mut sorted = values.clone();
    sorted.sort_by(f64::total_cmp);
    let coverage_radius = sorted.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    Ok(DistortionReport {
        basepoint,
        values,
        lambda: 1.0,
        additive,
        lambda_without_additive: lambda_zero,
        coverage_radius,
    })
}
