use serde::Serialize;

use super::{conj_norm, GroupTable, NormTable, SymClass};
use crate::{Error, Result};

/// Pairwise distances `d([f],[g]) = log max{q_{f}(g), q_{g}(f)}` between the
/// non-trivial symmetrized classes of a group.
#[derive(Debug, Clone, Serialize)]
pub struct MetricMatrix {
    pub classes: Vec<SymClass>,
    /// `q[i][j] = q_{rep_i}(rep_j)`: conjugates of `rep_i^{±1}` needed to write `rep_j`.
    pub q: Vec<Vec<u32>>,
    /// Natural-log distances.
    pub d: Vec<Vec<f64>>,
}

impl MetricMatrix {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Builds a matrix from exact norm data; `q` must be square.
    pub fn from_norms(classes: Vec<SymClass>, q: Vec<Vec<u32>>) -> Self {
        let n = classes.len();
        let d = (0..n)
            .map(|i| (0..n).map(|j| (q[i][j].max(q[j][i]) as f64).ln()).collect())
            .collect();
        MetricMatrix { classes, q, d }
    }

    /// Checks every metric axiom exhaustively, returning the first failure.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let n = self.len();
        for i in 0..n {
            if self.d[i][i] != 0.0 {
                return Err(format!("d({i},{i}) = {}", self.d[i][i]));
            }
            for j in 0..n {
                if self.d[i][j] != self.d[j][i] {
                    return Err(format!("asymmetric at ({i},{j})"));
                }
                if i != j && self.d[i][j] <= 0.0 {
                    return Err(format!("distinct classes {i},{j} at distance 0"));
                }
                for k in 0..n {
                    // exact form of the triangle inequality on the integer data
                    let lhs = self.q[i][k].max(self.q[k][i]) as u64;
                    let rhs = self.q[i][j].max(self.q[j][i]) as u64 * self.q[j][k].max(self.q[k][j]) as u64;
                    if lhs > rhs {
                        return Err(format!("triangle inequality fails for ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// CSV with header `class_repr,class_repr,q_fg,q_gf,d`, one row per ordered pair.
    /// `q_fg` is `q_{f}(g)` and `q_gf` is `q_{g}(f)`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("class_repr,class_repr,q_fg,q_gf,d\n");
        for i in 0..self.len() {
            for j in 0..self.len() {
                out.push_str(&format!(
                    "{},{},{},{},{:.17}\n",
                    self.classes[i].representative,
                    self.classes[j].representative,
                    self.q[i][j],
                    self.q[j][i],
                    self.d[i][j]
                ));
            }
        }
        out
    }
}

fn class_norms(group: &GroupTable, classes: &[SymClass]) -> Result<Vec<NormTable>> {
    classes.iter().map(|c| conj_norm(group, &[c.rep_index])).collect()
}

/// Computes the metric on `M(G)`, verifying the metric axioms on the result.
pub fn tsuboi_metric(group: &GroupTable) -> Result<MetricMatrix> {
    let classes = group.sym_classes();
    let tables = class_norms(group, &classes)?;
    let q = tables
        .iter()
        .map(|t| classes.iter().map(|c| t.get(c.rep_index)).collect())
        .collect();
    let m = MetricMatrix::from_norms(classes, q);
    m.check_axioms().map_err(Error::InvalidArgument)?;
    Ok(m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubmultiplicativityReport {
    pub triples_checked: usize,
    pub violations: usize,
    /// `(f, g, h)` class indices of the first violation of `q_f(h) <= q_f(g) q_g(h)`.
    pub first_violation: Option<(usize, usize, usize)>,
}

impl SubmultiplicativityReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Exhaustively checks `q_{f}(h) <= q_{f}(g) q_{g}(h)` over all triples of
/// symmetrized-class representatives.
pub fn verify_submultiplicativity(group: &GroupTable) -> Result<SubmultiplicativityReport> {
    let classes = group.sym_classes();
    let tables = class_norms(group, &classes)?;
    let n = classes.len();
    let q = |a: usize, b: usize| tables[a].get(classes[b].rep_index) as u64;
    let mut report = SubmultiplicativityReport {
        triples_checked: 0,
        violations: 0,
        first_violation: None,
    };
    for f in 0..n {
        for g in 0..n {
            for h in 0..n {
                report.triples_checked += 1;
                if q(f, h) > q(f, g) * q(g, h) {
                    report.violations += 1;
                    report.first_violation.get_or_insert((f, g, h));
                }
            }
        }
    }
    Ok(report)
}
