//! Python bindings: groups, braid words, disk maps and the Monte Carlo estimators.
//!
//! Structured results (estimates, reports, certificates) come back as plain dicts; exact
//! quasi-morphism values come back as `fractions.Fraction`.

use kercal_core::braid::{self, QmSpec};
use kercal_core::disk::{self, Config3, TraceOptions};
use kercal_core::gg::{self, Validity};
use kercal_core::permgroup::{self, GroupTable};
use num_rational::Rational64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: kercal_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_dict<'py, T: serde::Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (text,))
}

fn fraction<'py>(py: Python<'py>, q: Rational64) -> PyResult<Bound<'py, PyAny>> {
    py.import("fractions")?
        .getattr("Fraction")?
        .call1((*q.numer(), *q.denom()))
}

fn qm(name: &str) -> PyResult<QmSpec> {
    name.parse().map_err(err)
}

fn word(letters: Vec<i32>) -> PyResult<braid::BraidWord> {
    braid::BraidWord::new(3, letters).map_err(err)
}

/// A braid on three strands, as signed generator indices.
#[pyclass(name = "BraidWord", frozen)]
struct PyBraidWord {
    inner: braid::BraidWord,
}

#[pymethods]
impl PyBraidWord {
    #[new]
    fn new(letters: Vec<i32>) -> PyResult<Self> {
        Ok(PyBraidWord { inner: word(letters)? })
    }

    #[getter]
    fn letters(&self) -> Vec<i32> {
        self.inner.letters().to_vec()
    }

    fn writhe(&self) -> i64 {
        self.inner.writhe()
    }

    fn is_pure(&self) -> bool {
        self.inner.is_pure()
    }

    fn pow(&self, k: i64) -> Self {
        PyBraidWord {
            inner: self.inner.pow(k),
        }
    }

    fn inverse(&self) -> Self {
        PyBraidWord {
            inner: self.inner.inverse(),
        }
    }

    #[pyo3(signature = (qm_name = "rademacher-minus-writhe"))]
    fn phi<'py>(&self, py: Python<'py>, qm_name: &str) -> PyResult<Bound<'py, PyAny>> {
        fraction(py, qm(qm_name)?.evaluate(&self.inner).map_err(err)?)
    }

    fn linking_numbers(&self) -> PyResult<Vec<Vec<i64>>> {
        braid::linking_numbers(&self.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("BraidWord({:?})", self.inner.letters())
    }
}

/// `phi_b3`: the homogeneous Rademacher function corrected to vanish on the generators.
#[pyfunction]
fn phi_b3<'py>(py: Python<'py>, letters: Vec<i32>) -> PyResult<Bound<'py, PyAny>> {
    fraction(py, braid::phi_b3(&word(letters)?).map_err(err)?)
}

/// `A_n` (or `S_n`) with its conjugation norms and class metric.
#[pyclass(name = "Group", frozen)]
struct PyGroup {
    inner: GroupTable,
}

#[pymethods]
impl PyGroup {
    #[new]
    #[pyo3(signature = (degree, alternating = true))]
    fn new(degree: usize, alternating: bool) -> PyResult<Self> {
        Ok(PyGroup {
            inner: permgroup::build_group(degree, alternating).map_err(err)?,
        })
    }

    #[getter]
    fn order(&self) -> usize {
        self.inner.order()
    }

    /// Representatives of the non-trivial symmetrized classes, in cycle notation.
    fn classes(&self) -> Vec<String> {
        self.inner
            .sym_classes()
            .iter()
            .map(|c| c.representative.to_string())
            .collect()
    }

    /// `{class: q_K(class)}` with `K` the class of `base`, given in cycle notation.
    fn norms(&self, base: &str) -> PyResult<Vec<(String, u32)>> {
        let g = &self.inner;
        let perm = kercal_core::Permutation::parse_cycles(base, g.degree()).map_err(err)?;
        let idx = g.index_of(&perm).ok_or_else(|| err(kercal_core::Error::NotInGroup))?;
        let table = permgroup::conj_norm(g, &[idx]).map_err(err)?;
        Ok(g.sym_classes()
            .iter()
            .map(|c| (c.representative.to_string(), table.get(c.rep_index)))
            .collect())
    }

    fn metric<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &permgroup::tsuboi_metric(&self.inner).map_err(err)?)
    }

    fn submultiplicativity<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyAny>> {
        to_dict(py, &permgroup::verify_submultiplicativity(&self.inner).map_err(err)?)
    }

    #[pyo3(signature = (basepoint = 0))]
    fn qi_diagnostic<'py>(&self, py: Python<'py>, basepoint: usize) -> PyResult<Bound<'py, PyAny>> {
        let m = permgroup::tsuboi_metric(&self.inner).map_err(err)?;
        to_dict(py, &permgroup::qi_diagnostic(&m, basepoint).map_err(err)?)
    }
}

/// An area-preserving map of the unit disk.
#[pyclass(name = "DiskMap", frozen)]
struct PyDiskMap {
    inner: disk::DiskMap,
}

#[pymethods]
impl PyDiskMap {
    /// Parses the line-oriented map format used by the command-line tool.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        Ok(PyDiskMap {
            inner: disk::parse_map(text).map_err(err)?,
        })
    }

    #[staticmethod]
    fn identity() -> Self {
        PyDiskMap {
            inner: disk::DiskMap::identity(),
        }
    }

    #[staticmethod]
    #[pyo3(signature = (cx, cy, radius, amplitude, exponent, power = 1))]
    fn twist(cx: f64, cy: f64, radius: f64, amplitude: f64, exponent: f64, power: i32) -> PyResult<Self> {
        let t = disk::RadialTwist::new([cx, cy], radius, amplitude, exponent).map_err(err)?;
        Ok(PyDiskMap {
            inner: disk::DiskMap::twists(&[(t, power)]),
        })
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind()
    }

    /// `self . other`: `other` runs first.
    fn compose(&self, other: &PyDiskMap) -> Self {
        PyDiskMap {
            inner: self.inner.compose(&other.inner),
        }
    }

    fn inverse(&self) -> Self {
        PyDiskMap {
            inner: self.inner.inverse(),
        }
    }

    fn shrink(&self, r: f64) -> PyResult<Self> {
        Ok(PyDiskMap {
            inner: self.inner.shrink(r).map_err(err)?,
        })
    }

    fn calabi(&self) -> PyResult<f64> {
        self.inner.calabi().map_err(err)
    }

    fn support_area(&self) -> PyResult<f64> {
        self.inner.support_area().map_err(err)
    }

    fn apply(&self, x: f64, y: f64) -> PyResult<(f64, f64)> {
        let [a, b] = self.inner.apply([x, y]).map_err(err)?;
        Ok((a, b))
    }

    /// Letters of the pure braid traced by `points` under `self^power`.
    #[pyo3(signature = (points, power = 1))]
    fn pure_braid(&self, points: [[f64; 2]; 3], power: usize) -> PyResult<Vec<i32>> {
        let x = Config3::new(points).map_err(err)?;
        let w =
            disk::pure_braid(&self.inner, &x, power, &Config3::basepoint(), &TraceOptions::default()).map_err(err)?;
        Ok(w.letters().to_vec())
    }
}

#[pyfunction]
#[pyo3(signature = (map, qm_name, power, samples, seed))]
fn gamma_estimate<'py>(
    py: Python<'py>,
    map: &PyDiskMap,
    qm_name: &str,
    power: usize,
    samples: usize,
    seed: u64,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = qm(qm_name)?;
    let est = py
        .detach(|| gg::gamma_estimate(&map.inner, &spec, power, samples, seed))
        .map_err(err)?;
    to_dict(py, &est)
}

#[pyfunction]
#[pyo3(signature = (map, qm_name, r, power, samples, seed, z = 3.0))]
#[allow(clippy::too_many_arguments)]
fn scaling_check<'py>(
    py: Python<'py>,
    map: &PyDiskMap,
    qm_name: &str,
    r: f64,
    power: usize,
    samples: usize,
    seed: u64,
    z: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let spec = qm(qm_name)?;
    let rep = py
        .detach(|| gg::scaling_check(&map.inner, &spec, r, power, samples, seed, z))
        .map_err(err)?;
    to_dict(py, &rep)
}

#[pyfunction]
#[pyo3(signature = (phi, defect, c_k, m, exact = false))]
fn bound_certificate<'py>(
    py: Python<'py>,
    phi: f64,
    defect: f64,
    c_k: f64,
    m: u64,
    exact: bool,
) -> PyResult<Bound<'py, PyAny>> {
    let validity = if exact {
        Validity::Exact
    } else {
        Validity::ConditionalOnD
    };
    to_dict(py, &gg::bound_certificate(phi, defect, c_k, m, validity).map_err(err)?)
}

#[pyfunction]
fn area_bound<'py>(py: Python<'py>, map: &PyDiskMap, r: f64, m: u32, n: u32) -> PyResult<Bound<'py, PyAny>> {
    to_dict(py, &gg::area_bound(&map.inner, r, m, n).map_err(err)?)
}

#[pymodule]
fn kercal(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBraidWord>()?;
    m.add_class::<PyGroup>()?;
    m.add_class::<PyDiskMap>()?;
    m.add_function(wrap_pyfunction!(phi_b3, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_estimate, m)?)?;
    m.add_function(wrap_pyfunction!(scaling_check, m)?)?;
    m.add_function(wrap_pyfunction!(bound_certificate, m)?)?;
    m.add_function(wrap_pyfunction!(area_bound, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn module_exposes_exact_values() {
        Python::initialize();
        Python::attach(|py| {
            let m = PyModule::new(py, "kercal").unwrap();
            kercal(&m).unwrap();
            let v = m.getattr("phi_b3").unwrap().call1((vec![1, 1, 2, 2],)).unwrap();
            assert_eq!(v.str().unwrap().to_string(), "-6");
            let g = m.getattr("Group").unwrap().call1((5,)).unwrap();
            assert_eq!(g.getattr("order").unwrap().extract::<usize>().unwrap(), 60);
            let bad = m.getattr("BraidWord").unwrap().call1((vec![4],));
            assert!(bad.unwrap_err().is_instance_of::<PyValueError>(py));
        });
    }
}
