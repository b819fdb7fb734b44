//! Python bindings: Seifert forms over Z with their invariants, the
//! covering/uncovering dictionary, and the randomized campaigns.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};
use pyo3::IntoPyObjectExt;
use serde_json::Value;

use seiblan::blanchfield::BlanchfieldPresentation;
use seiblan::forms::{rank_certificate, RankCertificate};
use seiblan::invariants::{invariant_report, knot_table, lookup_knot};
use seiblan::json as wire;
use seiblan::selftest::{roundtrip_campaign, run_selftest};
use seiblan::{BaseRing, Error, Eta};

fn to_py_err(e: Error) -> PyErr {
    match e {
        Error::BadScalar(_)
        | Error::ShapeMismatch(_)
        | Error::RingMismatch(_, _)
        | Error::NotSquare(_, _)
        | Error::NotPrime(_) => PyValueError::new_err(e.to_string()),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn json_to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    match v {
        Value::Null => Ok(py.None()),
        Value::Bool(b) => b.into_py_any(py),
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py_any(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py_any(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py_any(py)
            }
        }
        Value::String(s) => s.into_py_any(py),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(json_to_py(py, item)?)?;
            }
            list.into_py_any(py)
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (k, val) in map {
                dict.set_item(k, json_to_py(py, val)?)?;
            }
            dict.into_py_any(py)
        }
    }
}

/// A Seifert form over the integers.
#[pyclass(name = "SeifertForm")]
struct PySeifertForm {
    inner: seiblan::SeifertForm,
}

#[pymethods]
impl PySeifertForm {
    /// Build a nonsingular form from a square integer pairing matrix.
    #[new]
    #[pyo3(signature = (theta, eta = 1))]
    fn new(theta: Vec<Vec<i64>>, eta: i64) -> PyResult<Self> {
        let eta = Eta::from_sign(eta).map_err(to_py_err)?;
        let rows: Vec<&[i64]> = theta.iter().map(|r| r.as_slice()).collect();
        let m = seiblan::ExactMatrix::from_i64(BaseRing::Integers, &rows);
        let inner =
            seiblan::SeifertForm::from_pairing(BaseRing::Integers, m, eta).map_err(to_py_err)?;
        Ok(PySeifertForm { inner })
    }

    /// Parse the JSON wire format {"eta", "theta", "e"?}.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let v: Value =
            serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        let inner =
            wire::seifert_form_from_value(BaseRing::Integers, &v).map_err(to_py_err)?;
        Ok(PySeifertForm { inner })
    }

    #[getter]
    fn rank(&self) -> usize {
        self.inner.rank()
    }

    #[getter]
    fn eta(&self) -> i64 {
        self.inner.eta().sign()
    }

    fn is_nonsingular(&self) -> bool {
        self.inner.is_nonsingular()
    }

    /// Alexander polynomial as a list of [degree, coefficient-string].
    fn alexander(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let p = seiblan::alexander(&self.inner).map_err(to_py_err)?;
        json_to_py(py, &wire::laurent_to_value(&p)["coeffs"])
    }

    fn signature(&self) -> PyResult<i64> {
        seiblan::signature(&self.inner).map_err(to_py_err)
    }

    /// |Delta(-1)| as a decimal string.
    fn determinant(&self) -> PyResult<String> {
        seiblan::determinant_invariant(&self.inner)
            .map(|d| d.to_string())
            .map_err(to_py_err)
    }

    fn invariants(&self, py: Python<'_>) -> PyResult<Py<PyAny>> {
        let report = invariant_report(&self.inner).map_err(to_py_err)?;
        json_to_py(py, &wire::report_to_value(&report))
    }

    fn direct_sum(&self, other: &PySeifertForm) -> PyResult<Self> {
        let inner = self.inner.direct_sum(&other.inner).map_err(to_py_err)?;
        Ok(PySeifertForm { inner })
    }

    /// Covering Blanchfield form in the JSON wire format.
    fn cover_json(&self) -> PyResult<String> {
        let cov = self.inner.cover().map_err(to_py_err)?;
        Ok(wire::to_string_pretty(&wire::blanchfield_form_to_value(&cov)))
    }

    /// The localized form (1-z) theta in the JSON wire format.
    fn localize_json(&self) -> PyResult<String> {
        let loc = self.inner.localize().map_err(to_py_err)?;
        Ok(wire::to_string_pretty(&wire::localized_form_to_value(&loc)))
    }

    fn to_json(&self) -> String {
        wire::to_string_pretty(&wire::seifert_form_to_value(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!(
            "SeifertForm(rank={}, eta={:+}, nonsingular={})",
            self.inner.rank(),
            self.inner.eta().sign(),
            self.inner.is_nonsingular()
        )
    }
}

/// Names of the built-in knots.
#[pyfunction]
fn knot_names() -> Vec<String> {
    knot_table().iter().map(|k| k.name.to_string()).collect()
}

/// Invariant report of a built-in knot.
#[pyfunction]
fn knot_invariants(py: Python<'_>, name: &str) -> PyResult<Py<PyAny>> {
    let rec = lookup_knot(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown knot {name:?}")))?;
    let form = rec.form(BaseRing::Integers).map_err(to_py_err)?;
    let report = invariant_report(&form).map_err(to_py_err)?;
    json_to_py(py, &wire::report_to_value(&report))
}

/// Built-in Seifert form of a named knot.
#[pyfunction]
fn knot_form(name: &str) -> PyResult<PySeifertForm> {
    let rec = lookup_knot(name)
        .ok_or_else(|| PyValueError::new_err(format!("unknown knot {name:?}")))?;
    Ok(PySeifertForm { inner: rec.form(BaseRing::Integers).map_err(to_py_err)? })
}

/// Companion Seifert module of a presented Blanchfield module
/// ({"d": laurent-matrix} JSON in, module JSON out).
#[pyfunction]
fn seifertize(presentation_json: &str) -> PyResult<String> {
    let v: Value = serde_json::from_str(presentation_json)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let d = wire::presentation_from_value(BaseRing::Integers, &v).map_err(to_py_err)?;
    let pres = BlanchfieldPresentation::new(d).map_err(to_py_err)?;
    let (module, info) = pres.seifertize_with_info().map_err(to_py_err)?;
    let mut value = wire::module_to_value(&module);
    let obj = value.as_object_mut().unwrap();
    obj.insert("degree".into(), Value::from(info.degree));
    obj.insert("base_rank".into(), Value::from(info.base_rank));
    Ok(wire::to_string_pretty(&value))
}

/// Reconstruct a nonsingular Seifert form from a Blanchfield form
/// (JSON in, {"form", "trace"} JSON out).
#[pyfunction]
fn uncover(blanchfield_json: &str) -> PyResult<String> {
    let v: Value = serde_json::from_str(blanchfield_json)
        .map_err(|e| PyValueError::new_err(e.to_string()))?;
    let bform = wire::blanchfield_form_from_value(BaseRing::Integers, &v).map_err(to_py_err)?;
    let input_rank = bform.rank();
    let (form, trace) = bform.uncover().map_err(to_py_err)?;
    let cert = match rank_certificate(&trace, 1, input_rank) {
        RankCertificate::Holds => "holds".to_string(),
        RankCertificate::SkippedShortcut => "skipped".to_string(),
        RankCertificate::Failed { expected, actual } => {
            format!("failed: expected {expected}, got {actual}")
        }
    };
    let value = serde_json::json!({
        "form": wire::seifert_form_to_value(&form),
        "trace": {
            "path": if trace.shortcut { "shortcut" } else { "full" },
            "k": trace.k,
            "input_rank": trace.input_rank,
            "result_rank": trace.result_rank,
            "rank_certificate": cert,
        },
    });
    Ok(wire::to_string_pretty(&value))
}

/// Seeded uncover(cover(F)) campaign; returns a summary dict.
#[pyfunction]
#[pyo3(signature = (seed = 0, count = 10, max_rank = 3))]
fn roundtrip(py: Python<'_>, seed: u64, count: usize, max_rank: usize) -> PyResult<Py<PyAny>> {
    let report = roundtrip_campaign(seed, count, max_rank, None, (count * 3) / 10);
    let value = serde_json::json!({
        "all_passed": report.all_passed(),
        "count": report.instances.len(),
        "padded_runs": report.padded_runs,
        "full_path_runs": report.full_path_runs,
        "failures": report.instances.iter().filter(|i| !i.passed)
            .map(|i| format!("#{}: {}", i.index, i.detail)).collect::<Vec<_>>(),
    });
    json_to_py(py, &value)
}

/// Full invariant suites; returns one dict per check.
#[pyfunction]
#[pyo3(signature = (seed = 0))]
fn selftest(py: Python<'_>, seed: u64) -> PyResult<Py<PyAny>> {
    let outcomes = run_selftest(seed);
    let value = Value::Array(
        outcomes
            .iter()
            .map(|o| {
                serde_json::json!({
                    "name": o.name,
                    "passed": o.passed,
                    "detail": o.detail,
                    "elapsed_ms": o.elapsed_ms as u64,
                })
            })
            .collect(),
    );
    json_to_py(py, &value)
}

#[pymodule]
fn seiblan_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySeifertForm>()?;
    m.add_function(wrap_pyfunction!(knot_names, m)?)?;
    m.add_function(wrap_pyfunction!(knot_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(knot_form, m)?)?;
    m.add_function(wrap_pyfunction!(seifertize, m)?)?;
    m.add_function(wrap_pyfunction!(uncover, m)?)?;
    m.add_function(wrap_pyfunction!(roundtrip, m)?)?;
    m.add_function(wrap_pyfunction!(selftest, m)?)?;
    Ok(())
}
