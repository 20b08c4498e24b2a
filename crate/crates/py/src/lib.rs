//! Python bindings. Structured results cross over as JSON and are decoded
//! with the standard `json` module, so they arrive as plain dicts and lists.

use hlvertex_core::hl_process::{self, HLProcessSpec};
use hlvertex_core::moments::{self, QuadratureOptions};
use hlvertex_core::six_vertex::{self, JaggedDomain, SixVertexParams, VertexProbabilities};
use hlvertex_core::{partitions, rsk, tboson, verify, Partition, SignString};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;

fn err(e: hlvertex_core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let s = serde_json::to_string(value).map_err(|e| PyValueError::new_err(e.to_string()))?;
    py.import("json")?.call_method1("loads", (s,))
}

fn partition(parts: Vec<u32>) -> PyResult<Partition> {
    Partition::new(parts).map_err(err)
}

fn signs(s: Option<&str>, m: usize, n: usize) -> PyResult<SignString> {
    match s {
        Some(s) => s.parse().map_err(err),
        None => Ok(SignString::ascending(m, n)),
    }
}

#[pyfunction]
fn conjugate(parts: Vec<u32>) -> PyResult<Vec<u32>> {
    Ok(partition(parts)?.conjugate().parts().to_vec())
}

/// Boundary sign string of a partition in a `rows x cols` box.
#[pyfunction]
fn string_from_partition(parts: Vec<u32>, rows: usize, cols: usize) -> PyResult<String> {
    let s = partitions::string_from_partition(&partition(parts)?, rows, cols).map_err(err)?;
    Ok(s.to_string())
}

#[pyfunction]
fn partition_from_string(signs: &str) -> PyResult<Vec<u32>> {
    let s: SignString = signs.parse().map_err(err)?;
    let l = partitions::partition_from_string(&s, s.plus_count(), s.minus_count()).map_err(err)?;
    Ok(l.parts().to_vec())
}

#[pyfunction]
fn skew_p(lam: Vec<u32>, mu: Vec<u32>, x: f64, t: f64) -> PyResult<f64> {
    Ok(partitions::skew_p_one(&partition(lam)?, &partition(mu)?, x, t))
}

#[pyfunction]
fn skew_q(lam: Vec<u32>, mu: Vec<u32>, x: f64, t: f64) -> PyResult<f64> {
    Ok(partitions::skew_q_one(&partition(lam)?, &partition(mu)?, x, t))
}

/// Outcome probabilities of a vertex with spectral product `ab`.
#[pyfunction]
fn vertex_probabilities<'py>(py: Python<'py>, t: f64, ab: f64) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &VertexProbabilities::from_product(t, ab))
}

/// Exact law of the support skew diagram of the HL process.
#[pyfunction]
#[pyo3(signature = (t, a, b, s=None))]
fn hl_support_distribution<'py>(
    py: Python<'py>,
    t: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    s: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let s = signs(s, a.len(), b.len())?;
    let spec = HLProcessSpec::new(t, a, b, s).map_err(err)?;
    let cap = hl_process::choose_row_cap(&spec).map_err(err)?;
    to_py(py, &hl_process::exact_support_distribution(&spec, cap).map_err(err)?)
}

/// Exact law of the outgoing skew diagram of the six vertex model.
#[pyfunction]
#[pyo3(signature = (t, a, b, s=None))]
fn sixv_outgoing_distribution<'py>(
    py: Python<'py>,
    t: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    s: Option<&str>,
) -> PyResult<Bound<'py, PyAny>> {
    let (m, n) = (a.len(), b.len());
    let domain = JaggedDomain::new(m, n, signs(s, m, n)?).map_err(err)?;
    let params = SixVertexParams::matched(t, a, b).map_err(err)?;
    to_py(py, &six_vertex::exact_outgoing_distribution(&params, &domain).map_err(err)?)
}

/// Both sides of the moment identity for columns `ms`.
#[pyfunction]
fn moment_match<'py>(py: Python<'py>, ms: Vec<usize>, t: f64, a: Vec<f64>, b: Vec<f64>) -> PyResult<Bound<'py, PyAny>> {
    let params = SixVertexParams::matched(t, a, b).map_err(err)?;
    to_py(py, &moments::moment_match_check(&ms, &params, &QuadratureOptions::default()).map_err(err)?)
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
fn yang_baxter_residual(i1: u8, i2: u8, j1: u8, j2: u8, m: u32, n: u32, a: f64, b: f64, t: f64) -> f64 {
    tboson::verify_yang_baxter(i1, i2, j1, j2, m, n, a, b, t)
}

/// RSK array dynamics from the zero array.
#[pyfunction]
#[pyo3(signature = (rates, t, tmax, seed=0, snapshots=Vec::new()))]
fn run_rsk<'py>(
    py: Python<'py>,
    rates: Vec<f64>,
    t: f64,
    tmax: f64,
    seed: u64,
    snapshots: Vec<f64>,
) -> PyResult<Bound<'py, PyAny>> {
    to_py(py, &rsk::run_rsk(&rates, t, tmax, seed, &snapshots).map_err(err)?)
}

/// Every verification check; `level` is "quick" or "desk".
#[pyfunction]
#[pyo3(signature = (level="quick", seed=0))]
fn verify_all<'py>(py: Python<'py>, level: &str, seed: u64) -> PyResult<Bound<'py, PyAny>> {
    let level = level.parse().map_err(err)?;
    to_py(py, &verify::verify_all(level, seed).map_err(err)?)
}

#[pymodule]
fn hlvertex(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(string_from_partition, m)?)?;
    m.add_function(wrap_pyfunction!(partition_from_string, m)?)?;
    m.add_function(wrap_pyfunction!(skew_p, m)?)?;
    m.add_function(wrap_pyfunction!(skew_q, m)?)?;
    m.add_function(wrap_pyfunction!(vertex_probabilities, m)?)?;
    m.add_function(wrap_pyfunction!(hl_support_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(sixv_outgoing_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(moment_match, m)?)?;
    m.add_function(wrap_pyfunction!(yang_baxter_residual, m)?)?;
    m.add_function(wrap_pyfunction!(run_rsk, m)?)?;
    m.add_function(wrap_pyfunction!(verify_all, m)?)?;
    Ok(())
}
