//! Python bindings for the irredundance solvers: graph construction and
//! I/O, the exact ir/IR drivers, budget-indexed deciders, both kernels, the
//! brute-force oracle, the verification campaign, and the numerical
//! certification of the running-time bounds.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyDict, PyList};

use irredundance_core::analysis;
use irredundance_core::graph::{encode_graph, parse_graph, Graph, GraphFormat};
use irredundance_core::harness::{self, Algo, DriverOptions};
use irredundance_core::kernel::{self, KernelVerdict};
use irredundance_core::labeling::Weights;
use irredundance_core::oracle;
use irredundance_core::solver::mc::{decide_comaxir_mc_with, McOptions};
use irredundance_core::solver::simple;

fn value_err(msg: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(msg.to_string())
}

fn parse_format(format: &str) -> PyResult<GraphFormat> {
    format.parse().map_err(value_err)
}

fn parse_algo(algo: &str) -> PyResult<Algo> {
    match algo {
        "simple" => Ok(Algo::Simple),
        "mc" => Ok(Algo::Mc),
        other => Err(value_err(format!("unknown algo {other:?} (expected simple or mc)"))),
    }
}

/// Recursively converts a JSON report into plain Python dicts/lists.
fn json_to_py(py: Python<'_>, v: &serde_json::Value) -> PyObject {
    match v {
        serde_json::Value::Null => py.None(),
        serde_json::Value::Bool(b) => b.into_py(py),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                i.into_py(py)
            } else if let Some(u) = n.as_u64() {
                u.into_py(py)
            } else {
                n.as_f64().unwrap_or(f64::NAN).into_py(py)
            }
        }
        serde_json::Value::String(s) => s.into_py(py),
        serde_json::Value::Array(items) => {
            let list = PyList::empty_bound(py);
            for item in items {
                list.append(json_to_py(py, item)).expect("append to fresh list");
            }
            list.into_py(py)
        }
        serde_json::Value::Object(map) => {
            let dict = PyDict::new_bound(py);
            for (key, item) in map {
                dict.set_item(key, json_to_py(py, item)).expect("insert into fresh dict");
            }
            dict.into_py(py)
        }
    }
}

fn report_to_py<T: serde::Serialize>(py: Python<'_>, report: &T) -> PyResult<PyObject> {
    let value = serde_json::to_value(report).map_err(value_err)?;
    Ok(json_to_py(py, &value))
}

/// A simple undirected graph with 0-based vertex ids.
#[pyclass(name = "Graph")]
#[derive(Clone)]
struct PyGraph {
    inner: Graph,
}

impl PyGraph {
    fn check_vertex(&self, v: u32) -> PyResult<()> {
        if (v as usize) < self.inner.n_total() && self.inner.is_alive(v) {
            Ok(())
        } else {
            Err(value_err(format!("vertex {v} out of range")))
        }
    }
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n, edges = Vec::new()))]
    fn new(n: usize, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        Graph::from_edges(n, &edges).map(|inner| PyGraph { inner }).map_err(value_err)
    }

    /// Parse an edge-list ("p edge n m" + "e u v" lines, 1-based) or
    /// graph6 text.
    #[staticmethod]
    #[pyo3(signature = (text, format = "edge-list"))]
    fn parse(text: &str, format: &str) -> PyResult<Self> {
        parse_graph(text, parse_format(format)?)
            .map(|inner| PyGraph { inner })
            .map_err(value_err)
    }

    /// Seeded Erdős–Rényi G(n, p); identical arguments give identical
    /// graphs.
    #[staticmethod]
    fn random(n: usize, p: f64, seed: u64) -> PyResult<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(value_err("edge probability must lie in [0, 1]"));
        }
        Ok(PyGraph { inner: harness::gen_random_graph(n, p, seed) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n_alive()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.m()
    }

    fn degree(&self, v: u32) -> PyResult<usize> {
        self.check_vertex(v)?;
        Ok(self.inner.degree(v))
    }

    fn neighbors(&self, v: u32) -> PyResult<Vec<u32>> {
        self.check_vertex(v)?;
        Ok(self.inner.neighbors(v).collect())
    }

    fn edges(&self) -> Vec<(u32, u32)> {
        self.inner.edges()
    }

    #[pyo3(signature = (format = "graph6"))]
    fn encode(&self, format: &str) -> PyResult<String> {
        encode_graph(&self.inner, parse_format(format)?).map_err(value_err)
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.n_alive(), self.inner.m())
    }
}

/// ir(G): minimum size of a maximal irredundant set.
#[pyfunction]
fn compute_ir(g: &PyGraph) -> usize {
    harness::compute_ir(&g.inner)
}

/// IR(G): maximum size of an irredundant set.
#[pyfunction]
#[pyo3(signature = (g, algo = "mc"))]
fn compute_upper_ir(g: &PyGraph, algo: &str) -> PyResult<usize> {
    let opts = DriverOptions { algo: parse_algo(algo)?, ..DriverOptions::default() };
    Ok(harness::compute_upper_ir_with(&g.inner, &opts).0)
}

/// Is there an irredundant set of size ≥ n−k?
#[pyfunction]
#[pyo3(signature = (g, k, algo = "mc"))]
fn decide_comaxir(g: &PyGraph, k: i64, algo: &str) -> PyResult<bool> {
    if k < 0 {
        return Err(value_err("budget must be nonnegative"));
    }
    Ok(match parse_algo(algo)? {
        Algo::Simple => simple::decide_comaxir_simple(&g.inner, k).0,
        Algo::Mc => decide_comaxir_mc_with(&g.inner, k, &McOptions::default(), None).0,
    })
}

/// Is the minimum maximal irredundant set of size exactly n−k?
#[pyfunction]
fn decide_exact_cominmaxir(g: &PyGraph, k: i64) -> PyResult<bool> {
    if k < 0 {
        return Err(value_err("budget must be nonnegative"));
    }
    Ok(simple::decide_exact_cominmaxir(&g.inner, k).0)
}

/// Exact ir, γ (domination), α (independence) and IR by enumeration;
/// limited to small graphs.
#[pyfunction]
fn domination_chain(py: Python<'_>, g: &PyGraph) -> PyResult<PyObject> {
    let chain = oracle::domination_chain(&g.inner).map_err(value_err)?;
    let dict = PyDict::new_bound(py);
    dict.set_item("ir", chain.ir)?;
    dict.set_item("gamma", chain.gamma)?;
    dict.set_item("alpha", chain.alpha)?;
    dict.set_item("upper_ir", chain.upper_ir)?;
    Ok(dict.into_py(py))
}

/// Does `vertices` form an irredundant set (every member has itself or a
/// private external neighbor as a certificate)?
#[pyfunction]
fn is_irredundant(g: &PyGraph, vertices: Vec<u32>) -> PyResult<bool> {
    for &v in &vertices {
        g.check_vertex(v)?;
    }
    Ok(oracle::is_irredundant(&g.inner, &vertices))
}

fn kernel_to_py(py: Python<'_>, out: kernel::KernelOutcome) -> PyResult<PyObject> {
    let dict = PyDict::new_bound(py);
    dict.set_item(
        "verdict",
        match out.verdict {
            KernelVerdict::Yes => "yes",
            KernelVerdict::No => "no",
            KernelVerdict::Reduced => "reduced",
        },
    )?;
    dict.set_item("n_after", out.n_after())?;
    dict.set_item("k", out.k)?;
    dict.set_item("forced", out.forced.clone())?;
    let (compact, _) = out.graph.compacted();
    dict.set_item("graph", PyGraph { inner: compact }.into_py(py))?;
    Ok(dict.into_py(py))
}

/// Crown kernel for "IR ≥ n−k": shrinks to ≤ 3k vertices or answers
/// outright.
#[pyfunction]
fn kernelize_comaxir(py: Python<'_>, g: &PyGraph, k: i64) -> PyResult<PyObject> {
    if k < 0 {
        return Err(value_err("budget must be nonnegative"));
    }
    kernel_to_py(py, kernel::kernel_comaxir(&g.inner, k))
}

/// Counting kernel for "ir ≤ n−k": shrinks to ≤ 2k−1 vertices or answers
/// outright.
#[pyfunction]
fn kernelize_cominmaxir(py: Python<'_>, g: &PyGraph, k: i64) -> PyResult<PyObject> {
    if k < 0 {
        return Err(value_err("budget must be nonnegative"));
    }
    kernel_to_py(py, kernel::kernel_cominmaxir(&g.inner, k))
}

/// Growth base of a search tree with the given per-branch decreases.
#[pyfunction]
fn branching_number(decreases: Vec<f64>) -> PyResult<f64> {
    if decreases.is_empty() {
        return Err(value_err("a branch needs at least one decrease"));
    }
    Ok(analysis::branching_number(&decreases))
}

/// Certify the plain solver's case inequalities at base `alpha`.
#[pyfunction]
#[pyo3(signature = (alpha = 3.841))]
fn verify_alg1(py: Python<'_>, alpha: f64) -> PyResult<PyObject> {
    if alpha <= 1.0 {
        return Err(value_err("the base must be > 1"));
    }
    report_to_py(py, &analysis::verify_alg1(alpha))
}

/// Certify the weighted solver's branch vectors at the given weights
/// against `target`.
#[pyfunction]
#[pyo3(signature = (wl = 0.7455, wn = 0.2455, target = 3.069))]
fn verify_alg2(py: Python<'_>, wl: f64, wn: f64, target: f64) -> PyResult<PyObject> {
    if target <= 1.0 {
        return Err(value_err("the base must be > 1"));
    }
    let w = Weights::from_f64(wl, wn).map_err(value_err)?;
    report_to_py(py, &analysis::verify_alg2(&w, target))
}

/// Balance point between subset enumeration and a base-`alpha`
/// parameterized search.
#[pyfunction]
#[pyo3(signature = (alpha, claimed_base, tol = 1e-3))]
fn verify_winwin(py: Python<'_>, alpha: f64, claimed_base: f64, tol: f64) -> PyResult<PyObject> {
    if alpha <= 1.0 {
        return Err(value_err("the base must be > 1"));
    }
    report_to_py(py, &analysis::verify_winwin(alpha, claimed_base, tol))
}

/// The vertex-count variant of the weighted measure at its published
/// weights.
#[pyfunction]
fn verify_nmeasure(py: Python<'_>) -> PyResult<PyObject> {
    report_to_py(py, &analysis::verify_nmeasure())
}

/// Grid search over the feasible weight region; returns (wl, wn,
/// worst branching number).
#[pyfunction]
#[pyo3(signature = (step = 0.001))]
fn optimize_weights(step: f64) -> PyResult<(f64, f64, f64)> {
    if !(step > 0.0 && step <= 0.1 + 1e-9) {
        return Err(value_err("grid step must be in (0, 0.1]"));
    }
    let (w, objective) = analysis::optimize_weights(step);
    Ok((w.wl_f64(), w.wn_f64(), objective))
}

/// Replay solvers, kernels and exact drivers against the oracle on an
/// exhaustive small sweep plus seeded random instances.
#[pyfunction]
#[pyo3(signature = (max_n = 6, trials = 50, seed = 42))]
fn verify_campaign(py: Python<'_>, max_n: usize, trials: usize, seed: u64) -> PyResult<PyObject> {
    if max_n == 0 || max_n > 14 {
        return Err(value_err("max_n must be between 1 and 14"));
    }
    report_to_py(py, &harness::verify_campaign(max_n, trials, seed))
}

#[pymodule]
fn irredundance_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(compute_ir, m)?)?;
    m.add_function(wrap_pyfunction!(compute_upper_ir, m)?)?;
    m.add_function(wrap_pyfunction!(decide_comaxir, m)?)?;
    m.add_function(wrap_pyfunction!(decide_exact_cominmaxir, m)?)?;
    m.add_function(wrap_pyfunction!(domination_chain, m)?)?;
    m.add_function(wrap_pyfunction!(is_irredundant, m)?)?;
    m.add_function(wrap_pyfunction!(kernelize_comaxir, m)?)?;
    m.add_function(wrap_pyfunction!(kernelize_cominmaxir, m)?)?;
    m.add_function(wrap_pyfunction!(branching_number, m)?)?;
    m.add_function(wrap_pyfunction!(verify_alg1, m)?)?;
    m.add_function(wrap_pyfunction!(verify_alg2, m)?)?;
    m.add_function(wrap_pyfunction!(verify_winwin, m)?)?;
    m.add_function(wrap_pyfunction!(verify_nmeasure, m)?)?;
    m.add_function(wrap_pyfunction!(optimize_weights, m)?)?;
    m.add_function(wrap_pyfunction!(verify_campaign, m)?)?;
    Ok(())
}
