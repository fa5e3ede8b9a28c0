//! Python bindings: graphs, spectra, certificates, constructions, searches
//! and the reproduction checks. Reports come back as plain dicts.

use hermspec_core::certify::{
    certify_signed_two_ev, certify_three_ev_tournament, certify_two_ev, certify_two_ev_float,
    Certificate, EigenValue, Method,
};
use hermspec_core::constructions::{
    huang_oriented_hypercube, huang_signed_hypercube, named_graph, named_underlying,
    oriented_to_signed, paley_skew_hadamard, signed_to_oriented, tournament_from_skew_hadamard,
    NAMED_GRAPHS,
};
use hermspec_core::cyclotomic::{build_float_h, Order, RootOfUnity};
use hermspec_core::graph::{
    are_isomorphic, decode_digraph6, encode_digraph6, parse_mixed_text, parse_signed_text,
    to_mixed_text, to_signed_text, MixedGraph, OrientedGraph, Sign, SignedGraph, SimpleGraph,
};
use hermspec_core::reproduce::{Reproduction, Scale};
use hermspec_core::search::{
    search_mixed_orientations, search_orientations, search_signings, Filter, SearchOptions,
};
use hermspec_core::spectra::{ComplexMatrix, Spectrum, DEFAULT_CLUSTER_TOL};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use serde::Serialize;
use std::fmt::Display;

fn value_error(e: impl Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_dict<'py, T: Serialize>(py: Python<'py>, value: &T) -> PyResult<Bound<'py, PyAny>> {
    let text = serde_json::to_string(value).map_err(value_error)?;
    py.import("json")?.call_method1("loads", (text,))
}

/// A graph with arcs and undirected edges.
#[pyclass(name = "MixedGraph", module = "hermspec", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyMixedGraph {
    inner: MixedGraph,
}

#[pymethods]
impl PyMixedGraph {
    #[new]
    #[pyo3(signature = (n, arcs = Vec::new(), edges = Vec::new()))]
    fn new(n: usize, arcs: Vec<(usize, usize)>, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        let inner = MixedGraph::new(n, arcs, edges).map_err(value_error)?;
        Ok(PyMixedGraph { inner })
    }

    #[staticmethod]
    fn named(name: &str) -> PyResult<Self> {
        let inner = named_graph(name).map_err(value_error)?;
        Ok(PyMixedGraph { inner })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let inner = parse_mixed_text(text).map_err(value_error)?;
        Ok(PyMixedGraph { inner })
    }

    #[staticmethod]
    fn from_digraph6(code: &str) -> PyResult<Self> {
        let inner = decode_digraph6(code).map_err(value_error)?;
        Ok(PyMixedGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn arcs(&self) -> Vec<(usize, usize)> {
        self.inner.arcs().to_vec()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn is_oriented(&self) -> bool {
        self.inner.is_oriented()
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn reversed(&self) -> Self {
        PyMixedGraph {
            inner: self.inner.reversed(),
        }
    }

    fn to_text(&self) -> String {
        to_mixed_text(&self.inner)
    }

    fn to_digraph6(&self) -> String {
        encode_digraph6(&self.inner)
    }

    /// `H` under the root of order `k`, as nested lists of complex numbers.
    #[pyo3(signature = (k = 6))]
    fn hermitian(&self, k: u32) -> PyResult<Vec<Vec<(f64, f64)>>> {
        let root = RootOfUnity::for_order(k).map_err(value_error)?;
        let h = build_float_h(&self.inner, &root);
        let n = h.n();
        Ok(h.data()
            .chunks(n.max(1))
            .take(n)
            .map(|row| row.iter().map(|z| (z.re, z.im)).collect())
            .collect())
    }

    fn __repr__(&self) -> String {
        format!(
            "MixedGraph(n={}, arcs={:?}, edges={:?})",
            self.inner.n(),
            self.inner.arcs(),
            self.inner.edges()
        )
    }
}

/// A graph whose edges carry signs `+1` or `-1`.
#[pyclass(name = "SignedGraph", module = "hermspec", eq, frozen, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PySignedGraph {
    inner: SignedGraph,
}

#[pymethods]
impl PySignedGraph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize, i8)>) -> PyResult<Self> {
        let edges = edges
            .into_iter()
            .map(|(u, v, s)| match s {
                1 => Ok((u, v, Sign::Plus)),
                -1 => Ok((u, v, Sign::Minus)),
                _ => Err(PyValueError::new_err(format!("sign must be 1 or -1, got {s}"))),
            })
            .collect::<PyResult<Vec<_>>>()?;
        let inner = SignedGraph::new(n, edges).map_err(value_error)?;
        Ok(PySignedGraph { inner })
    }

    #[staticmethod]
    fn from_text(text: &str) -> PyResult<Self> {
        let inner = parse_signed_text(text).map_err(value_error)?;
        Ok(PySignedGraph { inner })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize, i64)> {
        self.inner
            .edges()
            .iter()
            .map(|&(u, v, s)| (u, v, s.value()))
            .collect()
    }

    fn adjacency(&self) -> Vec<Vec<i64>> {
        let n = self.inner.n();
        self.inner
            .adjacency()
            .chunks(n.max(1))
            .take(n)
            .map(<[i64]>::to_vec)
            .collect()
    }

    fn to_text(&self) -> String {
        to_signed_text(&self.inner)
    }

    fn __repr__(&self) -> String {
        format!("SignedGraph(n={}, edges={:?})", self.inner.n(), self.edges())
    }
}

/// Verdict of the two-eigenvalue test. Truthy when the verdict is yes.
#[pyclass(name = "Certificate", module = "hermspec", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyCertificate {
    inner: Certificate,
}

fn exact_text(v: &EigenValue) -> String {
    v.to_string()
}

#[pymethods]
impl PyCertificate {
    #[getter]
    fn verdict(&self) -> bool {
        self.inner.verdict
    }

    #[getter]
    fn k(&self) -> u32 {
        self.inner.k
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n
    }

    #[getter]
    fn r(&self) -> Option<f64> {
        self.inner.r()
    }

    #[getter]
    fn s(&self) -> Option<f64> {
        self.inner.s()
    }

    /// `(r, s)` as text, e.g. `("sqrt(3)", "-sqrt(3)")`.
    #[getter]
    fn pair(&self) -> Option<(String, String)> {
        self.inner
            .pair
            .as_ref()
            .map(|(r, s)| (exact_text(r), exact_text(s)))
    }

    #[getter]
    fn multiplicities(&self) -> Option<(usize, usize)> {
        self.inner.multiplicities
    }

    #[getter]
    fn method(&self) -> &'static str {
        match self.inner.method {
            Method::ExactIdentity => "exact-identity",
            Method::FloatCluster => "float-cluster",
        }
    }

    #[getter]
    fn tol(&self) -> Option<f64> {
        self.inner.tol
    }

    #[getter]
    fn failure_reason(&self) -> Option<String> {
        self.inner.failure_reason.clone()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(value_error)
    }

    fn __bool__(&self) -> bool {
        self.inner.verdict
    }

    fn __repr__(&self) -> String {
        match (self.pair(), self.inner.multiplicities) {
            (Some((r, s)), Some((mr, ms))) if self.inner.verdict => {
                format!("Certificate(yes, r={r} x{mr}, s={s} x{ms}, k={})", self.inner.k)
            }
            _ => format!("Certificate(no, k={})", self.inner.k),
        }
    }
}

#[derive(FromPyObject)]
enum AnyGraph<'py> {
    Mixed(PyRef<'py, PyMixedGraph>),
    Signed(PyRef<'py, PySignedGraph>),
}

fn signed_matrix(g: &SignedGraph) -> ComplexMatrix {
    let adj: Vec<f64> = g.adjacency().iter().map(|&x| x as f64).collect();
    ComplexMatrix::from_real(g.n(), &adj)
}

fn matrix(graph: &AnyGraph, k: u32) -> PyResult<ComplexMatrix> {
    Ok(match graph {
        AnyGraph::Mixed(g) => {
            build_float_h(&g.inner, &RootOfUnity::for_order(k).map_err(value_error)?)
        }
        AnyGraph::Signed(s) => signed_matrix(&s.inner),
    })
}

/// Eigenvalues of `H` in descending order; `k` is ignored for signed graphs.
#[pyfunction]
#[pyo3(signature = (graph, k = 6))]
fn spectrum(graph: AnyGraph, k: u32) -> PyResult<Vec<f64>> {
    let h = matrix(&graph, k)?;
    Ok(Spectrum::of(&h, DEFAULT_CLUSTER_TOL)
        .map_err(value_error)?
        .eigenvalues)
}

/// `(value, multiplicity)` clusters of the spectrum.
#[pyfunction]
#[pyo3(signature = (graph, k = 6, tol = DEFAULT_CLUSTER_TOL))]
fn clusters(graph: AnyGraph, k: u32, tol: f64) -> PyResult<Vec<(f64, usize)>> {
    let h = matrix(&graph, k)?;
    Ok(Spectrum::of(&h, tol).map_err(value_error)?.clusters)
}

/// Two-eigenvalue certificate: exact for `k` in {3, 4, 6}, float otherwise.
#[pyfunction]
#[pyo3(signature = (graph, k = 6, tol = DEFAULT_CLUSTER_TOL))]
fn certify(graph: AnyGraph, k: u32, tol: f64) -> PyResult<PyCertificate> {
    let inner = match &graph {
        AnyGraph::Mixed(g) if Order::try_from(k).is_ok() => certify_two_ev(&g.inner, k),
        AnyGraph::Mixed(g) => {
            let root = RootOfUnity::for_order(k).map_err(value_error)?;
            certify_two_ev_float(&g.inner, &root, tol)
        }
        AnyGraph::Signed(s) => certify_signed_two_ev(&s.inner, tol),
    }
    .map_err(value_error)?;
    Ok(PyCertificate { inner })
}

/// Compares a regular tournament's spectrum with the three-eigenvalue
/// formula.
#[pyfunction]
fn certify_three_ev<'py>(py: Python<'py>, tournament: &PyMixedGraph) -> PyResult<Bound<'py, PyAny>> {
    let t = OrientedGraph::try_from(tournament.inner.clone()).map_err(value_error)?;
    let report = certify_three_ev_tournament(&t).map_err(value_error)?;
    to_dict(py, &report)
}

#[pyfunction(name = "are_isomorphic")]
fn py_are_isomorphic(a: &PyMixedGraph, b: &PyMixedGraph) -> bool {
    are_isomorphic(&a.inner, &b.inner)
}

/// Rows of the normalized Paley skew-Hadamard matrix of order `q + 1`, as
/// `+`/`-` strings.
#[pyfunction]
fn paley(q: u64) -> PyResult<Vec<String>> {
    Ok(paley_skew_hadamard(q).map_err(value_error)?.to_rows())
}

#[pyfunction]
fn paley_tournament(q: u64) -> PyResult<PyMixedGraph> {
    let a = paley_skew_hadamard(q).map_err(value_error)?;
    Ok(PyMixedGraph {
        inner: tournament_from_skew_hadamard(&a).into_mixed(),
    })
}

/// Huang's signed `n`-cube, or its oriented counterpart.
#[pyfunction]
#[pyo3(signature = (n, signed = false))]
fn hypercube(py: Python<'_>, n: u32, signed: bool) -> PyResult<Py<PyAny>> {
    if signed {
        let inner = huang_signed_hypercube(n).map_err(value_error)?;
        Ok(Py::new(py, PySignedGraph { inner })?.into_any())
    } else {
        let inner = huang_oriented_hypercube(n).map_err(value_error)?.into_mixed();
        Ok(Py::new(py, PyMixedGraph { inner })?.into_any())
    }
}

#[pyfunction(name = "signed_to_oriented")]
fn py_signed_to_oriented(s: &PySignedGraph) -> PyResult<PyMixedGraph> {
    let d = signed_to_oriented(&s.inner).map_err(value_error)?;
    Ok(PyMixedGraph {
        inner: d.into_mixed(),
    })
}

#[pyfunction(name = "oriented_to_signed")]
fn py_oriented_to_signed(g: &PyMixedGraph) -> PyResult<PySignedGraph> {
    let d = OrientedGraph::try_from(g.inner.clone()).map_err(value_error)?;
    Ok(PySignedGraph {
        inner: oriented_to_signed(&d).map_err(value_error)?,
    })
}

#[derive(FromPyObject)]
enum Underlying<'py> {
    Name(String),
    Mixed(PyRef<'py, PyMixedGraph>),
    Signed(PyRef<'py, PySignedGraph>),
}

/// Scans the orientations (`mode="oriented"`), mixed orientations
/// (`"mixed"`) or signings (`"signed"`) of a graph for two-eigenvalue
/// members. The underlying graph is a name such as `"K3,3"` or the
/// underlying graph of a given graph.
#[pyfunction]
#[pyo3(signature = (underlying, mode = "oriented", k = 6, threads = None, tol = DEFAULT_CLUSTER_TOL))]
fn search<'py>(
    py: Python<'py>,
    underlying: Underlying,
    mode: &str,
    k: u32,
    threads: Option<usize>,
    tol: f64,
) -> PyResult<Bound<'py, PyAny>> {
    let g: SimpleGraph = match &underlying {
        Underlying::Name(name) => named_underlying(name).map_err(value_error)?,
        Underlying::Mixed(m) => m.inner.underlying(),
        Underlying::Signed(s) => s.inner.underlying(),
    };
    let opts = SearchOptions {
        threads,
        tol,
        ..SearchOptions::default()
    };
    let report = py
        .detach(|| match mode {
            "oriented" => search_orientations(&g, k, Filter::TwoEv, &opts).map_err(|e| e.to_string()),
            "mixed" => search_mixed_orientations(&g, k, Filter::TwoEv, &opts).map_err(|e| e.to_string()),
            "signed" => search_signings(&g, Filter::TwoEv, &opts).map_err(|e| e.to_string()),
            other => Err(format!("unknown mode '{other}' (oriented, mixed or signed)")),
        })
        .map_err(PyValueError::new_err)?;
    to_dict(py, &report)
}

/// Runs the reproduction checks and returns the report.
#[pyfunction]
#[pyo3(signature = (scale = "quick", threads = None))]
fn verify_paper<'py>(py: Python<'py>, scale: &str, threads: Option<usize>) -> PyResult<Bound<'py, PyAny>> {
    let scale: Scale = scale.parse().map_err(PyValueError::new_err)?;
    let report = py.detach(|| Reproduction::new(scale).threads(threads).run());
    to_dict(py, &report)
}

#[pymodule]
pub fn hermspec(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyMixedGraph>()?;
    m.add_class::<PySignedGraph>()?;
    m.add_class::<PyCertificate>()?;
    m.add("NAMED_GRAPHS", NAMED_GRAPHS.to_vec())?;
    m.add_function(wrap_pyfunction!(spectrum, m)?)?;
    m.add_function(wrap_pyfunction!(clusters, m)?)?;
    m.add_function(wrap_pyfunction!(certify, m)?)?;
    m.add_function(wrap_pyfunction!(certify_three_ev, m)?)?;
    m.add_function(wrap_pyfunction!(py_are_isomorphic, m)?)?;
    m.add_function(wrap_pyfunction!(paley, m)?)?;
    m.add_function(wrap_pyfunction!(paley_tournament, m)?)?;
    m.add_function(wrap_pyfunction!(hypercube, m)?)?;
    m.add_function(wrap_pyfunction!(py_signed_to_oriented, m)?)?;
    m.add_function(wrap_pyfunction!(py_oriented_to_signed, m)?)?;
    m.add_function(wrap_pyfunction!(search, m)?)?;
    m.add_function(wrap_pyfunction!(verify_paper, m)?)?;
    Ok(())
}
