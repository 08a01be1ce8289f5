//! Python bindings for the recoupling engine.
//!
//! Exposes exact values (`Value`), diagrams (`Diagram`), the recoupling
//! constants, vertex expansion, diagram evaluation, and the self-check
//! suites. Build the extension with `cargo build -p spinnet-py` and load
//! it as the module `spinnet_py` (see `python/smoke_test.py`).

// The pyo3 0.22 attribute macros emit an error conversion that trips this
// lint on every `PyResult`-returning method.
#![allow(clippy::useless_conversion)]

use pyo3::exceptions::{PyRuntimeError, PyValueError, PyZeroDivisionError};
use pyo3::prelude::*;
use pyo3::types::PyModule;
use spinnet::diagram::SlicedDiagram;
use spinnet::invariant::{
    g_invariant_colored_engine, g_invariant_engine, link_pair_value, EmbeddedGraphDiagram, Engine,
};
use spinnet::qpoly::RatFunc;
use spinnet::recoupling::{self, Caches};
use spinnet::vertices::{n_vertex, TreeShape, VertexSpec};
use spinnet::verify::{run_suite, Suite};
use std::collections::BTreeMap;
use std::sync::OnceLock;

fn caches() -> &'static Caches {
    static CACHES: OnceLock<Caches> = OnceLock::new();
    CACHES.get_or_init(Caches::new)
}

fn to_py_err(e: spinnet::Error) -> PyErr {
    match e {
        spinnet::Error::Parse(_) | spinnet::Error::InvalidDiagram(_) | spinnet::Error::Inadmissible(_) => {
            PyValueError::new_err(e.to_string())
        }
        spinnet::Error::BudgetExceeded { .. } | spinnet::Error::Internal(_) => {
            PyRuntimeError::new_err(e.to_string())
        }
    }
}

fn parse_engine(engine: &str) -> PyResult<Engine> {
    match engine {
        "fast" => Ok(Engine::Fast),
        "oracle" => Ok(Engine::Oracle),
        other => Err(PyValueError::new_err(format!(
            "unknown engine {other:?}; expected \"fast\" or \"oracle\""
        ))),
    }
}

/// An exact rational function in the deformation variable A.
#[pyclass(name = "Value", frozen)]
#[derive(Clone)]
struct PyValue {
    inner: RatFunc,
}

impl From<RatFunc> for PyValue {
    fn from(inner: RatFunc) -> Self {
        PyValue { inner }
    }
}

#[pymethods]
impl PyValue {
    #[staticmethod]
    fn from_int(n: i64) -> PyValue {
        RatFunc::from_int(n).into()
    }

    fn __str__(&self) -> String {
        self.inner.to_text()
    }

    fn __repr__(&self) -> String {
        format!("Value({})", self.inner.to_text())
    }

    fn __eq__(&self, other: &PyValue) -> bool {
        self.inner == other.inner
    }

    fn __add__(&self, other: &PyValue) -> PyValue {
        (&self.inner + &other.inner).into()
    }

    fn __sub__(&self, other: &PyValue) -> PyValue {
        (&self.inner - &other.inner).into()
    }

    fn __mul__(&self, other: &PyValue) -> PyValue {
        (&self.inner * &other.inner).into()
    }

    fn __truediv__(&self, other: &PyValue) -> PyResult<PyValue> {
        self.inner
            .checked_div(&other.inner)
            .map(Into::into)
            .map_err(|_| PyZeroDivisionError::new_err("division by the zero function"))
    }

    /// The bar involution A ↦ A⁻¹.
    fn bar(&self) -> PyValue {
        self.inner.bar().into()
    }

    fn is_zero(&self) -> bool {
        self.inner.is_zero()
    }

    fn is_one(&self) -> bool {
        self.inner.is_one()
    }

    /// JSON form: {"num": {"A": {...}}, "den": {"A": {...}}}.
    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }
}

/// A closed sliced diagram: a link, or an embedded graph with vertices.
#[pyclass(name = "Diagram", frozen)]
#[derive(Clone)]
struct PyDiagram {
    inner: SlicedDiagram,
}

impl From<SlicedDiagram> for PyDiagram {
    fn from(inner: SlicedDiagram) -> Self {
        PyDiagram { inner }
    }
}

#[pymethods]
impl PyDiagram {
    /// Parse the line-oriented text format (`cup 0`, `cross+ 1`,
    /// `vertex 0 in=2 out=1`, ...).
    #[staticmethod]
    fn parse_text(text: &str) -> PyResult<PyDiagram> {
        SlicedDiagram::parse_text(text).map(Into::into).map_err(to_py_err)
    }

    /// Parse the `spinnet-diagram/1` JSON format.
    #[staticmethod]
    fn parse_json(text: &str) -> PyResult<PyDiagram> {
        SlicedDiagram::parse_json(text).map(Into::into).map_err(to_py_err)
    }

    /// Read a diagram file in either format.
    #[staticmethod]
    fn from_file(path: &str) -> PyResult<PyDiagram> {
        let body = std::fs::read_to_string(path)
            .map_err(|e| PyValueError::new_err(format!("cannot read {path}: {e}")))?;
        if body.trim_start().starts_with('{') {
            Self::parse_json(&body)
        } else {
            Self::parse_text(&body)
        }
    }

    fn to_text(&self) -> String {
        self.inner.to_text()
    }

    fn to_json(&self) -> String {
        self.inner.to_json().to_string()
    }

    fn __repr__(&self) -> String {
        format!(
            "Diagram(kind={}, slices={}, edges={}, vertices={})",
            self.kind(),
            self.inner.slices().len(),
            self.inner.num_edges(),
            self.inner.vertices().len()
        )
    }

    fn kind(&self) -> &'static str {
        match self.inner.kind() {
            spinnet::diagram::DiagramKind::Link => "link",
            spinnet::diagram::DiagramKind::Graph => "graph",
        }
    }

    fn num_edges(&self) -> usize {
        self.inner.num_edges()
    }

    fn num_vertices(&self) -> usize {
        self.inner.vertices().len()
    }

    /// Sum of crossing signs.
    fn writhe(&self) -> i64 {
        spinnet::invariant::writhe(&self.inner)
    }

    /// Per-edge colors embedded in the diagram, if any.
    fn colors(&self) -> Option<BTreeMap<usize, u32>> {
        self.inner.embedded_colors().cloned()
    }

    /// The same diagram with every crossing sign flipped.
    fn mirror(&self) -> PyDiagram {
        self.inner.mirror().into()
    }

    /// Forget the graph vertices, reconnecting their strands.
    fn strip_vertices(&self) -> PyResult<PyDiagram> {
        self.inner.strip_vertices().map(Into::into).map_err(to_py_err)
    }

    /// Place two diagrams side by side.
    fn disjoint_union(&self, other: &PyDiagram) -> PyResult<PyDiagram> {
        spinnet::invariant::disjoint_union(&self.inner, &other.inner)
            .map(Into::into)
            .map_err(to_py_err)
    }

    /// Fuse vertex `v1` of this diagram with vertex `v2` of `other`.
    fn wedge_at_vertex(&self, other: &PyDiagram, v1: usize, v2: usize) -> PyResult<PyDiagram> {
        spinnet::invariant::wedge_at_vertex(&self.inner, &other.inner, v1, v2)
            .map(Into::into)
            .map_err(to_py_err)
    }
}

/// Quantum dimension of the color-n loop.
#[pyfunction]
fn delta(n: u32) -> PyValue {
    recoupling::delta(n).into()
}

/// Theta network value of an edge triple (0 when inadmissible).
#[pyfunction]
fn theta(a: u32, b: u32, c: u32) -> PyValue {
    recoupling::theta(caches(), a, b, c).into()
}

/// Tetrahedral network with vertex triples {a,d,e}, {b,c,e}, {a,b,f}, {c,d,f}.
#[pyfunction]
fn tet(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> PyValue {
    recoupling::tet(caches(), a, b, e, c, d, f).into()
}

/// Recoupling coefficient between the two pair-of-pants trees.
#[pyfunction]
fn six_j(a: u32, b: u32, e: u32, c: u32, d: u32, f: u32) -> PyValue {
    recoupling::six_j(caches(), a, b, e, c, d, f).into()
}

/// Braiding phase of cables a, b through fusion channel c.
#[pyfunction]
fn braiding_phase(a: u32, b: u32, c: u32) -> PyValue {
    recoupling::lambda(a, b, c).into()
}

/// Framing twist of a color-n cable.
#[pyfunction]
fn twist(n: u32) -> PyValue {
    recoupling::twist(n).into()
}

/// Triangle + parity admissibility of an edge triple.
#[pyfunction]
fn admissible(a: u32, b: u32, c: u32) -> bool {
    recoupling::admissible(a, b, c)
}

/// Expand an n-valent vertex in a tree basis; returns
/// [(internal_labels, coefficient), ...]. `tree` lists the fusion
/// positions (default: the canonical caterpillar).
#[pyfunction]
#[pyo3(signature = (labels, tree=None))]
fn expand_vertex(labels: Vec<u32>, tree: Option<Vec<usize>>) -> PyResult<Vec<(Vec<u32>, PyValue)>> {
    let shape = match tree {
        None => TreeShape::caterpillar(labels.len()),
        Some(fusions) => TreeShape::new(labels.len(), fusions).map_err(to_py_err)?,
    };
    let expansion =
        n_vertex(caches(), &VertexSpec::new(labels), &shape).map_err(to_py_err)?;
    Ok(expansion
        .terms
        .into_iter()
        .map(|t| (t.labels, PyValue::from(t.coeff)))
        .collect())
}

/// Evaluate the balanced invariant of a diagram: the graph invariant for
/// vertex diagrams, the balanced pair value for links. Coloring comes from
/// `j` (uniform), `colors` (per edge), or the diagram's embedded colors.
#[pyfunction]
#[pyo3(signature = (diagram, j=None, colors=None, engine="fast"))]
fn evaluate(
    py: Python<'_>,
    diagram: &PyDiagram,
    j: Option<u32>,
    colors: Option<BTreeMap<usize, u32>>,
    engine: &str,
) -> PyResult<PyValue> {
    let engine = parse_engine(engine)?;
    let mut d = diagram.inner.clone();
    if let Some(map) = colors {
        d = SlicedDiagram::with_colors(d.kind(), d.slices().to_vec(), Some(map))
            .map_err(to_py_err)?;
    }
    py.allow_threads(move || -> spinnet::Result<RatFunc> {
        if d.vertices().is_empty() {
            match (j, d.embedded_colors().cloned()) {
                (Some(j), _) => link_pair_value(caches(), &d, |_| j, engine),
                (None, Some(map)) => {
                    for e in 0..d.num_edges() {
                        if !map.contains_key(&e) {
                            return Err(spinnet::Error::InvalidDiagram(format!(
                                "color map misses edge {e}"
                            )));
                        }
                    }
                    link_pair_value(caches(), &d, |e| map[&e], engine)
                }
                (None, None) => Err(spinnet::Error::Parse(
                    "no coloring: pass j= or colors=, or embed colors in the diagram".into(),
                )),
            }
        } else {
            let graph = EmbeddedGraphDiagram::new(d)?;
            match j {
                Some(j) => g_invariant_engine(caches(), &graph, j, engine),
                None if graph.coloring.is_some() => {
                    g_invariant_colored_engine(caches(), &graph, engine)
                }
                None => Err(spinnet::Error::Parse(
                    "no coloring: pass j= or colors=, or embed colors in the diagram".into(),
                )),
            }
        }
    })
    .map(Into::into)
    .map_err(to_py_err)
}

/// Kauffman bracket of a link diagram (⟨unknot⟩ = δ).
#[pyfunction]
fn bracket(py: Python<'_>, diagram: &PyDiagram) -> PyResult<PyValue> {
    let d = diagram.inner.clone();
    py.allow_threads(move || spinnet::invariant::bracket(&d))
        .map(|p| PyValue::from(RatFunc::from_poly(p)))
        .map_err(to_py_err)
}

/// Bracket-based Jones polynomial; `normalized=True` divides out the
/// writhe phase and the unknot value.
#[pyfunction]
#[pyo3(signature = (diagram, normalized=false))]
fn jones(py: Python<'_>, diagram: &PyDiagram, normalized: bool) -> PyResult<PyValue> {
    let d = diagram.inner.clone();
    py.allow_threads(move || spinnet::invariant::jones(&d, normalized))
        .map(|p| PyValue::from(RatFunc::from_poly(p)))
        .map_err(to_py_err)
}

/// One verification row: (suite, check, cases, passed, detail).
type CheckRow = (String, String, usize, bool, String);

/// Run a self-check suite; returns [(suite, check, cases, passed, detail)].
#[pyfunction]
#[pyo3(signature = (suite="all", max_label=2))]
fn verify(py: Python<'_>, suite: &str, max_label: u32) -> PyResult<Vec<CheckRow>> {
    let suite = Suite::parse(suite)
        .ok_or_else(|| PyValueError::new_err(format!("unknown suite {suite:?}")))?;
    let results = py.allow_threads(move || run_suite(suite, max_label));
    Ok(results
        .into_iter()
        .map(|r| (r.suite.to_string(), r.name.to_string(), r.cases, r.passed, r.detail))
        .collect())
}

#[pymodule]
fn spinnet_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyValue>()?;
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(delta, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(tet, m)?)?;
    m.add_function(wrap_pyfunction!(six_j, m)?)?;
    m.add_function(wrap_pyfunction!(braiding_phase, m)?)?;
    m.add_function(wrap_pyfunction!(twist, m)?)?;
    m.add_function(wrap_pyfunction!(admissible, m)?)?;
    m.add_function(wrap_pyfunction!(expand_vertex, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(bracket, m)?)?;
    m.add_function(wrap_pyfunction!(jones, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
