//! Python bindings. Reports cross the boundary as plain dicts and lists
//! (via their JSON form), graphs as the `Graph` class.

use closedrees::catalog::{run_catalog, CatalogCheck};
use closedrees::graph::{self, Labeling};
use closedrees::hilbert::{regularity_from_presentation, CmAssumption};
use closedrees::rees::{binomial_edge_ideal, edge_t_names, fiber_presentation, rees_presentation};
use closedrees::report;
use closedrees::{Error, FieldChoice, RunConfig};
use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;
use serde::Serialize;

create_exception!(pyclosedrees, ClosedReesError, PyException);
create_exception!(pyclosedrees, NotClosedError, ClosedReesError);
create_exception!(pyclosedrees, ResourceError, ClosedReesError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::NotClosed(_) => NotClosedError::new_err(e.to_string()),
        e if e.is_resource() => ResourceError::new_err(e.to_string()),
        Error::Parse(_) | Error::InvalidGraph(_) | Error::InvalidLabeling(_) | Error::IsolatedVertex(_) | Error::Config(_) => {
            PyValueError::new_err(e.to_string())
        }
        e => ClosedReesError::new_err(e.to_string()),
    }
}

fn to_object<T: Serialize>(py: Python<'_>, value: &T) -> PyResult<Py<PyAny>> {
    let text = serde_json::to_string(value).map_err(|e| ClosedReesError::new_err(e.to_string()))?;
    Ok(py.import("json")?.call_method1("loads", (text,))?.unbind())
}

fn config(degree_bound: u32, smax: u32, field: &str, gb_step_budget: Option<u64>) -> PyResult<RunConfig> {
    let mut cfg = RunConfig {
        degree_bound,
        smax,
        field: field.parse::<FieldChoice>().map_err(to_py)?,
        ..RunConfig::default()
    };
    if let Some(b) = gb_step_budget {
        cfg.gb_step_budget = b;
    }
    cfg.validate().map_err(to_py)?;
    Ok(cfg)
}

/// Simple graph on vertices `1..=n`.
#[pyclass(module = "pyclosedrees", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
pub struct Graph {
    inner: graph::Graph,
}

#[pymethods]
impl Graph {
    #[new]
    fn new(n: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Graph { inner: graph::Graph::new(n, edges).map_err(to_py)? })
    }

    /// Parses the `n m` header plus `m` edge lines format.
    #[staticmethod]
    fn from_edge_list(text: &str) -> PyResult<Self> {
        let inner = graph::parse_graph(text).map_err(|e| to_py(e.into()))?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        let inner = serde_json::from_str(text).map_err(|e| PyValueError::new_err(e.to_string()))?;
        Ok(Graph { inner })
    }

    #[staticmethod]
    fn complete(n: usize) -> Self {
        Graph { inner: graph::Graph::complete(n) }
    }

    #[staticmethod]
    fn path(n: usize) -> Self {
        Graph { inner: graph::Graph::path(n) }
    }

    #[staticmethod]
    fn cycle(n: usize) -> Self {
        Graph { inner: graph::Graph::cycle(n) }
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.n()
    }

    #[getter]
    fn edges(&self) -> Vec<(usize, usize)> {
        self.inner.edges().to_vec()
    }

    fn to_edge_list(&self) -> String {
        self.inner.to_edge_list()
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.inner).map_err(|e| ClosedReesError::new_err(e.to_string()))
    }

    /// Closed for the current labeling.
    fn is_closed(&self) -> bool {
        graph::is_closed(&self.inner)
    }

    /// `labeling[i-1]` is the new label of vertex `i`, or `None`.
    fn find_closed_labeling(&self) -> PyResult<Option<Vec<usize>>> {
        let l = graph::find_closed_labeling(&self.inner).map_err(to_py)?;
        Ok(l.map(|l| l.as_slice().to_vec()))
    }

    fn is_closed_labeling(&self, labeling: Vec<usize>) -> PyResult<bool> {
        let l = Labeling::new(labeling).map_err(to_py)?;
        graph::is_closed_labeling(&self.inner, &l).map_err(to_py)
    }

    fn relabel(&self, labeling: Vec<usize>) -> PyResult<Self> {
        let l = Labeling::new(labeling).map_err(to_py)?;
        Ok(Graph { inner: self.inner.relabel(&l).map_err(to_py)? })
    }

    fn clique_number(&self) -> usize {
        graph::clique_number(&self.inner)
    }

    fn connected_components(&self) -> Vec<Vec<usize>> {
        graph::connected_components(&self.inner)
    }

    fn longest_induced_path(&self) -> PyResult<usize> {
        graph::longest_induced_path(&self.inner, graph::DEFAULT_BRUTE_FORCE_CAP).map_err(to_py)
    }

    fn indecomposable_count(&self) -> PyResult<usize> {
        graph::indecomposable_count(&self.inner, graph::DEFAULT_BRUTE_FORCE_CAP).map_err(to_py)
    }

    /// Binomial edge ideal generators as strings.
    fn binomial_edge_ideal(&self) -> Vec<String> {
        binomial_edge_ideal(&self.inner).generator_strings()
    }

    fn __len__(&self) -> usize {
        self.inner.n()
    }

    fn __repr__(&self) -> String {
        let e: Vec<String> = self.inner.edges().iter().map(|(a, b)| format!("({a}, {b})")).collect();
        format!("Graph({}, [{}])", self.inner.n(), e.join(", "))
    }
}

/// Closed-form report: `{"status": "closed", "report": ...}` or a
/// bounds-only `{"status": "not_closed", ...}`.
#[pyfunction]
#[pyo3(signature = (g, *, degree_bound = 4, smax = 3, field = "rationals", gb_step_budget = None))]
fn analyze(py: Python<'_>, g: &Graph, degree_bound: u32, smax: u32, field: &str, gb_step_budget: Option<u64>) -> PyResult<Py<PyAny>> {
    let cfg = config(degree_bound, smax, field, gb_step_budget)?;
    let a = py.detach(|| report::analyze(&g.inner, &cfg)).map_err(to_py)?;
    to_object(py, &a)
}

/// Closed forms against the Gröbner-basis oracle. Raises `NotClosedError`
/// or `ResourceError` where the CLI would exit 2 or 3.
#[pyfunction]
#[pyo3(signature = (g, *, degree_bound = 4, smax = 3, field = "rationals", gb_step_budget = None))]
fn crosscheck(py: Python<'_>, g: &Graph, degree_bound: u32, smax: u32, field: &str, gb_step_budget: Option<u64>) -> PyResult<Py<PyAny>> {
    let cfg = config(degree_bound, smax, field, gb_step_budget)?;
    let x = py.detach(|| report::crosscheck(&g.inner, &cfg)).map_err(to_py)?;
    to_object(py, &x)
}

fn presentation(py: Python<'_>, g: &Graph, fiber: bool) -> PyResult<Py<PyAny>> {
    let gb = RunConfig::default().gb();
    let p = py
        .detach(|| {
            let ideal = binomial_edge_ideal(&g.inner);
            let names = edge_t_names(&g.inner);
            if fiber {
                fiber_presentation(&ideal, &names, &gb)
            } else {
                rees_presentation(&ideal, &names, &gb)
            }
        })
        .map_err(to_py)?;
    to_object(py, &p)
}

/// Defining ideal of the Rees algebra in the current labeling.
#[pyfunction]
fn rees_presentation_of(py: Python<'_>, g: &Graph) -> PyResult<Py<PyAny>> {
    presentation(py, g, false)
}

/// Defining ideal of the special fiber ring in the current labeling.
#[pyfunction]
fn fiber_presentation_of(py: Python<'_>, g: &Graph) -> PyResult<Py<PyAny>> {
    presentation(py, g, true)
}

/// `(dim, h-polynomial coefficients)` of the Rees algebra or fiber ring.
#[pyfunction]
#[pyo3(signature = (g, fiber = false))]
fn hilbert_data(py: Python<'_>, g: &Graph, fiber: bool) -> PyResult<(usize, Vec<i64>)> {
    let gb = RunConfig::default().gb();
    py.detach(|| {
        let ideal = binomial_edge_ideal(&g.inner);
        let names = edge_t_names(&g.inner);
        let p = if fiber { fiber_presentation(&ideal, &names, &gb)? } else { rees_presentation(&ideal, &names, &gb)? };
        let v = regularity_from_presentation(&p, CmAssumption::None)?;
        Ok((v.hilbert.dim, v.hilbert.hpoly.clone()))
    })
    .map_err(to_py)
}

/// `(entries, summary)` for every identity-closed graph on `[n]`.
#[pyfunction]
#[pyo3(signature = (n, check = "all"))]
fn catalog(py: Python<'_>, n: usize, check: &str) -> PyResult<(Py<PyAny>, Py<PyAny>)> {
    let check: CatalogCheck = check.parse().map_err(to_py)?;
    let cfg = RunConfig::default();
    let (entries, summary) = py.detach(|| run_catalog(n, check, &cfg)).map_err(to_py)?;
    Ok((to_object(py, &entries)?, to_object(py, &summary)?))
}

#[pymodule]
pub fn pyclosedrees(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Graph>()?;
    m.add_function(wrap_pyfunction!(analyze, m)?)?;
    m.add_function(wrap_pyfunction!(crosscheck, m)?)?;
    m.add_function(wrap_pyfunction!(rees_presentation_of, m)?)?;
    m.add_function(wrap_pyfunction!(fiber_presentation_of, m)?)?;
    m.add_function(wrap_pyfunction!(hilbert_data, m)?)?;
    m.add_function(wrap_pyfunction!(catalog, m)?)?;
    m.add("ClosedReesError", m.py().get_type::<ClosedReesError>())?;
    m.add("NotClosedError", m.py().get_type::<NotClosedError>())?;
    m.add("ResourceError", m.py().get_type::<ResourceError>())?;
    Ok(())
}
