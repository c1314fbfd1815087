//! Python bindings: `import graphlets`.
//!
//! Vertices are addressed by their labels in the input everywhere.

use std::sync::Arc;

use graphlet_core::analytics::{
    gfd, gfd_distance, rank_from_micro, AnalyticsError, DistanceMetric, EdgePattern, GfdScope, GfdVector, SelectionOp,
    SelectionState, SelectionUpdate,
};
use graphlet_core::census::{census_with_micro, write_micro_csv, CensusError, MICRO_CSV_COLUMNS};
use graphlet_core::graph::{load_edge_list, load_edge_list_file, IdMode};
use graphlet_core::parallel::{available_workers, EdgeOrdering, DEFAULT_BATCH_SIZE};
use graphlet_core::{graphlet_census, Graph, GraphError, GraphletClass, GraphletFrequencies, ParallelConfig, ParseOptions};
use pyo3::exceptions::{PyOSError, PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

fn graph_err(e: GraphError) -> PyErr {
    match e {
        GraphError::Io(e) => PyOSError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn census_err(e: CensusError) -> PyErr {
    match e {
        CensusError::Config(m) => PyValueError::new_err(m),
        other => PyRuntimeError::new_err(other.to_string()),
    }
}

fn analytics_err(e: AnalyticsError) -> PyErr {
    match e {
        AnalyticsError::Census(c) => census_err(c),
        AnalyticsError::Graph(g) => graph_err(g),
        other => PyValueError::new_err(other.to_string()),
    }
}

fn parse<T: std::str::FromStr>(s: &str, what: &str) -> PyResult<T> {
    s.parse().map_err(|_| PyValueError::new_err(format!("unknown {what} {s:?}")))
}

fn config(threads: Option<usize>, batch: usize, ordering: &str) -> PyResult<ParallelConfig> {
    let c = ParallelConfig {
        workers: threads.unwrap_or_else(available_workers),
        batch_size: batch,
        ordering: parse::<EdgeOrdering>(ordering, "ordering")?,
    };
    c.validate().map_err(census_err)?;
    Ok(c)
}

fn parse_options(contiguous_base: Option<u64>) -> ParseOptions {
    match contiguous_base {
        Some(base) => ParseOptions { id_mode: IdMode::Contiguous { base }, ..ParseOptions::default() },
        None => ParseOptions::default(),
    }
}

// Class id -> count, in canonical class order.
fn counts_dict<'py>(py: Python<'py>, f: &GraphletFrequencies) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for c in GraphletClass::ALL {
        d.set_item(c.id(), f.get(c))?;
    }
    Ok(d)
}

fn delta_dict<'py>(py: Python<'py>, delta: &[i128; 17]) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    for c in GraphletClass::ALL {
        d.set_item(c.id(), delta[c.index()])?;
    }
    Ok(d)
}

/// Undirected simple graph. Self-loops and duplicate edges are dropped.
#[pyclass(name = "Graph", frozen, module = "graphlets")]
struct PyGraph {
    inner: Arc<Graph>,
}

#[pymethods]
impl PyGraph {
    /// Builds a graph from `(src, dst)` label pairs.
    #[new]
    #[pyo3(signature = (edges, contiguous_base = None))]
    fn new(edges: Vec<(u64, u64)>, contiguous_base: Option<u64>) -> PyResult<Self> {
        let text: String = edges.iter().map(|(a, b)| format!("{a} {b}\n")).collect();
        let g = load_edge_list(text.as_bytes(), &parse_options(contiguous_base)).map_err(graph_err)?;
        Ok(PyGraph { inner: Arc::new(g) })
    }

    /// Reads an edge list or MatrixMarket file.
    #[staticmethod]
    #[pyo3(signature = (path, contiguous_base = None))]
    fn load(path: std::path::PathBuf, contiguous_base: Option<u64>) -> PyResult<Self> {
        let g = load_edge_list_file(path, &parse_options(contiguous_base)).map_err(graph_err)?;
        Ok(PyGraph { inner: Arc::new(g) })
    }

    /// Parses edge-list text.
    #[staticmethod]
    #[pyo3(signature = (text, contiguous_base = None))]
    fn parse(text: &str, contiguous_base: Option<u64>) -> PyResult<Self> {
        let g = load_edge_list(text.as_bytes(), &parse_options(contiguous_base)).map_err(graph_err)?;
        Ok(PyGraph { inner: Arc::new(g) })
    }

    #[getter]
    fn n(&self) -> usize {
        self.inner.num_vertices()
    }

    #[getter]
    fn m(&self) -> usize {
        self.inner.num_edges()
    }

    /// Edges as label pairs in canonical order.
    fn edges(&self) -> Vec<(u64, u64)> {
        let g = &self.inner;
        g.edges().iter().map(|&(a, b)| (g.label(a), g.label(b))).collect()
    }

    /// Counts of all 17 classes keyed by class id.
    #[pyo3(signature = (threads = None, batch = DEFAULT_BATCH_SIZE, ordering = "input"))]
    fn census(&self, py: Python<'_>, threads: Option<usize>, batch: usize, ordering: &str) -> PyResult<Census> {
        let cfg = config(threads, batch, ordering)?;
        let g = self.inner.clone();
        let freqs = py.detach(move || graphlet_census(&g, &cfg)).map_err(census_err)?;
        Ok(Census { inner: freqs })
    }

    /// Per-edge role counts as a list of dicts keyed by micro CSV column.
    #[pyo3(signature = (threads = None))]
    fn micro<'py>(&self, py: Python<'py>, threads: Option<usize>) -> PyResult<Vec<Bound<'py, PyDict>>> {
        let cfg = config(threads, DEFAULT_BATCH_SIZE, "input")?;
        let g = self.inner.clone();
        let (_, micro) = py.detach(move || census_with_micro(&g, &cfg)).map_err(census_err)?;
        let mut rows = Vec::with_capacity(micro.len());
        for (e, m) in self.inner.edge_refs().zip(&micro) {
            let d = PyDict::new(py);
            d.set_item("src", self.inner.label(e.u))?;
            d.set_item("dst", self.inner.label(e.v))?;
            for (name, value) in MICRO_CSV_COLUMNS.iter().zip(m.csv_values()) {
                d.set_item(*name, value)?;
            }
            rows.push(d);
        }
        Ok(rows)
    }

    /// Writes the per-edge role counts as CSV.
    #[pyo3(signature = (path, threads = None))]
    fn write_micro_csv(&self, path: std::path::PathBuf, threads: Option<usize>) -> PyResult<()> {
        let cfg = config(threads, DEFAULT_BATCH_SIZE, "input")?;
        let (_, micro) = census_with_micro(&self.inner, &cfg).map_err(census_err)?;
        let file = std::fs::File::create(&path).map_err(|e| PyOSError::new_err(e.to_string()))?;
        write_micro_csv(&self.inner, &micro, std::io::BufWriter::new(file)).map_err(|e| PyOSError::new_err(e.to_string()))
    }

    /// Top edges by pattern weight as `(src, dst, weight)`.
    #[pyo3(signature = (pattern, top_k = 10, threads = None))]
    fn rank_edges(&self, py: Python<'_>, pattern: &str, top_k: usize, threads: Option<usize>) -> PyResult<Vec<(u64, u64, u64)>> {
        let pattern: EdgePattern = parse(pattern, "pattern")?;
        let cfg = config(threads, DEFAULT_BATCH_SIZE, "input")?;
        let g = self.inner.clone();
        let ranked = py
            .detach(move || census_with_micro(&g, &cfg).map(|(_, micro)| rank_from_micro(&g, &micro, pattern, top_k)))
            .map_err(census_err)?;
        Ok(ranked.into_iter().map(|r| (r.src, r.dst, r.weight)).collect())
    }

    fn __repr__(&self) -> String {
        format!("Graph(n={}, m={})", self.inner.num_vertices(), self.inner.num_edges())
    }
}

/// Census result.
#[pyclass(frozen, module = "graphlets")]
struct Census {
    inner: GraphletFrequencies,
}

#[pymethods]
impl Census {
    #[getter]
    fn n(&self) -> u64 {
        self.inner.n()
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.m()
    }

    #[getter]
    fn counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        counts_dict(py, &self.inner)
    }

    fn __getitem__(&self, id: &str) -> PyResult<u128> {
        let class: GraphletClass = parse(id, "class")?;
        Ok(self.inner.get(class))
    }

    /// Frequency distribution over the classes of size `k`.
    #[pyo3(signature = (k = 4, scope = "connected"))]
    fn gfd(&self, k: usize, scope: &str) -> PyResult<Gfd> {
        let scope: GfdScope = parse(scope, "scope")?;
        Ok(Gfd { inner: gfd(&self.inner, k, scope).map_err(analytics_err)? })
    }

    fn to_json(&self) -> String {
        self.inner.to_json()
    }

    fn __eq__(&self, other: &Census) -> bool {
        self.inner == other.inner
    }

    fn __repr__(&self) -> String {
        format!("Census(n={}, m={})", self.inner.n(), self.inner.m())
    }
}

/// Graphlet frequency distribution.
#[pyclass(frozen, module = "graphlets")]
struct Gfd {
    inner: GfdVector,
}

#[pymethods]
impl Gfd {
    #[getter]
    fn k(&self) -> usize {
        self.inner.k
    }

    #[getter]
    fn classes(&self) -> Vec<&'static str> {
        self.inner.classes.iter().map(|c| c.id()).collect()
    }

    #[getter]
    fn values(&self) -> Vec<f64> {
        self.inner.values.clone()
    }

    #[getter]
    fn all_zero(&self) -> bool {
        self.inner.all_zero
    }

    #[pyo3(signature = (other, metric = "euclidean"))]
    fn distance(&self, other: &Gfd, metric: &str) -> PyResult<f64> {
        let metric: DistanceMetric = parse(metric, "metric")?;
        gfd_distance(&self.inner, &other.inner, metric).map_err(analytics_err)
    }
}

/// Interactive induced selection with locally updated counts.
#[pyclass(module = "graphlets")]
struct Selection {
    inner: SelectionState<Arc<Graph>>,
}

impl Selection {
    fn vertex(&self, label: u64) -> PyResult<u32> {
        self.inner.base().vertex_of(label).ok_or_else(|| PyValueError::new_err(format!("unknown vertex {label}")))
    }

    fn apply<'py>(&mut self, py: Python<'py>, op: SelectionOp) -> PyResult<Bound<'py, PyDict>> {
        let update = self.inner.apply(op).map_err(analytics_err)?;
        update_dict(py, &update)
    }
}

fn update_dict<'py>(py: Python<'py>, u: &SelectionUpdate) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("counts", counts_dict(py, &u.counts)?)?;
    d.set_item("delta", delta_dict(py, &u.delta)?)?;
    d.set_item("recomputed_edges", u.recomputed_edges)?;
    Ok(d)
}

#[pymethods]
impl Selection {
    #[new]
    fn new(graph: &PyGraph) -> Self {
        Selection { inner: SelectionState::new(graph.inner.clone()) }
    }

    fn add_vertex<'py>(&mut self, py: Python<'py>, v: u64) -> PyResult<Bound<'py, PyDict>> {
        let v = self.vertex(v)?;
        self.apply(py, SelectionOp::AddVertex(v))
    }

    fn remove_vertex<'py>(&mut self, py: Python<'py>, v: u64) -> PyResult<Bound<'py, PyDict>> {
        let v = self.vertex(v)?;
        self.apply(py, SelectionOp::RemoveVertex(v))
    }

    fn add_edge<'py>(&mut self, py: Python<'py>, src: u64, dst: u64) -> PyResult<Bound<'py, PyDict>> {
        let (a, b) = (self.vertex(src)?, self.vertex(dst)?);
        self.apply(py, SelectionOp::AddEdge(a, b))
    }

    fn remove_edge<'py>(&mut self, py: Python<'py>, src: u64, dst: u64) -> PyResult<Bound<'py, PyDict>> {
        let (a, b) = (self.vertex(src)?, self.vertex(dst)?);
        self.apply(py, SelectionOp::RemoveEdge(a, b))
    }

    #[getter]
    fn counts<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        counts_dict(py, self.inner.counts())
    }

    #[getter]
    fn n(&self) -> u64 {
        self.inner.num_active_vertices()
    }

    #[getter]
    fn m(&self) -> u64 {
        self.inner.num_active_edges()
    }

    /// Active vertex labels in ascending id order.
    fn vertices(&self) -> Vec<u64> {
        self.inner.active_vertices().into_iter().map(|v| self.inner.base().label(v)).collect()
    }

    /// Recounts from scratch; raises if the cached counts differ.
    fn audit(&self) -> PyResult<Census> {
        Ok(Census { inner: self.inner.audit().map_err(analytics_err)? })
    }
}

/// All class ids in canonical order.
#[pyfunction]
fn class_ids() -> Vec<&'static str> {
    GraphletClass::ALL.iter().map(|c| c.id()).collect()
}

#[pymodule]
fn graphlets(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_class::<Census>()?;
    m.add_class::<Gfd>()?;
    m.add_class::<Selection>()?;
    m.add_function(wrap_pyfunction!(class_ids, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn options_map_to_core_config() {
        let c = config(Some(2), 16, "degree").unwrap();
        assert_eq!((c.workers, c.batch_size, c.ordering), (2, 16, EdgeOrdering::DegreeDesc));
        assert!(matches!(parse_options(Some(1)).id_mode, IdMode::Contiguous { base: 1 }));
        assert!(matches!(parse_options(None).id_mode, IdMode::Remap));
    }
}
