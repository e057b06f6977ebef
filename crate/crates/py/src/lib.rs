//! Python bindings: the `Graph` type plus the walk, extraction,
//! generation and measurement operations, exposed as the
//! `smallworld_rs` extension module.

use std::collections::BTreeMap;

use pyo3::exceptions::{PyIOError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use smallworld::metrics::DegreeHistogram;
use smallworld::{Error, MakeswParams, SmallWorldReport, SweepConfig};

fn py_err(error: Error) -> PyErr {
    match error {
        Error::Io(e) => PyIOError::new_err(e.to_string()),
        other => PyValueError::new_err(other.to_string()),
    }
}

/// Reflexive symmetric graph with implicit self-loops.
#[pyclass(name = "Graph", module = "smallworld_rs", from_py_object)]
#[derive(Clone)]
struct PyGraph {
    inner: smallworld::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    fn new(node_count: usize) -> PyResult<Self> {
        Ok(Self {
            inner: smallworld::Graph::new(node_count).map_err(py_err)?,
        })
    }

    /// Build a graph from an undirected edge list.
    #[staticmethod]
    fn from_edges(node_count: usize, edges: Vec<(usize, usize)>) -> PyResult<Self> {
        Ok(Self {
            inner: smallworld::Graph::from_edges(node_count, &edges).map_err(py_err)?,
        })
    }

    /// Read a graph from an edge-list file.
    #[staticmethod]
    fn read_edge_list(path: &str) -> PyResult<Self> {
        Ok(Self {
            inner: smallworld::io::read_edge_list_file(path).map_err(py_err)?,
        })
    }

    fn write_edge_list(&self, path: &str) -> PyResult<()> {
        smallworld::io::write_edge_list_file(&self.inner, path).map_err(py_err)
    }

    fn add_edge(&mut self, u: usize, v: usize) -> PyResult<()> {
        self.inner.add_edge(u, v).map_err(py_err)
    }

    fn node_count(&self) -> usize {
        self.inner.node_count()
    }

    fn arc_count(&self) -> usize {
        self.inner.arc_count()
    }

    fn undirected_edge_count(&self) -> usize {
        self.inner.undirected_edge_count()
    }

    /// Loop-inclusive degree.
    fn degree(&self, u: usize) -> PyResult<usize> {
        self.check_node(u)?;
        Ok(self.inner.degree(u))
    }

    fn nonloop_degree(&self, u: usize) -> PyResult<usize> {
        self.check_node(u)?;
        Ok(self.inner.nonloop_degree(u))
    }

    fn neighbors(&self, u: usize) -> PyResult<Vec<usize>> {
        self.check_node(u)?;
        Ok(self.inner.neighbors(u).to_vec())
    }

    fn has_edge(&self, u: usize, v: usize) -> PyResult<bool> {
        self.check_node(u)?;
        self.check_node(v)?;
        Ok(self.inner.has_edge(u, v))
    }

    /// Edge list as (u, v) pairs with u < v.
    fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges = Vec::with_capacity(self.inner.undirected_edge_count());
        for u in 0..self.inner.node_count() {
            for &v in self.inner.neighbors(u) {
                if v > u {
                    edges.push((u, v));
                }
            }
        }
        edges
    }

    /// BFS hop counts from `source`; None marks unreachable nodes.
    fn bfs_distances(&self, source: usize) -> PyResult<Vec<Option<usize>>> {
        self.check_node(source)?;
        Ok(self.inner.bfs_distances(source))
    }

    fn is_connected(&self) -> bool {
        self.inner.is_connected()
    }

    fn connected_component_ids(&self) -> Vec<usize> {
        self.inner.connected_components().ids().to_vec()
    }

    /// Largest-component subgraph plus the old-id -> new-id mapping.
    fn largest_component(&self) -> (Self, Vec<Option<usize>>) {
        let (graph, mapping) = self.inner.largest_component_subgraph();
        (Self { inner: graph }, mapping)
    }

    fn diameter(&self) -> PyResult<usize> {
        self.inner.diameter().map_err(py_err)
    }

    fn average_path_length(&self) -> PyResult<f64> {
        self.inner.average_path_length().map_err(py_err)
    }

    fn transitivity(&self) -> f64 {
        self.inner.transitivity()
    }

    fn average_local_clustering(&self) -> f64 {
        self.inner.average_local_clustering()
    }

    /// Non-loop degree histogram as a dict.
    fn degree_distribution(&self) -> BTreeMap<usize, usize> {
        smallworld::degree_distribution(&self.inner)
            .counts()
            .clone()
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(nodes={}, arcs={})",
            self.inner.node_count(),
            self.inner.arc_count()
        )
    }

    fn __len__(&self) -> usize {
        self.inner.node_count()
    }
}

impl PyGraph {
    fn check_node(&self, u: usize) -> PyResult<()> {
        if u >= self.inner.node_count() {
            return Err(py_err(Error::NodeOutOfRange {
                node: u,
                node_count: self.inner.node_count(),
            }));
        }
        Ok(())
    }
}

fn report_dict<'py>(py: Python<'py>, report: &SmallWorldReport) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("n", report.node_count)?;
    dict.set_item("m", report.arc_count)?;
    dict.set_item("lcc_fraction", report.lcc_fraction)?;
    dict.set_item("diameter", report.diameter)?;
    dict.set_item("avg_path_len", report.avg_path_length)?;
    dict.set_item("clustering", report.clustering)?;
    dict.set_item("slope", report.fit.map(|f| f.slope))?;
    dict.set_item("r2", report.fit.map(|f| f.r2))?;
    dict.set_item("ok_sparsity", report.ok_sparsity)?;
    dict.set_item("ok_diameter", report.ok_diameter)?;
    dict.set_item("ok_clustering", report.ok_clustering)?;
    dict.set_item("ok_heavytail", report.ok_heavytail)?;
    dict.set_item("verdict", report.verdict)?;
    Ok(dict)
}

fn series_dict<'py>(
    py: Python<'py>,
    series: &smallworld::ConfluenceSeries,
) -> PyResult<Bound<'py, PyDict>> {
    let dict = PyDict::new(py);
    dict.set_item("source", series.source)?;
    dict.set_item("target", series.target)?;
    dict.set_item("forward", series.forward.clone())?;
    dict.set_item("backward", series.backward.clone())?;
    dict.set_item("asymptote", series.asymptote)?;
    Ok(dict)
}

/// One walk step applied to a distribution.
#[pyfunction]
fn step(graph: &PyGraph, p: Vec<f64>) -> PyResult<Vec<f64>> {
    let p = smallworld::ProbabilityVector::from_values(p).map_err(py_err)?;
    Ok(smallworld::step(&graph.inner, &p)
        .map_err(py_err)?
        .into_values())
}

/// Distribution of the walk from `u` after `t` steps.
#[pyfunction]
fn walk_distribution(graph: &PyGraph, u: usize, t: usize) -> PyResult<Vec<f64>> {
    Ok(smallworld::walk_distribution(&graph.inner, u, t)
        .map_err(py_err)?
        .into_values())
}

/// Degree-proportional stationary distribution.
#[pyfunction]
fn stationary_distribution(graph: &PyGraph) -> Vec<f64> {
    smallworld::stationary_distribution(&graph.inner).into_values()
}

/// Mutual confluence of a pair at horizon `t`.
#[pyfunction]
fn confluence(graph: &PyGraph, u: usize, v: usize, t: usize) -> PyResult<f64> {
    smallworld::confluence(&graph.inner, u, v, t).map_err(py_err)
}

/// Directed probability series for a pair over t = 1..=t_max.
#[pyfunction]
fn confluence_series<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    u: usize,
    v: usize,
    t_max: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let series = smallworld::confluence_series(&graph.inner, u, v, t_max).map_err(py_err)?;
    series_dict(py, &series)
}

/// Two-target confluence experiment; see `confluence_series`.
#[pyfunction]
fn confluence_experiment<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    u: usize,
    v1: usize,
    v2: usize,
    t_max: usize,
) -> PyResult<Bound<'py, PyDict>> {
    let experiment =
        smallworld::confluence_experiment(&graph.inner, u, v1, v2, t_max).map_err(py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("v1", series_dict(py, &experiment.series_v1)?)?;
    dict.set_item("v2", series_dict(py, &experiment.series_v2)?)?;
    dict.set_item("degrees_match", experiment.degrees_match)?;
    Ok(dict)
}

/// Reflexive symmetric ER graph with an exact arc count.
#[pyfunction]
fn er_graph(nodes: usize, arcs: usize, seed: u64) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: smallworld::er_graph(nodes, arcs, seed).map_err(py_err)?,
    })
}

/// Strong-confluence graph extraction.
#[pyfunction]
fn scg(graph: &PyGraph, walk_length: usize, arcs: usize) -> PyResult<PyGraph> {
    Ok(PyGraph {
        inner: smallworld::scg(&graph.inner, walk_length, arcs).map_err(py_err)?,
    })
}

/// Full pipeline: ER graph, extraction, largest component. Returns the
/// output graph and a provenance dict.
#[pyfunction]
fn makesw<'py>(
    py: Python<'py>,
    nodes: usize,
    arcs_in: usize,
    walk_length: usize,
    arcs: usize,
    seed: u64,
) -> PyResult<(PyGraph, Bound<'py, PyDict>)> {
    let params = MakeswParams {
        nodes,
        arcs_in,
        walk_length,
        arcs_out: arcs,
        seed,
    };
    let result = smallworld::makesw(&params).map_err(py_err)?;
    let provenance = PyDict::new(py);
    provenance.set_item("seed", result.provenance.seed)?;
    provenance.set_item("pre_lcc_node_count", result.provenance.pre_lcc_node_count)?;
    provenance.set_item("pre_lcc_arc_count", result.provenance.pre_lcc_arc_count)?;
    provenance.set_item("lcc_fraction", result.provenance.lcc_fraction)?;
    provenance.set_item("selected_pairs", result.scg_stats.selected_pairs)?;
    provenance.set_item("zero_score_selected", result.scg_stats.zero_score_selected)?;
    Ok((
        PyGraph {
            inner: result.graph,
        },
        provenance,
    ))
}

/// Evaluate the four small-world criteria on a connected graph.
#[pyfunction]
#[pyo3(signature = (graph, lcc_fraction = 1.0))]
fn small_world_check<'py>(
    py: Python<'py>,
    graph: &PyGraph,
    lcc_fraction: f64,
) -> PyResult<Bound<'py, PyDict>> {
    if !(lcc_fraction > 0.0 && lcc_fraction <= 1.0) {
        return Err(PyValueError::new_err(format!(
            "lcc_fraction must be in (0, 1], got {lcc_fraction}"
        )));
    }
    let report = smallworld::small_world_check(&graph.inner, lcc_fraction).map_err(py_err)?;
    report_dict(py, &report)
}

/// Least-squares log-log fit of a degree histogram dict.
#[pyfunction]
fn power_law_fit<'py>(
    py: Python<'py>,
    counts: BTreeMap<usize, usize>,
) -> PyResult<Bound<'py, PyDict>> {
    let fit = smallworld::power_law_fit(&DegreeHistogram::from_counts(counts)).map_err(py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("slope", fit.slope)?;
    dict.set_item("lambda", fit.lambda)?;
    dict.set_item("r2", fit.r2)?;
    dict.set_item("points_used", fit.points_used)?;
    Ok(dict)
}

/// ER reference values for a given node and arc count.
#[pyfunction]
fn er_reference<'py>(py: Python<'py>, nodes: usize, arcs: usize) -> PyResult<Bound<'py, PyDict>> {
    let reference = smallworld::er_reference(nodes, arcs).map_err(py_err)?;
    let dict = PyDict::new(py);
    dict.set_item("ell_rand", reference.ell_rand)?;
    dict.set_item("c_rand", reference.c_rand)?;
    dict.set_item("d", reference.d)?;
    Ok(dict)
}

/// Binomial pmf of the non-loop degree in a G(n, p) graph.
#[pyfunction]
fn er_degree_pmf(nodes: usize, p: f64, k: usize) -> PyResult<f64> {
    smallworld::er_degree_pmf(nodes, p, k).map_err(py_err)
}

/// Sweep makesw over walk lengths and seeds; one report dict per
/// (t, seed) in ascending order.
#[pyfunction]
fn sweep<'py>(
    py: Python<'py>,
    nodes: usize,
    arcs_in: usize,
    arcs: usize,
    t_values: Vec<usize>,
    seeds: Vec<u64>,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let config = SweepConfig {
        nodes,
        arcs_in,
        arcs_out: arcs,
        t_values,
        seeds,
    };
    let records = smallworld::sweep(&config).map_err(py_err)?;
    records
        .iter()
        .map(|record| {
            let dict = report_dict(py, &record.report)?;
            dict.set_item("t", record.t)?;
            dict.set_item("seed", record.seed)?;
            Ok(dict)
        })
        .collect()
}

#[pymodule]
fn smallworld_rs(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(step, m)?)?;
    m.add_function(wrap_pyfunction!(walk_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(stationary_distribution, m)?)?;
    m.add_function(wrap_pyfunction!(confluence, m)?)?;
    m.add_function(wrap_pyfunction!(confluence_series, m)?)?;
    m.add_function(wrap_pyfunction!(confluence_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(er_graph, m)?)?;
    m.add_function(wrap_pyfunction!(scg, m)?)?;
    m.add_function(wrap_pyfunction!(makesw, m)?)?;
    m.add_function(wrap_pyfunction!(small_world_check, m)?)?;
    m.add_function(wrap_pyfunction!(power_law_fit, m)?)?;
    m.add_function(wrap_pyfunction!(er_reference, m)?)?;
    m.add_function(wrap_pyfunction!(er_degree_pmf, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
