//! Python bindings: the `qforest` extension module.
//!
//! `Digraph` and `Graph` wrap the core types; quotient and verification
//! results come back as plain Python dicts mirroring the CLI's JSON output.

use std::collections::BTreeMap;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::{PyBool, PyDict, PyList};
use serde_json::Value;

use qforest::forests::{self, PrincipalMode};
use qforest::io::{self, AnyGraph};
use qforest::minima::{self, DEFAULT_TOLERANCE};
use qforest::oracle::EnumerationBudget;
use qforest::{split, verify, InForest, Partition, WeightedDigraph, WeightedGraph};

fn err(e: qforest::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_py(py: Python<'_>, v: &Value) -> PyResult<Py<PyAny>> {
    Ok(match v {
        Value::Null => py.None(),
        Value::Bool(b) => PyBool::new(py, *b).to_owned().into_any().unbind(),
        Value::Number(n) => match n.as_i64() {
            Some(i) => i.into_pyobject(py)?.into_any().unbind(),
            None => n.as_f64().unwrap_or(f64::NAN).into_pyobject(py)?.into_any().unbind(),
        },
        Value::String(s) => s.into_pyobject(py)?.into_any().unbind(),
        Value::Array(items) => {
            let list = PyList::empty(py);
            for item in items {
                list.append(to_py(py, item)?)?;
            }
            list.into_any().unbind()
        }
        Value::Object(map) => {
            let dict = PyDict::new(py);
            for (key, value) in map {
                dict.set_item(key, to_py(py, value)?)?;
            }
            dict.into_any().unbind()
        }
    })
}

fn resolve_subset(g: &WeightedDigraph, labels: &[String]) -> PyResult<Vec<usize>> {
    labels.iter().map(|l| g.resolve(l).map_err(err)).collect()
}

fn resolve_partition(g: &WeightedDigraph, blocks: &[Vec<String>]) -> PyResult<Partition> {
    let resolved = blocks
        .iter()
        .map(|b| b.iter().map(|l| g.resolve(l)).collect::<qforest::Result<Vec<_>>>())
        .collect::<qforest::Result<Vec<_>>>()
        .map_err(err)?;
    Partition::new(g.vertex_count(), resolved).map_err(err)
}

fn resolve_forest(
    g: &WeightedDigraph,
    succ: &BTreeMap<String, Option<String>>,
) -> PyResult<InForest> {
    let mut map = vec![None; g.vertex_count()];
    for (from, to) in succ {
        let v = g.resolve(from).map_err(err)?;
        map[v] = match to {
            None => None,
            Some(t) => Some(g.resolve(t).map_err(err)?),
        };
    }
    InForest::from_succ(map).map_err(err)
}

fn witness_labels(g: &WeightedDigraph, witness: &[(usize, usize)]) -> Vec<(String, String)> {
    witness
        .iter()
        .map(|&(t, h)| (g.label(t).to_string(), g.label(h).to_string()))
        .collect()
}

fn minimum_dict(
    py: Python<'_>,
    g: &WeightedDigraph,
    value: Option<f64>,
    witness: Option<Vec<(String, String)>>,
    roots: Option<Vec<String>>,
) -> PyResult<Py<PyAny>> {
    let dict = PyDict::new(py);
    dict.set_item("value", value)?;
    dict.set_item("witness", witness)?;
    if let Some(roots) = roots {
        dict.set_item("roots", roots)?;
    }
    let _ = g;
    Ok(dict.into_any().unbind())
}

/// A weighted digraph over string-labeled vertices.
#[pyclass(frozen, module = "qforest")]
struct Digraph {
    inner: WeightedDigraph,
}

#[pymethods]
impl Digraph {
    #[new]
    fn new(vertices: Vec<String>, arcs: Vec<(String, String, f64)>) -> PyResult<Self> {
        let mut index_arcs = Vec::with_capacity(arcs.len());
        {
            let lookup: BTreeMap<&str, usize> =
                vertices.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            for (from, to, w) in &arcs {
                let t = *lookup
                    .get(from.as_str())
                    .ok_or_else(|| err(qforest::Error::UnknownLabel(from.clone())))?;
                let h = *lookup
                    .get(to.as_str())
                    .ok_or_else(|| err(qforest::Error::UnknownLabel(to.clone())))?;
                index_arcs.push((t, h, *w));
            }
        }
        Ok(Digraph { inner: WeightedDigraph::new(vertices, index_arcs).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match io::parse_graph(text).map_err(err)? {
            AnyGraph::Directed(g) => Ok(Digraph { inner: g }),
            AnyGraph::Undirected(_) => {
                Err(PyValueError::new_err("document is undirected; use Graph.from_json"))
            }
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&io::digraph_to_json(&self.inner, DEFAULT_TOLERANCE))
            .expect("serializable")
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn arcs(&self) -> Vec<(String, String, f64)> {
        self.inner
            .arcs()
            .iter()
            .map(|a| {
                (
                    self.inner.label(a.tail).to_string(),
                    self.inner.label(a.head).to_string(),
                    a.weight,
                )
            })
            .collect()
    }

    /// Sum of arc weights leaving the subset.
    fn weight_out(&self, subset: Vec<String>) -> PyResult<f64> {
        let subset = resolve_subset(&self.inner, &subset)?;
        self.inner.weight_out(&subset).map_err(err)
    }

    /// Minimum weight of an entering tree spanning `subset` rooted at `root`;
    /// None when no such tree exists.
    fn rooted_minimum(&self, subset: Vec<String>, root: &str) -> PyResult<Option<f64>> {
        let subset = resolve_subset(&self.inner, &subset)?;
        let root = self.inner.resolve(root).map_err(err)?;
        Ok(minima::rooted_value(&self.inner, &subset, root).map_err(err)?.value())
    }

    fn free_minimum(&self, subset: Vec<String>) -> PyResult<Option<f64>> {
        let subset = resolve_subset(&self.inner, &subset)?;
        Ok(minima::free_value(&self.inner, &subset).map_err(err)?.value())
    }

    fn escape_minimum(&self, subset: Vec<String>) -> PyResult<Option<f64>> {
        let subset = resolve_subset(&self.inner, &subset)?;
        Ok(minima::escape_value(&self.inner, &subset).map_err(err)?.value())
    }

    fn cross_minimum(&self, subset: Vec<String>, target: Vec<String>) -> PyResult<Option<f64>> {
        let subset = resolve_subset(&self.inner, &subset)?;
        let target = resolve_subset(&self.inner, &target)?;
        Ok(minima::cross_value(&self.inner, &subset, &target).map_err(err)?.value())
    }

    /// Free minimum with its canonical witness tree and minimizing roots.
    #[pyo3(signature = (subset, tolerance = DEFAULT_TOLERANCE))]
    fn min_in_tree(
        &self,
        py: Python<'_>,
        subset: Vec<String>,
        tolerance: f64,
    ) -> PyResult<Py<PyAny>> {
        let subset = resolve_subset(&self.inner, &subset)?;
        let free = minima::min_in_tree(&self.inner, &subset, tolerance).map_err(err)?;
        minimum_dict(
            py,
            &self.inner,
            free.minimum.value.value(),
            free.minimum.witness.map(|w| witness_labels(&self.inner, &w)),
            Some(free.roots.iter().map(|&q| self.inner.label(q).to_string()).collect()),
        )
    }

    /// Minimum subset tree extended by one arc into `target`, with witness.
    #[pyo3(signature = (subset, target, tolerance = DEFAULT_TOLERANCE))]
    fn min_cross_tree(
        &self,
        py: Python<'_>,
        subset: Vec<String>,
        target: Vec<String>,
        tolerance: f64,
    ) -> PyResult<Py<PyAny>> {
        let subset = resolve_subset(&self.inner, &subset)?;
        let target = resolve_subset(&self.inner, &target)?;
        let m = minima::min_cross_tree(&self.inner, &subset, &target, tolerance).map_err(err)?;
        minimum_dict(
            py,
            &self.inner,
            m.value.value(),
            m.witness.map(|w| witness_labels(&self.inner, &w)),
            None,
        )
    }

    /// Quotient by the given blocks, as a dict mirroring the CLI JSON.
    #[pyo3(signature = (blocks, tolerance = DEFAULT_TOLERANCE, provenance = false))]
    fn split(
        &self,
        py: Python<'_>,
        blocks: Vec<Vec<String>>,
        tolerance: f64,
        provenance: bool,
    ) -> PyResult<Py<PyAny>> {
        let partition = resolve_partition(&self.inner, &blocks)?;
        let quotient = split::split_digraph(&self.inner, &partition, tolerance).map_err(err)?;
        let doc =
            io::split_digraph_to_json(&quotient, self.inner.labels(), tolerance, provenance);
        to_py(py, &doc)
    }

    fn divisible(&self, py: Python<'_>, blocks: Vec<Vec<String>>) -> PyResult<Py<PyAny>> {
        let partition = resolve_partition(&self.inner, &blocks)?;
        let report = split::is_tree_divisible(&self.inner, &partition);
        let dict = PyDict::new(py);
        dict.set_item("divisible", report.divisible)?;
        let failures = PyList::empty(py);
        for f in &report.failures {
            let item = PyDict::new(py);
            item.set_item(
                "block",
                split::block_label(self.inner.labels(), partition.block(f.block)),
            )?;
            item.set_item("defect", f.defect.to_string())?;
            failures.append(item)?;
        }
        dict.set_item("failures", failures)?;
        Ok(dict.into_any().unbind())
    }

    /// The subgraph of arcs used by minimal block trees and cross trees.
    #[pyo3(signature = (blocks, tolerance = DEFAULT_TOLERANCE))]
    fn lightweight(&self, blocks: Vec<Vec<String>>, tolerance: f64) -> PyResult<Digraph> {
        let partition = resolve_partition(&self.inner, &blocks)?;
        let light =
            split::lightweight_graph(&self.inner, &partition, tolerance).map_err(err)?;
        Ok(Digraph { inner: light })
    }

    /// Representative of a divisible forest, given as {vertex: successor|None}.
    #[pyo3(signature = (blocks, succ, tolerance = DEFAULT_TOLERANCE))]
    fn representative(
        &self,
        py: Python<'_>,
        blocks: Vec<Vec<String>>,
        succ: BTreeMap<String, Option<String>>,
        tolerance: f64,
    ) -> PyResult<Py<PyAny>> {
        let partition = resolve_partition(&self.inner, &blocks)?;
        let forest = resolve_forest(&self.inner, &succ)?;
        let quotient = split::split_digraph(&self.inner, &partition, tolerance).map_err(err)?;
        let repr = forests::representative(&quotient, &forest).map_err(err)?;
        let dict = PyDict::new(py);
        let succ_out = PyDict::new(py);
        for b in 0..repr.vertex_count() {
            succ_out.set_item(
                &quotient.block_labels()[b],
                repr.successor(b).map(|t| quotient.block_labels()[t].clone()),
            )?;
        }
        dict.set_item("succ", succ_out)?;
        dict.set_item("weight", quotient.forest_weight(&repr).map_err(err)?)?;
        Ok(dict.into_any().unbind())
    }

    /// A principal of a block forest given as {block label or index: target|None}.
    #[pyo3(signature = (blocks, succ, mode = "minimal", tolerance = DEFAULT_TOLERANCE))]
    fn principal(
        &self,
        py: Python<'_>,
        blocks: Vec<Vec<String>>,
        succ: BTreeMap<String, Option<String>>,
        mode: &str,
        tolerance: f64,
    ) -> PyResult<Py<PyAny>> {
        let partition = resolve_partition(&self.inner, &blocks)?;
        let block_labels: Vec<String> = partition
            .blocks()
            .iter()
            .map(|b| split::block_label(self.inner.labels(), b))
            .collect();
        let doc = serde_json::json!({ "succ": succ });
        let block_forest =
            io::parse_block_forest(&doc.to_string(), &block_labels).map_err(err)?;
        let mode = match mode {
            "any" => PrincipalMode::Any,
            "minimal" => PrincipalMode::Minimal,
            other => {
                return Err(PyValueError::new_err(format!(
                    "mode must be \"any\" or \"minimal\", got {other:?}"
                )))
            }
        };
        let pair =
            forests::principal(&self.inner, &partition, &block_forest, mode, tolerance)
                .map_err(err)?;
        let dict = PyDict::new(py);
        let succ_out = PyDict::new(py);
        for v in 0..pair.forest.vertex_count() {
            succ_out.set_item(
                self.inner.label(v),
                pair.forest.successor(v).map(|t| self.inner.label(t).to_string()),
            )?;
        }
        dict.set_item("succ", succ_out)?;
        dict.set_item("weight", pair.forest.weight_in(&self.inner).map_err(err)?)?;
        dict.set_item("is_principal", pair.is_principal)?;
        dict.set_item("is_minimal_principal", pair.is_minimal_principal)?;
        Ok(dict.into_any().unbind())
    }

    /// Atom partition generated by the minimal k-forests.
    #[pyo3(signature = (k, budget = 9, tolerance = DEFAULT_TOLERANCE))]
    fn atoms(
        &self,
        py: Python<'_>,
        k: usize,
        budget: usize,
        tolerance: f64,
    ) -> PyResult<Py<PyAny>> {
        let family = forests::atoms(
            &self.inner,
            k,
            &EnumerationBudget::with_max_vertices(budget),
            tolerance,
        )
        .map_err(err)?;
        let list = PyList::empty(py);
        for (block, &labeled) in family.atoms.blocks().iter().zip(&family.labeled) {
            let item = PyDict::new(py);
            let names: Vec<&str> = block.iter().map(|&v| self.inner.label(v)).collect();
            item.set_item("vertices", names)?;
            item.set_item("labeled", labeled)?;
            list.append(item)?;
        }
        Ok(list.into_any().unbind())
    }

    /// Minimum k-forest weights by k (None where no forest exists), with the
    /// per-k convexity verdicts.
    #[pyo3(signature = (budget = 9))]
    fn phi_profile(&self, py: Python<'_>, budget: usize) -> PyResult<Py<PyAny>> {
        let report = forests::check_convexity(
            &self.inner,
            &EnumerationBudget::with_max_vertices(budget),
        )
        .map_err(err)?;
        let dict = PyDict::new(py);
        let profile: Vec<Option<f64>> = report.profile.iter().map(|e| e.value()).collect();
        dict.set_item("phi", profile)?;
        dict.set_item("convexity", report.verdicts)?;
        dict.set_item("has_spanning_tree", report.has_spanning_tree)?;
        dict.set_item("all_hold", report.all_hold)?;
        Ok(dict.into_any().unbind())
    }

    /// Full oracle suite on this graph; dict with per-check verdicts.
    #[pyo3(signature = (seed = 7, budget = 9, tolerance = DEFAULT_TOLERANCE))]
    fn verify(
        &self,
        py: Python<'_>,
        seed: u64,
        budget: usize,
        tolerance: f64,
    ) -> PyResult<Py<PyAny>> {
        let graph = AnyGraph::Directed(self.inner.clone());
        let report = verify::verify(&graph, seed, budget, tolerance).map_err(err)?;
        to_py(py, &report.to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "Digraph(vertices={}, arcs={})",
            self.inner.vertex_count(),
            self.inner.arc_count()
        )
    }
}

/// A weighted undirected graph, optionally reflexive.
#[pyclass(frozen, module = "qforest")]
struct Graph {
    inner: WeightedGraph,
}

#[pymethods]
impl Graph {
    #[new]
    #[pyo3(signature = (vertices, edges, loops = None))]
    fn new(
        vertices: Vec<String>,
        edges: Vec<(String, String, f64)>,
        loops: Option<BTreeMap<String, f64>>,
    ) -> PyResult<Self> {
        let lookup: BTreeMap<&str, usize> =
            vertices.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
        let resolve = |label: &str| -> PyResult<usize> {
            lookup
                .get(label)
                .copied()
                .ok_or_else(|| err(qforest::Error::UnknownLabel(label.to_string())))
        };
        let mut index_edges = Vec::with_capacity(edges.len());
        for (from, to, w) in &edges {
            index_edges.push((resolve(from)?, resolve(to)?, *w));
        }
        let index_loops = match &loops {
            None => None,
            Some(map) => {
                let mut out = Vec::with_capacity(map.len());
                for (label, w) in map {
                    out.push((resolve(label)?, *w));
                }
                Some(out)
            }
        };
        Ok(Graph { inner: WeightedGraph::new(vertices, index_edges, index_loops).map_err(err)? })
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        match io::parse_graph(text).map_err(err)? {
            AnyGraph::Undirected(g) => Ok(Graph { inner: g }),
            AnyGraph::Directed(_) => {
                Err(PyValueError::new_err("document is directed; use Digraph.from_json"))
            }
        }
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&io::graph_to_json(&self.inner, DEFAULT_TOLERANCE))
            .expect("serializable")
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn labels(&self) -> Vec<String> {
        self.inner.labels().to_vec()
    }

    fn is_reflexive(&self) -> bool {
        self.inner.is_reflexive()
    }

    fn edges(&self) -> Vec<(String, String, f64)> {
        self.inner
            .edges()
            .iter()
            .map(|e| {
                (
                    self.inner.label(e.a).to_string(),
                    self.inner.label(e.b).to_string(),
                    e.weight,
                )
            })
            .collect()
    }

    /// Minimum spanning tree weight of the induced subgraph; None when
    /// disconnected.
    fn spanning_minimum(&self, subset: Vec<String>) -> PyResult<Option<f64>> {
        let subset: Vec<usize> = subset
            .iter()
            .map(|l| self.inner.resolve(l).map_err(err))
            .collect::<PyResult<_>>()?;
        Ok(minima::spanning_tree_value(&self.inner, &subset).map_err(err)?.value())
    }

    fn cross_minimum(&self, subset: Vec<String>, target: Vec<String>) -> PyResult<Option<f64>> {
        let resolve = |labels: &[String]| -> PyResult<Vec<usize>> {
            labels.iter().map(|l| self.inner.resolve(l).map_err(err)).collect()
        };
        let subset = resolve(&subset)?;
        let target = resolve(&target)?;
        Ok(minima::cross_value_undirected(&self.inner, &subset, &target)
            .map_err(err)?
            .value())
    }

    /// Quotient with the cheapest crossing edges, as a dict.
    fn split(&self, py: Python<'_>, blocks: Vec<Vec<String>>) -> PyResult<Py<PyAny>> {
        let resolved = blocks
            .iter()
            .map(|b| {
                b.iter()
                    .map(|l| self.inner.resolve(l))
                    .collect::<qforest::Result<Vec<_>>>()
            })
            .collect::<qforest::Result<Vec<_>>>()
            .map_err(err)?;
        let partition = Partition::new(self.inner.vertex_count(), resolved).map_err(err)?;
        let quotient = split::split_undirected(&self.inner, &partition).map_err(err)?;
        let doc = io::split_graph_to_json(&quotient, self.inner.labels(), DEFAULT_TOLERANCE);
        to_py(py, &doc)
    }

    /// View with every edge doubled into opposite arcs.
    fn to_digraph(&self) -> Digraph {
        Digraph { inner: split::digraph_view(&self.inner) }
    }

    /// Digraph view with arcs discounted by the loop weight at their tail.
    fn barrier_digraph(&self) -> PyResult<Digraph> {
        Ok(Digraph { inner: split::barrier_digraph(&self.inner).map_err(err)? })
    }

    #[pyo3(signature = (seed = 7, budget = 9, tolerance = DEFAULT_TOLERANCE))]
    fn verify(
        &self,
        py: Python<'_>,
        seed: u64,
        budget: usize,
        tolerance: f64,
    ) -> PyResult<Py<PyAny>> {
        let graph = AnyGraph::Undirected(self.inner.clone());
        let report = verify::verify(&graph, seed, budget, tolerance).map_err(err)?;
        to_py(py, &report.to_json())
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edges().len()
        )
    }
}

#[pymodule]
#[pyo3(name = "qforest")]
fn qforest_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Digraph>()?;
    m.add_class::<Graph>()?;
    m.add("DEFAULT_TOLERANCE", DEFAULT_TOLERANCE)?;
    Ok(())
}
