//! JSON documents and DOT export.
//!
//! Graph documents: `{"directed": bool, "reflexive": bool, "vertices":
//! [labels], "arcs": [{"from","to","w"}]}`; undirected documents use
//! `"edges"` and an optional `"loops": {label: w}` map. Partitions:
//! `{"blocks": [[labels], ...]}`. Forests: `{"succ": {vertex: target|null}}`.
//!
//! All exports are deterministic: maps are emitted with sorted keys, lists in
//! a canonical order, and weights as exact integers whenever they are
//! integral within tolerance.

use std::collections::BTreeMap;

use serde::Deserialize;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::forest::InForest;
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::partition::Partition;
use crate::split::{SplitDigraph, SplitGraph};

/// A parsed graph document of either orientation.
#[derive(Debug, Clone)]
pub enum AnyGraph {
    Directed(WeightedDigraph),
    Undirected(WeightedGraph),
}

impl AnyGraph {
    pub fn labels(&self) -> &[String] {
        match self {
            AnyGraph::Directed(g) => g.labels(),
            AnyGraph::Undirected(g) => g.labels(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.labels().len()
    }

    pub fn resolve(&self, label: &str) -> Result<usize> {
        match self {
            AnyGraph::Directed(g) => g.resolve(label),
            AnyGraph::Undirected(g) => g.resolve(label),
        }
    }
}

#[derive(Deserialize)]
struct EndpointDoc {
    from: String,
    to: String,
    w: Option<f64>,
}

#[derive(Deserialize)]
struct GraphDoc {
    directed: bool,
    #[serde(default)]
    reflexive: bool,
    vertices: Vec<String>,
    #[serde(default)]
    arcs: Vec<EndpointDoc>,
    #[serde(default)]
    edges: Vec<EndpointDoc>,
    #[serde(default)]
    loops: Option<BTreeMap<String, f64>>,
}

#[derive(Deserialize)]
struct PartitionDoc {
    blocks: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct ForestDoc {
    succ: BTreeMap<String, Option<String>>,
}

pub fn parse_graph(text: &str) -> Result<AnyGraph> {
    let doc: GraphDoc =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let index: BTreeMap<&str, usize> = doc
        .vertices
        .iter()
        .enumerate()
        .map(|(i, l)| (l.as_str(), i))
        .collect();
    if index.len() != doc.vertices.len() {
        let dup = doc
            .vertices
            .iter()
            .enumerate()
            .find(|(i, l)| index[l.as_str()] != *i)
            .map(|(_, l)| l.clone())
            .unwrap_or_default();
        return Err(Error::DuplicateLabel(dup));
    }
    let resolve = |label: &str| -> Result<usize> {
        index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    };
    if doc.directed {
        if !doc.edges.is_empty() || doc.loops.is_some() || doc.reflexive {
            return Err(Error::MalformedDocument(
                "a directed document must not carry edges, loops or the reflexive flag".into(),
            ));
        }
        let mut arcs = Vec::with_capacity(doc.arcs.len());
        for a in &doc.arcs {
            let w = a.w.ok_or_else(|| {
                Error::MalformedDocument(format!("arc {}->{} has no weight", a.from, a.to))
            })?;
            arcs.push((resolve(&a.from)?, resolve(&a.to)?, w));
        }
        Ok(AnyGraph::Directed(WeightedDigraph::new(doc.vertices, arcs)?))
    } else {
        if !doc.arcs.is_empty() {
            return Err(Error::MalformedDocument(
                "an undirected document must use \"edges\", not \"arcs\"".into(),
            ));
        }
        if doc.reflexive != doc.loops.is_some() {
            return Err(if doc.reflexive {
                Error::MalformedDocument("reflexive document without a \"loops\" map".into())
            } else {
                Error::UnexpectedLoops
            });
        }
        let mut edges = Vec::with_capacity(doc.edges.len());
        for e in &doc.edges {
            let w = e.w.ok_or_else(|| {
                Error::MalformedDocument(format!("edge {}-{} has no weight", e.from, e.to))
            })?;
            edges.push((resolve(&e.from)?, resolve(&e.to)?, w));
        }
        let loops = match doc.loops {
            None => None,
            Some(map) => {
                let mut out = Vec::with_capacity(map.len());
                for (label, w) in map {
                    out.push((resolve(&label)?, w));
                }
                Some(out)
            }
        };
        Ok(AnyGraph::Undirected(WeightedGraph::new(doc.vertices, edges, loops)?))
    }
}

pub fn parse_partition(text: &str, graph: &AnyGraph) -> Result<Partition> {
    let doc: PartitionDoc =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    // label-level validation first, so the messages name vertices
    let mut seen: BTreeMap<&str, usize> = BTreeMap::new();
    for block in &doc.blocks {
        for label in block {
            graph.resolve(label)?;
            *seen.entry(label.as_str()).or_insert(0) += 1;
        }
    }
    for label in graph.labels() {
        match seen.get(label.as_str()) {
            None => return Err(Error::PartitionGap(label.clone())),
            Some(&count) if count > 1 => return Err(Error::OverlappingBlocks(label.clone())),
            _ => {}
        }
    }
    let blocks = doc
        .blocks
        .iter()
        .map(|block| block.iter().map(|l| graph.resolve(l)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Partition::new(graph.vertex_count(), blocks)
}

/// Parses `{"succ": {vertex: target|null}}`; vertices not mentioned are roots.
pub fn parse_forest(text: &str, graph: &AnyGraph) -> Result<InForest> {
    let doc: ForestDoc =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let mut succ = vec![None; graph.vertex_count()];
    for (from, to) in &doc.succ {
        let v = graph.resolve(from)?;
        succ[v] = match to {
            None => None,
            Some(target) => Some(graph.resolve(target)?),
        };
    }
    InForest::from_succ(succ)
}

/// Parses a block-level forest: keys are block labels (as printed by exports)
/// or block indices in decimal; values likewise, or null for roots.
pub fn parse_block_forest(text: &str, block_labels: &[String]) -> Result<InForest> {
    let doc: ForestDoc =
        serde_json::from_str(text).map_err(|e| Error::MalformedDocument(e.to_string()))?;
    let resolve = |name: &str| -> Result<usize> {
        if let Some(i) = block_labels.iter().position(|l| l == name) {
            return Ok(i);
        }
        match name.parse::<usize>() {
            Ok(i) if i < block_labels.len() => Ok(i),
            _ => Err(Error::UnknownLabel(name.to_string())),
        }
    };
    let mut succ = vec![None; block_labels.len()];
    for (from, to) in &doc.succ {
        let b = resolve(from)?;
        succ[b] = match to {
            None => None,
            Some(target) => Some(resolve(target)?),
        };
    }
    InForest::from_succ(succ)
}

/// A weight as a JSON number: an exact integer when integral within `tol`.
pub fn weight_to_json(w: f64, tol: f64) -> Value {
    if (w - w.round()).abs() <= tol && w.abs() < 9e15 {
        Value::from(w.round() as i64)
    } else {
        Value::from(w)
    }
}

/// Weight label with six significant digits, trailing zeros trimmed.
pub fn format_weight(w: f64) -> String {
    if w == 0.0 {
        return "0".to_string();
    }
    let magnitude = w.abs().log10().floor() as i32;
    let decimals = (5 - magnitude).max(0) as usize;
    let s = format!("{:.*}", decimals, w);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

pub fn digraph_to_json(g: &WeightedDigraph, tol: f64) -> Value {
    let arcs: Vec<Value> = g
        .arcs()
        .iter()
        .map(|a| {
            json!({
                "from": g.label(a.tail),
                "to": g.label(a.head),
                "w": weight_to_json(a.weight, tol),
            })
        })
        .collect();
    json!({
        "directed": true,
        "vertices": g.labels(),
        "arcs": arcs,
    })
}

pub fn graph_to_json(g: &WeightedGraph, tol: f64) -> Value {
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|e| {
            json!({
                "from": g.label(e.a),
                "to": g.label(e.b),
                "w": weight_to_json(e.weight, tol),
            })
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("directed".into(), Value::from(false));
    doc.insert("reflexive".into(), Value::from(g.is_reflexive()));
    doc.insert("vertices".into(), json!(g.labels()));
    doc.insert("edges".into(), Value::from(edges));
    if g.is_reflexive() {
        let loops: BTreeMap<String, Value> = (0..g.vertex_count())
            .map(|v| (g.label(v).to_string(), weight_to_json(g.loop_weight(v).unwrap(), tol)))
            .collect();
        doc.insert("loops".into(), json!(loops));
    }
    Value::Object(doc)
}

pub fn forest_to_json(f: &InForest, labels: &[String]) -> Value {
    let succ: BTreeMap<String, Value> = (0..f.vertex_count())
        .map(|v| {
            let target = match f.successor(v) {
                Some(h) => Value::from(labels[h].clone()),
                None => Value::Null,
            };
            (labels[v].clone(), target)
        })
        .collect();
    json!({ "succ": succ })
}

fn witness_to_json(witness: &[(usize, usize)], labels: &[String]) -> Value {
    Value::from(
        witness
            .iter()
            .map(|&(t, h)| json!([labels[t], labels[h]]))
            .collect::<Vec<_>>(),
    )
}

/// Quotient digraph export mirroring the input schema, with the member blocks
/// and, on demand, the minima and witness trees behind each arc.
pub fn split_digraph_to_json(
    split: &SplitDigraph,
    labels: &[String],
    tol: f64,
    provenance: bool,
) -> Value {
    let arcs: Vec<Value> = split
        .arcs()
        .iter()
        .map(|a| {
            json!({
                "from": split.block_labels()[a.from],
                "to": split.block_labels()[a.to],
                "w": weight_to_json(a.weight, tol),
            })
        })
        .collect();
    let blocks: Vec<Value> = split
        .partition()
        .blocks()
        .iter()
        .map(|b| {
            let mut names: Vec<&str> = b.iter().map(|&v| labels[v].as_str()).collect();
            names.sort_unstable();
            json!(names)
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("directed".into(), Value::from(true));
    doc.insert("vertices".into(), json!(split.block_labels()));
    doc.insert("arcs".into(), Value::from(arcs));
    doc.insert("blocks".into(), Value::from(blocks));
    if provenance {
        let block_minima: Vec<Value> = (0..split.block_count())
            .map(|b| {
                let m = split.block_minimum(b);
                json!({
                    "block": split.block_labels()[b],
                    "free_minimum": weight_to_json(m.value, tol),
                    "witness": witness_to_json(&m.witness, labels),
                    "minimizing_roots": m.roots.iter().map(|&v| labels[v].clone()).collect::<Vec<_>>(),
                })
            })
            .collect();
        let arc_minima: Vec<Value> = split
            .arcs()
            .iter()
            .map(|a| {
                json!({
                    "from": split.block_labels()[a.from],
                    "to": split.block_labels()[a.to],
                    "cross_minimum": weight_to_json(a.cross_value, tol),
                    "witness": witness_to_json(&a.cross_witness, labels),
                })
            })
            .collect();
        doc.insert(
            "provenance".into(),
            json!({ "blocks": block_minima, "arcs": arc_minima }),
        );
    }
    Value::Object(doc)
}

pub fn split_graph_to_json(split: &SplitGraph, labels: &[String], tol: f64) -> Value {
    let edges: Vec<Value> = split
        .edges()
        .iter()
        .map(|e| {
            json!({
                "from": split.block_labels()[e.a],
                "to": split.block_labels()[e.b],
                "w": weight_to_json(e.weight, tol),
                "via": [labels[e.via.0], labels[e.via.1]],
            })
        })
        .collect();
    let blocks: Vec<Value> = split
        .partition()
        .blocks()
        .iter()
        .map(|b| {
            let mut names: Vec<&str> = b.iter().map(|&v| labels[v].as_str()).collect();
            names.sort_unstable();
            json!(names)
        })
        .collect();
    let mut doc = Map::new();
    doc.insert("directed".into(), Value::from(false));
    doc.insert("reflexive".into(), Value::from(split.is_reflexive()));
    doc.insert("vertices".into(), json!(split.block_labels()));
    doc.insert("edges".into(), Value::from(edges));
    doc.insert("blocks".into(), Value::from(blocks));
    if split.is_reflexive() {
        let loops: BTreeMap<String, Value> = (0..split.block_labels().len())
            .map(|b| {
                (
                    split.block_labels()[b].clone(),
                    weight_to_json(split.loop_weight(b).unwrap(), tol),
                )
            })
            .collect();
        doc.insert("loops".into(), json!(loops));
    }
    Value::Object(doc)
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn split_digraph_to_dot(split: &SplitDigraph) -> String {
    let mut out = String::from("digraph quotient {\n");
    for label in split.block_labels() {
        out.push_str(&format!("  \"{}\";\n", dot_escape(label)));
    }
    for a in split.arcs() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            dot_escape(&split.block_labels()[a.from]),
            dot_escape(&split.block_labels()[a.to]),
            format_weight(a.weight)
        ));
    }
    out.push_str("}\n");
    out
}

pub fn split_graph_to_dot(split: &SplitGraph) -> String {
    let mut out = String::from("graph quotient {\n");
    for (b, label) in split.block_labels().iter().enumerate() {
        match split.loop_weight(b) {
            Some(w) => out.push_str(&format!(
                "  \"{}\" [label=\"{} ({})\"];\n",
                dot_escape(label),
                dot_escape(label),
                format_weight(w)
            )),
            None => out.push_str(&format!("  \"{}\";\n", dot_escape(label))),
        }
    }
    for e in split.edges() {
        out.push_str(&format!(
            "  \"{}\" -- \"{}\" [label=\"{}\"];\n",
            dot_escape(&split.block_labels()[e.a]),
            dot_escape(&split.block_labels()[e.b]),
            format_weight(e.weight)
        ));
    }
    out.push_str("}\n");
    out
}

pub fn digraph_to_dot(g: &WeightedDigraph) -> String {
    let mut out = String::from("digraph g {\n");
    for label in g.labels() {
        out.push_str(&format!("  \"{}\";\n", dot_escape(label)));
    }
    for a in g.arcs() {
        out.push_str(&format!(
            "  \"{}\" -> \"{}\" [label=\"{}\"];\n",
            dot_escape(g.label(a.tail)),
            dot_escape(g.label(a.head)),
            format_weight(a.weight)
        ));
    }
    out.push_str("}\n");
    out
}
