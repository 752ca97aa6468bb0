//! Spanning entering forests: at most one arc out of each vertex, no cycles.

use crate::error::{Error, Result};
use crate::graph::{components_of_successors, mark_subset, WeightedDigraph};

/// A spanning entering forest over vertices `0..n`, stored as a successor map.
///
/// `succ[v] = None` exactly when `v` is a root. Component ids and the root set
/// are derived at construction; the value is immutable afterwards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InForest {
    succ: Vec<Option<usize>>,
    roots: Vec<usize>,
    component: Vec<usize>,
}

impl InForest {
    pub fn from_succ(succ: Vec<Option<usize>>) -> Result<InForest> {
        for (v, s) in succ.iter().enumerate() {
            if let Some(h) = s {
                if *h >= succ.len() {
                    return Err(Error::VertexOutOfRange(*h, succ.len()));
                }
                if *h == v {
                    return Err(Error::SelfLoop(v.to_string()));
                }
            }
        }
        let (roots, component) = components_of_successors(&succ)?;
        Ok(InForest { succ, roots, component })
    }

    /// Builds a forest from an explicit arc list over `n` vertices.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<InForest> {
        let mut succ = vec![None; n];
        for &(tail, head) in arcs {
            if tail >= n || head >= n {
                return Err(Error::VertexOutOfRange(tail.max(head), n));
            }
            if succ[tail].is_some() {
                return Err(Error::OutDegreeExceeded(tail, 2));
            }
            succ[tail] = Some(head);
        }
        InForest::from_succ(succ)
    }

    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    pub fn successor(&self, v: usize) -> Option<usize> {
        self.succ[v]
    }

    pub fn successors(&self) -> &[Option<usize>] {
        &self.succ
    }

    /// Sorted list of roots (drains).
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn tree_count(&self) -> usize {
        self.roots.len()
    }

    /// Index (into the root list) of the tree containing `v`.
    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    /// Vertex set of the tree rooted at `roots()[slot]`, sorted.
    pub fn tree_vertices(&self, slot: usize) -> Vec<usize> {
        (0..self.vertex_count())
            .filter(|&v| self.component[v] == slot)
            .collect()
    }

    pub fn arc_count(&self) -> usize {
        self.succ.iter().filter(|s| s.is_some()).count()
    }

    /// Arcs as `(tail, head)` pairs, ordered by tail.
    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .filter_map(|(v, s)| s.map(|h| (v, h)))
    }

    /// Total weight of the forest's arcs under the host graph. Errors when an
    /// arc is absent from the host, i.e. the forest is not a subgraph of it.
    pub fn weight_in(&self, host: &WeightedDigraph) -> Result<f64> {
        let mut total = 0.0;
        for (tail, head) in self.arcs() {
            total += host
                .arc_weight(tail, head)
                .ok_or(Error::ArcNotInHost(tail, head))?;
        }
        Ok(total)
    }

    /// Weight of the arcs leaving `subset`, under the host graph.
    pub fn weight_out_in(&self, host: &WeightedDigraph, subset: &[usize]) -> Result<f64> {
        let inside = mark_subset(self.vertex_count(), subset)?;
        let mut total = 0.0;
        for (tail, head) in self.arcs() {
            if inside[tail] {
                total += host
                    .arc_weight(tail, head)
                    .ok_or(Error::ArcNotInHost(tail, head))?;
            }
        }
        Ok(total)
    }

    /// Materializes the forest as a weighted digraph, taking weights from the
    /// host it spans.
    pub fn as_subgraph(&self, host: &WeightedDigraph) -> Result<WeightedDigraph> {
        let mut arcs = Vec::with_capacity(self.arc_count());
        for (tail, head) in self.arcs() {
            let w = host
                .arc_weight(tail, head)
                .ok_or(Error::ArcNotInHost(tail, head))?;
            arcs.push((tail, head, w));
        }
        WeightedDigraph::new(host.labels().to_vec(), arcs)
    }
}

/// Replaces, inside `domain`, the forest's outgoing arcs by those of
/// `replacement`, keeping the forest's arcs everywhere else. Weights come from
/// `host` outside the domain and from `replacement` inside it. Vertices of
/// `replacement` are matched to `host` by label.
///
/// When no forest arc enters the domain from outside, or no replacement arc
/// leaves it, the result is again a forest whenever the replacement part is.
pub fn replace_outgoing(
    host: &WeightedDigraph,
    forest: &InForest,
    replacement: &WeightedDigraph,
    domain: &[usize],
) -> Result<WeightedDigraph> {
    let n = host.vertex_count();
    let inside = mark_subset(n, domain)?;
    let mut arcs: Vec<(usize, usize, f64)> = Vec::new();
    for (tail, head) in forest.arcs() {
        if !inside[tail] {
            let w = host
                .arc_weight(tail, head)
                .ok_or(Error::ArcNotInHost(tail, head))?;
            arcs.push((tail, head, w));
        }
    }
    let mut out_degree = vec![0usize; n];
    let mut replacement_leaves_domain = false;
    for arc in replacement.arcs() {
        let tail = host.resolve(replacement.label(arc.tail))?;
        let head = host.resolve(replacement.label(arc.head))?;
        if !inside[tail] {
            continue;
        }
        out_degree[tail] += 1;
        if out_degree[tail] > 1 {
            return Err(Error::OutDegreeExceeded(tail, out_degree[tail]));
        }
        if !inside[head] {
            replacement_leaves_domain = true;
        }
        arcs.push((tail, head, arc.weight));
    }
    let result = WeightedDigraph::new(host.labels().to_vec(), arcs)?;

    // Forest guarantee: base and replacement both forests plus one of the two
    // boundary conditions (nothing enters the domain in the base, or nothing
    // leaves it in the replacement).
    let forest_enters_domain = forest
        .arcs()
        .any(|(tail, head)| !inside[tail] && inside[head]);
    if (!forest_enters_domain || !replacement_leaves_domain)
        && replacement.forest_check().is_forest
    {
        debug_assert!(
            result.forest_check().is_forest,
            "arc replacement broke the forest invariant despite a satisfied hypothesis"
        );
    }
    Ok(result)
}
