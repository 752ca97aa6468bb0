//! Weighted directed and undirected graphs over a fixed vertex set.
//!
//! Vertices carry string labels externally and dense indices `0..n` internally.
//! Graphs are immutable after construction: every operation returns a new value.

use std::collections::HashMap;

use crate::error::{Error, Result};

/// A directed arc with a real weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub tail: usize,
    pub head: usize,
    pub weight: f64,
}

/// A weighted digraph: no self-loops, at most one arc per ordered pair.
///
/// Parallel arcs in the input are collapsed to the minimum weight at
/// construction time; only minima of arc weights enter any formula downstream.
#[derive(Debug, Clone)]
pub struct WeightedDigraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
}

impl WeightedDigraph {
    pub fn new(labels: Vec<String>, raw_arcs: Vec<(usize, usize, f64)>) -> Result<WeightedDigraph> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let mut best: HashMap<(usize, usize), f64> = HashMap::new();
        for (tail, head, weight) in raw_arcs {
            if tail >= n || head >= n {
                return Err(Error::VertexOutOfRange(tail.max(head), n));
            }
            if tail == head {
                return Err(Error::SelfLoop(labels[tail].clone()));
            }
            if !weight.is_finite() {
                return Err(Error::NonFiniteWeight(labels[tail].clone(), labels[head].clone()));
            }
            let entry = best.entry((tail, head)).or_insert(weight);
            if weight < *entry {
                *entry = weight;
            }
        }
        let mut arcs: Vec<Arc> = best
            .into_iter()
            .map(|((tail, head), weight)| Arc { tail, head, weight })
            .collect();
        arcs.sort_by_key(|a| (a.tail, a.head));
        let mut out = vec![Vec::new(); n];
        for (id, arc) in arcs.iter().enumerate() {
            out[arc.tail].push(id);
        }
        Ok(WeightedDigraph { labels, index, arcs, out })
    }

    /// Convenience constructor with labels "0", "1", ... for tests and generators.
    pub fn from_indexed(n: usize, arcs: Vec<(usize, usize, f64)>) -> Result<WeightedDigraph> {
        WeightedDigraph::new((0..n).map(|i| i.to_string()).collect(), arcs)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn resolve(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs leaving `v`, ordered by head.
    pub fn out_arcs(&self, v: usize) -> impl Iterator<Item = &Arc> + '_ {
        self.out[v].iter().map(move |&id| &self.arcs[id])
    }

    pub fn arc_weight(&self, tail: usize, head: usize) -> Option<f64> {
        self.out[tail]
            .iter()
            .map(|&id| &self.arcs[id])
            .find(|a| a.head == head)
            .map(|a| a.weight)
    }

    pub fn has_arc(&self, tail: usize, head: usize) -> bool {
        self.arc_weight(tail, head).is_some()
    }

    fn mark(&self, subset: &[usize]) -> Result<Vec<bool>> {
        mark_subset(self.vertex_count(), subset)
    }

    /// Sum of weights of arcs whose tail lies in `subset`; heads may leave it.
    /// Additive over disjoint subsets.
    pub fn weight_out(&self, subset: &[usize]) -> Result<f64> {
        let inside = self.mark(subset)?;
        Ok(self
            .arcs
            .iter()
            .filter(|a| inside[a.tail])
            .map(|a| a.weight)
            .sum())
    }

    pub fn total_weight(&self) -> f64 {
        self.arcs.iter().map(|a| a.weight).sum()
    }

    /// The restriction to `subset`: arcs with both ends inside, weights kept.
    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<WeightedDigraph> {
        let inside = self.mark(subset)?;
        let kept: Vec<usize> = (0..self.vertex_count()).filter(|&v| inside[v]).collect();
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let labels = kept.iter().map(|&v| self.labels[v].clone()).collect();
        let arcs = self
            .arcs
            .iter()
            .filter(|a| inside[a.tail] && inside[a.head])
            .map(|a| (remap[a.tail], remap[a.head], a.weight))
            .collect();
        WeightedDigraph::new(labels, arcs)
    }

    /// All arcs leaving vertices of `subset`, and only those; the vertex set is
    /// `subset` plus the heads those arcs reach. Arcs leaving the reached heads
    /// are dropped even when they point back inside.
    pub fn outgoing_restriction(&self, subset: &[usize]) -> Result<WeightedDigraph> {
        let inside = self.mark(subset)?;
        let mut member = inside.clone();
        for arc in self.arcs.iter().filter(|a| inside[a.tail]) {
            member[arc.head] = true;
        }
        let kept: Vec<usize> = (0..self.vertex_count()).filter(|&v| member[v]).collect();
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let labels = kept.iter().map(|&v| self.labels[v].clone()).collect();
        let arcs = self
            .arcs
            .iter()
            .filter(|a| inside[a.tail])
            .map(|a| (remap[a.tail], remap[a.head], a.weight))
            .collect();
        WeightedDigraph::new(labels, arcs)
    }

    /// Out-degree-at-most-one plus acyclicity check, with roots and, for
    /// forests, the component of every vertex (indexed by position in `roots`).
    pub fn forest_check(&self) -> ForestCheck {
        let n = self.vertex_count();
        let mut succ: Vec<Option<usize>> = vec![None; n];
        for v in 0..n {
            let mut heads = self.out_arcs(v).map(|a| a.head);
            succ[v] = heads.next();
            if heads.next().is_some() {
                return ForestCheck {
                    is_forest: false,
                    roots: (0..n).filter(|&u| self.out[u].is_empty()).collect(),
                    component: Vec::new(),
                };
            }
        }
        match components_of_successors(&succ) {
            Ok((roots, component)) => ForestCheck { is_forest: true, roots, component },
            Err(_) => ForestCheck {
                is_forest: false,
                roots: (0..n).filter(|&u| succ[u].is_none()).collect(),
                component: Vec::new(),
            },
        }
    }

    /// Arc list as `(tail, head)` pairs, sorted. Used by tests and exports.
    pub fn arc_pairs(&self) -> Vec<(usize, usize)> {
        self.arcs.iter().map(|a| (a.tail, a.head)).collect()
    }
}

/// Result of [`WeightedDigraph::forest_check`].
#[derive(Debug, Clone)]
pub struct ForestCheck {
    pub is_forest: bool,
    /// Vertices with no outgoing arc.
    pub roots: Vec<usize>,
    /// For forests: component index (position in `roots`) per vertex.
    pub component: Vec<usize>,
}

/// Walks a successor map; errors on a directed cycle. Returns the sorted roots
/// and the component (index into the root list) of each vertex.
pub(crate) fn components_of_successors(succ: &[Option<usize>]) -> Result<(Vec<usize>, Vec<usize>)> {
    let n = succ.len();
    let roots: Vec<usize> = (0..n).filter(|&v| succ[v].is_none()).collect();
    let mut root_slot = vec![usize::MAX; n];
    for (slot, &r) in roots.iter().enumerate() {
        root_slot[r] = slot;
    }
    let mut component = vec![usize::MAX; n];
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        // Follow successors until a resolved vertex or a root; a walk longer
        // than n vertices can only mean a cycle.
        let mut path = Vec::new();
        let mut v = start;
        let comp = loop {
            if component[v] != usize::MAX {
                break component[v];
            }
            path.push(v);
            match succ[v] {
                None => break root_slot[v],
                Some(next) => {
                    if path.len() > n {
                        return Err(Error::CyclicSuccessors(v));
                    }
                    if path.contains(&next) {
                        return Err(Error::CyclicSuccessors(next));
                    }
                    v = next;
                }
            }
        };
        for u in path {
            component[u] = comp;
        }
    }
    Ok((roots, component))
}

pub(crate) fn mark_subset(n: usize, subset: &[usize]) -> Result<Vec<bool>> {
    let mut inside = vec![false; n];
    for &v in subset {
        if v >= n {
            return Err(Error::VertexOutOfRange(v, n));
        }
        inside[v] = true;
    }
    Ok(inside)
}

/// An undirected edge with a real weight, stored with `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub weight: f64,
}

/// A weighted undirected graph, optionally reflexive (a loop on every vertex).
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<Edge>,
    adj: Vec<Vec<usize>>,
    loops: Option<Vec<f64>>,
}

impl WeightedGraph {
    pub fn new(
        labels: Vec<String>,
        raw_edges: Vec<(usize, usize, f64)>,
        loops: Option<Vec<(usize, f64)>>,
    ) -> Result<WeightedGraph> {
        let n = labels.len();
        let mut index = HashMap::with_capacity(n);
        for (i, label) in labels.iter().enumerate() {
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let mut best: HashMap<(usize, usize), f64> = HashMap::new();
        for (u, v, weight) in raw_edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange(u.max(v), n));
            }
            if u == v {
                return Err(Error::SelfLoop(labels[u].clone()));
            }
            if !weight.is_finite() {
                return Err(Error::NonFiniteWeight(labels[u].clone(), labels[v].clone()));
            }
            let key = (u.min(v), u.max(v));
            let entry = best.entry(key).or_insert(weight);
            if weight < *entry {
                *entry = weight;
            }
        }
        let mut edges: Vec<Edge> = best
            .into_iter()
            .map(|((a, b), weight)| Edge { a, b, weight })
            .collect();
        edges.sort_by_key(|e| (e.a, e.b));
        let mut adj = vec![Vec::new(); n];
        for (id, e) in edges.iter().enumerate() {
            adj[e.a].push(id);
            adj[e.b].push(id);
        }
        let loops = match loops {
            None => None,
            Some(entries) => {
                let mut w = vec![f64::NAN; n];
                for (v, weight) in entries {
                    if v >= n {
                        return Err(Error::VertexOutOfRange(v, n));
                    }
                    if !weight.is_finite() {
                        return Err(Error::NonFiniteWeight(labels[v].clone(), labels[v].clone()));
                    }
                    w[v] = weight;
                }
                if let Some(missing) = w.iter().position(|x| x.is_nan()) {
                    return Err(Error::MissingLoop(labels[missing].clone()));
                }
                Some(w)
            }
        };
        Ok(WeightedGraph { labels, index, edges, adj, loops })
    }

    pub fn from_indexed(
        n: usize,
        edges: Vec<(usize, usize, f64)>,
        loops: Option<Vec<(usize, f64)>>,
    ) -> Result<WeightedGraph> {
        WeightedGraph::new((0..n).map(|i| i.to_string()).collect(), edges, loops)
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn resolve(&self, label: &str) -> Result<usize> {
        self.index_of(label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn is_reflexive(&self) -> bool {
        self.loops.is_some()
    }

    pub fn loop_weight(&self, v: usize) -> Option<f64> {
        self.loops.as_ref().map(|w| w[v])
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        let (a, b) = (u.min(v), u.max(v));
        self.adj[a]
            .iter()
            .map(|&id| &self.edges[id])
            .find(|e| e.a == a && e.b == b)
            .map(|e| e.weight)
    }

    /// Edges incident to `v`, in edge-id order.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = &Edge> + '_ {
        self.adj[v].iter().map(move |&id| &self.edges[id])
    }

    /// Sum of weights of edges with BOTH ends in `subset`; equals the total
    /// weight of the induced subgraph. Loop weights of subset vertices are
    /// included when the graph is reflexive.
    pub fn induced_weight(&self, subset: &[usize]) -> Result<f64> {
        let inside = mark_subset(self.vertex_count(), subset)?;
        let mut sum: f64 = self
            .edges
            .iter()
            .filter(|e| inside[e.a] && inside[e.b])
            .map(|e| e.weight)
            .sum();
        if let Some(loops) = &self.loops {
            sum += (0..self.vertex_count())
                .filter(|&v| inside[v])
                .map(|v| loops[v])
                .sum::<f64>();
        }
        Ok(sum)
    }

    pub fn induced_subgraph(&self, subset: &[usize]) -> Result<WeightedGraph> {
        let inside = mark_subset(self.vertex_count(), subset)?;
        let kept: Vec<usize> = (0..self.vertex_count()).filter(|&v| inside[v]).collect();
        let mut remap = vec![usize::MAX; self.vertex_count()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let labels = kept.iter().map(|&v| self.labels[v].clone()).collect();
        let edges = self
            .edges
            .iter()
            .filter(|e| inside[e.a] && inside[e.b])
            .map(|e| (remap[e.a], remap[e.b], e.weight))
            .collect();
        let loops = self
            .loops
            .as_ref()
            .map(|w| kept.iter().map(|&v| (remap[v], w[v])).collect());
        WeightedGraph::new(labels, edges, loops)
    }

    /// True when every pair of `subset` vertices is joined by a path inside it.
    pub fn is_connected_within(&self, subset: &[usize]) -> Result<bool> {
        let inside = mark_subset(self.vertex_count(), subset)?;
        let members: Vec<usize> = (0..self.vertex_count()).filter(|&v| inside[v]).collect();
        if members.is_empty() {
            return Ok(true);
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut stack = vec![members[0]];
        seen[members[0]] = true;
        let mut found = 0usize;
        while let Some(v) = stack.pop() {
            found += 1;
            for e in self.incident_edges(v) {
                let other = if e.a == v { e.b } else { e.a };
                if inside[other] && !seen[other] {
                    seen[other] = true;
                    stack.push(other);
                }
            }
        }
        Ok(found == members.len())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn triangle() -> WeightedGraph {
        WeightedGraph::from_indexed(3, vec![(0, 1, 1.0), (1, 2, 2.0), (0, 2, 3.0)], None).unwrap()
    }

    #[test]
    fn rejects_self_loops_in_digraphs() {
        let err = WeightedDigraph::from_indexed(2, vec![(0, 0, 1.0)]).unwrap_err();
        assert!(matches!(err, Error::SelfLoop(label) if label == "0"));
    }

    #[test]
    fn collapses_parallel_arcs_to_minimum() {
        let g = WeightedDigraph::from_indexed(2, vec![(0, 1, 5.0), (0, 1, 2.0), (0, 1, 9.0)]).unwrap();
        assert_eq!(g.arc_count(), 1);
        assert_eq!(g.arc_weight(0, 1), Some(2.0));
    }

    #[test]
    fn induced_subgraph_identity_and_singleton() {
        let g = WeightedDigraph::from_indexed(3, vec![(0, 1, 1.0), (1, 2, 2.0)]).unwrap();
        let all = g.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(all.arc_pairs(), g.arc_pairs());
        let single = g.induced_subgraph(&[1]).unwrap();
        assert_eq!(single.vertex_count(), 1);
        assert_eq!(single.arc_count(), 0);
    }

    #[test]
    fn induced_subgraph_unknown_vertex() {
        let g = WeightedDigraph::from_indexed(3, vec![]).unwrap();
        assert!(matches!(g.induced_subgraph(&[5]), Err(Error::VertexOutOfRange(5, 3))));
    }

    #[test]
    fn outgoing_restriction_of_empty_set_is_empty() {
        let g = WeightedDigraph::from_indexed(3, vec![(0, 1, 1.0)]).unwrap();
        let h = g.outgoing_restriction(&[]).unwrap();
        assert_eq!(h.vertex_count(), 0);
        assert_eq!(h.arc_count(), 0);
    }

    #[test]
    fn outgoing_restriction_keeps_only_arcs_leaving_subset() {
        // 0 -> 1 -> 2, plus 2 -> 0 which must vanish even though 0 is a member.
        let g =
            WeightedDigraph::from_indexed(3, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let h = g.outgoing_restriction(&[0, 1]).unwrap();
        assert_eq!(h.vertex_count(), 3);
        let mut pairs: Vec<(String, String)> = h
            .arcs()
            .iter()
            .map(|a| (h.label(a.tail).into(), h.label(a.head).into()))
            .collect();
        pairs.sort();
        assert_eq!(pairs, vec![("0".into(), "1".into()), ("1".into(), "2".into())]);
    }

    #[test]
    fn outgoing_restriction_of_full_set_keeps_all_arcs() {
        let g =
            WeightedDigraph::from_indexed(3, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        let h = g.outgoing_restriction(&[0, 1, 2]).unwrap();
        assert_eq!(h.arc_count(), 3);
    }

    #[test]
    fn weight_out_counts_arcs_leaving_the_subset() {
        let g =
            WeightedDigraph::from_indexed(3, vec![(0, 1, 1.5), (1, 2, 2.5), (2, 0, 4.0)]).unwrap();
        assert_eq!(g.weight_out(&[]).unwrap(), 0.0);
        assert_eq!(g.weight_out(&[0]).unwrap(), 1.5);
        assert_eq!(g.weight_out(&[0, 1]).unwrap(), 4.0);
        assert_eq!(g.weight_out(&[0, 1, 2]).unwrap(), g.total_weight());
    }

    #[test]
    fn forest_check_trivial_cases() {
        let empty = WeightedDigraph::from_indexed(4, vec![]).unwrap();
        let check = empty.forest_check();
        assert!(check.is_forest);
        assert_eq!(check.roots, vec![0, 1, 2, 3]);

        let cycle =
            WeightedDigraph::from_indexed(3, vec![(0, 1, 1.0), (1, 2, 1.0), (2, 0, 1.0)]).unwrap();
        assert!(!cycle.forest_check().is_forest);

        let branching = WeightedDigraph::from_indexed(3, vec![(0, 1, 1.0), (0, 2, 1.0)]).unwrap();
        assert!(!branching.forest_check().is_forest);
    }

    #[test]
    fn induced_weight_counts_internal_edges_only() {
        let g = triangle();
        assert_eq!(g.induced_weight(&[]).unwrap(), 0.0);
        assert_eq!(g.induced_weight(&[0, 1, 2]).unwrap(), 6.0);
        assert_eq!(g.induced_weight(&[0, 1]).unwrap(), 1.0);
    }

    #[test]
    fn reflexive_graph_requires_all_loops() {
        let err = WeightedGraph::from_indexed(2, vec![(0, 1, 1.0)], Some(vec![(0, 2.0)]));
        assert!(matches!(err, Err(Error::MissingLoop(label)) if label == "1"));
        let ok =
            WeightedGraph::from_indexed(2, vec![(0, 1, 1.0)], Some(vec![(0, 2.0), (1, 3.0)]))
                .unwrap();
        assert!(ok.is_reflexive());
        assert_eq!(ok.induced_weight(&[0, 1]).unwrap(), 6.0);
    }

    fn arb_digraph() -> impl Strategy<Value = WeightedDigraph> {
        (2usize..7).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n, 0..10i32), 0..24).prop_map(move |raw| {
                let arcs = raw
                    .into_iter()
                    .filter(|(t, h, _)| t != h)
                    .map(|(t, h, w)| (t, h, w as f64))
                    .collect();
                WeightedDigraph::from_indexed(n, arcs).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn weight_out_is_additive_on_disjoint_subsets(g in arb_digraph(), split_bits in 0u32..64) {
            let n = g.vertex_count();
            let mut left = Vec::new();
            let mut right = Vec::new();
            for v in 0..n {
                if split_bits >> v & 1 == 1 { left.push(v) } else { right.push(v) }
            }
            let both: Vec<usize> = (0..n).collect();
            let sum = g.weight_out(&left).unwrap() + g.weight_out(&right).unwrap();
            prop_assert_eq!(g.weight_out(&both).unwrap(), sum);
        }

        #[test]
        fn weight_out_matches_direct_arc_filter(g in arb_digraph(), bits in 0u32..128) {
            let subset: Vec<usize> = (0..g.vertex_count()).filter(|v| bits >> v & 1 == 1).collect();
            let inside: Vec<bool> = (0..g.vertex_count()).map(|v| subset.contains(&v)).collect();
            let brute: f64 = g.arcs().iter().filter(|a| inside[a.tail]).map(|a| a.weight).sum();
            prop_assert_eq!(g.weight_out(&subset).unwrap(), brute);
        }

        #[test]
        fn restriction_is_idempotent(g in arb_digraph(), bits in 0u32..128) {
            let subset: Vec<usize> = (0..g.vertex_count()).filter(|v| bits >> v & 1 == 1).collect();
            let once = g.induced_subgraph(&subset).unwrap();
            let all: Vec<usize> = (0..once.vertex_count()).collect();
            let twice = once.induced_subgraph(&all).unwrap();
            prop_assert_eq!(once.arc_pairs(), twice.arc_pairs());
        }

        #[test]
        fn induced_arcs_match_brute_filter(g in arb_digraph(), bits in 0u32..128) {
            let subset: Vec<usize> = (0..g.vertex_count()).filter(|v| bits >> v & 1 == 1).collect();
            let induced = g.induced_subgraph(&subset).unwrap();
            let mut expected: Vec<(String, String)> = g
                .arcs()
                .iter()
                .filter(|a| subset.contains(&a.tail) && subset.contains(&a.head))
                .map(|a| (g.label(a.tail).into(), g.label(a.head).into()))
                .collect();
            expected.sort();
            let mut got: Vec<(String, String)> = induced
                .arcs()
                .iter()
                .map(|a| (induced.label(a.tail).into(), induced.label(a.head).into()))
                .collect();
            got.sort();
            prop_assert_eq!(got, expected);
        }
    }
}
