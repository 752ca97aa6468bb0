//! Brute-force reference enumerations, kept deliberately naive.
//!
//! Nothing here shares code with the solvers in [`crate::minima`]: trees are
//! produced by walking the full per-vertex choice space and filtering acyclic
//! configurations. Tests compare solver minima against these enumerations.

use crate::error::{Error, Result};
use crate::forest::InForest;
use crate::graph::{mark_subset, WeightedDigraph, WeightedGraph};
use crate::partition::Partition;

/// Hard limits checked before an enumeration starts.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationBudget {
    pub max_vertices: usize,
    pub max_subset: usize,
    pub max_candidates: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget { max_vertices: 9, max_subset: 9, max_candidates: 5_000_000 }
    }
}

impl EnumerationBudget {
    pub fn with_max_vertices(limit: usize) -> Self {
        EnumerationBudget {
            max_vertices: limit,
            max_subset: limit,
            ..EnumerationBudget::default()
        }
    }

    fn check_subset(&self, size: usize) -> Result<()> {
        if size > self.max_subset {
            Err(Error::BudgetExceeded(format!(
                "subset of {size} vertices (limit {})",
                self.max_subset
            )))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_vertices(&self, n: usize) -> Result<()> {
        if n > self.max_vertices {
            Err(Error::BudgetExceeded(format!(
                "graph of {n} vertices (limit {})",
                self.max_vertices
            )))
        } else {
            Ok(())
        }
    }

    pub(crate) fn check_candidates(&self, count: usize) -> Result<()> {
        if count > self.max_candidates {
            Err(Error::BudgetExceeded(format!(
                "{count} candidate configurations (limit {})",
                self.max_candidates
            )))
        } else {
            Ok(())
        }
    }
}

/// A tree as its sorted arc list. Enumerations return trees in a canonical,
/// duplicate-free order.
pub type TreeArcs = Vec<(usize, usize)>;

pub fn tree_weight(g: &WeightedDigraph, arcs: &[(usize, usize)]) -> Result<f64> {
    let mut total = 0.0;
    for &(t, h) in arcs {
        total += g.arc_weight(t, h).ok_or(Error::ArcNotInHost(t, h))?;
    }
    Ok(total)
}

/// Does the successor assignment avoid directed cycles?
fn assignment_is_acyclic(members: &[usize], succ_of: &dyn Fn(usize) -> Option<usize>) -> bool {
    for &start in members {
        let mut steps = 0;
        let mut v = start;
        while let Some(next) = succ_of(v) {
            steps += 1;
            if steps > members.len() {
                return false;
            }
            v = next;
        }
    }
    true
}

/// All entering trees with vertex set `subset`, optionally restricted to one
/// root. Each non-root member picks exactly one arc staying inside the subset.
pub fn enumerate_in_trees(
    g: &WeightedDigraph,
    subset: &[usize],
    root: Option<usize>,
    budget: &EnumerationBudget,
) -> Result<Vec<TreeArcs>> {
    let inside = mark_subset(g.vertex_count(), subset)?;
    let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| inside[v]).collect();
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    budget.check_subset(members.len())?;
    let roots: Vec<usize> = match root {
        Some(q) => {
            if !members.contains(&q) {
                return Err(Error::RootOutsideSubset(q));
            }
            vec![q]
        }
        None => members.clone(),
    };
    let mut all = Vec::new();
    for q in roots {
        let choosers: Vec<usize> = members.iter().copied().filter(|&v| v != q).collect();
        let choices: Vec<Vec<usize>> = choosers
            .iter()
            .map(|&v| g.out_arcs(v).filter(|a| inside[a.head]).map(|a| a.head).collect())
            .collect();
        let mut count = 1usize;
        for c in &choices {
            count = count.saturating_mul(c.len().max(1));
        }
        budget.check_candidates(count)?;
        if choices.iter().any(|c| c.is_empty()) && !choosers.is_empty() {
            continue;
        }
        let mut pick = vec![0usize; choosers.len()];
        loop {
            let succ_of = |v: usize| -> Option<usize> {
                choosers
                    .iter()
                    .position(|&u| u == v)
                    .map(|i| choices[i][pick[i]])
            };
            if assignment_is_acyclic(&members, &succ_of) {
                let mut arcs: TreeArcs = choosers
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| (v, choices[i][pick[i]]))
                    .collect();
                arcs.sort_unstable();
                all.push(arcs);
            }
            // advance the odometer
            let mut i = 0;
            loop {
                if i == pick.len() {
                    break;
                }
                pick[i] += 1;
                if pick[i] < choices[i].len() {
                    break;
                }
                pick[i] = 0;
                i += 1;
            }
            if i == pick.len() {
                break;
            }
        }
    }
    all.sort_unstable();
    all.dedup();
    Ok(all)
}

/// All trees made of a subset tree plus one arc from its root to a vertex of
/// `target`. With `target = None` the arc may land anywhere outside.
pub fn enumerate_leaving_trees(
    g: &WeightedDigraph,
    subset: &[usize],
    target: Option<&[usize]>,
    budget: &EnumerationBudget,
) -> Result<Vec<TreeArcs>> {
    let n = g.vertex_count();
    let inside = mark_subset(n, subset)?;
    let target_mark = match target {
        Some(t) => {
            let marks = mark_subset(n, t)?;
            if let Some(v) = (0..n).find(|&v| inside[v] && marks[v]) {
                return Err(Error::BlocksOverlap(v));
            }
            marks
        }
        None => inside.iter().map(|&b| !b).collect(),
    };
    let members: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    let mut all = Vec::new();
    for &q in &members {
        let exits: Vec<usize> = g
            .out_arcs(q)
            .filter(|a| target_mark[a.head])
            .map(|a| a.head)
            .collect();
        if exits.is_empty() {
            continue;
        }
        for tree in enumerate_in_trees(g, subset, Some(q), budget)? {
            for &r in &exits {
                let mut arcs = tree.clone();
                arcs.push((q, r));
                arcs.sort_unstable();
                all.push(arcs);
            }
        }
    }
    all.sort_unstable();
    all.dedup();
    Ok(all)
}

pub fn enumerate_escape_trees(
    g: &WeightedDigraph,
    subset: &[usize],
    budget: &EnumerationBudget,
) -> Result<Vec<TreeArcs>> {
    enumerate_leaving_trees(g, subset, None, budget)
}

pub fn enumerate_cross_trees(
    g: &WeightedDigraph,
    subset: &[usize],
    target: &[usize],
    budget: &EnumerationBudget,
) -> Result<Vec<TreeArcs>> {
    enumerate_leaving_trees(g, subset, Some(target), budget)
}

/// Minimum weight over an enumeration, with every tree attaining it.
pub fn minimal_trees(
    g: &WeightedDigraph,
    trees: &[TreeArcs],
    tol: f64,
) -> Result<(Option<f64>, Vec<TreeArcs>)> {
    let mut weights = Vec::with_capacity(trees.len());
    for t in trees {
        weights.push(tree_weight(g, t)?);
    }
    let min = weights.iter().copied().fold(f64::INFINITY, f64::min);
    if !min.is_finite() {
        return Ok((None, Vec::new()));
    }
    let kept = trees
        .iter()
        .zip(&weights)
        .filter(|(_, &w)| w <= min + tol)
        .map(|(t, _)| t.clone())
        .collect();
    Ok((Some(min), kept))
}

/// All spanning trees of the subgraph induced by `subset` of an undirected
/// graph, by filtering edge subsets of the right size.
pub fn enumerate_spanning_trees_undirected(
    g: &WeightedGraph,
    subset: &[usize],
    budget: &EnumerationBudget,
) -> Result<Vec<Vec<(usize, usize)>>> {
    let inside = mark_subset(g.vertex_count(), subset)?;
    let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| inside[v]).collect();
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    budget.check_subset(members.len())?;
    let edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|e| inside[e.a] && inside[e.b])
        .map(|e| (e.a, e.b))
        .collect();
    let need = members.len() - 1;
    if need == 0 {
        return Ok(vec![Vec::new()]);
    }
    if edges.len() < need {
        return Ok(Vec::new());
    }
    let mut count = 1usize;
    for i in 0..need {
        count = count.saturating_mul(edges.len() - i) / (i + 1);
    }
    budget.check_candidates(count)?;
    let mut trees = Vec::new();
    let mut pick: Vec<usize> = (0..need).collect();
    loop {
        // union-find over the selection
        let mut parent: Vec<usize> = (0..g.vertex_count()).collect();
        fn find(parent: &mut Vec<usize>, v: usize) -> usize {
            let mut v = v;
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        let mut acyclic = true;
        for &i in &pick {
            let (a, b) = edges[i];
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                acyclic = false;
                break;
            }
            parent[ra] = rb;
        }
        if acyclic {
            // need edges and no cycle over |D| vertices: spanning tree
            let mut tree: Vec<(usize, usize)> = pick.iter().map(|&i| edges[i]).collect();
            tree.sort_unstable();
            trees.push(tree);
        }
        // next combination
        let mut i = need;
        loop {
            if i == 0 {
                return Ok(trees);
            }
            i -= 1;
            if pick[i] != i + edges.len() - need {
                pick[i] += 1;
                for j in i + 1..need {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn tree_weight_undirected(g: &WeightedGraph, edges: &[(usize, usize)]) -> Result<f64> {
    let mut total = 0.0;
    for &(a, b) in edges {
        total += g
            .edge_weight(a, b)
            .ok_or(Error::ArcNotInHost(a, b))?;
    }
    Ok(total)
}

/// Every principal of a block forest: one cross tree per block arc, one free
/// tree per root block, combined in all possible ways.
pub fn enumerate_principals(
    g: &WeightedDigraph,
    partition: &Partition,
    block_forest: &InForest,
    budget: &EnumerationBudget,
) -> Result<Vec<InForest>> {
    let mut pools: Vec<Vec<TreeArcs>> = Vec::new();
    for b in 0..partition.block_count() {
        let block = partition.block(b);
        let pool = match block_forest.successor(b) {
            Some(target_block) => {
                enumerate_cross_trees(g, block, partition.block(target_block), budget)?
            }
            None => enumerate_in_trees(g, block, None, budget)?,
        };
        if pool.is_empty() {
            return Ok(Vec::new());
        }
        pools.push(pool);
    }
    let mut count = 1usize;
    for p in &pools {
        count = count.saturating_mul(p.len());
    }
    budget.check_candidates(count)?;
    let n = g.vertex_count();
    let mut principals = Vec::with_capacity(count);
    let mut pick = vec![0usize; pools.len()];
    loop {
        let mut arcs: Vec<(usize, usize)> = Vec::new();
        for (b, p) in pools.iter().enumerate() {
            arcs.extend_from_slice(&p[pick[b]]);
        }
        principals.push(InForest::from_arcs(n, &arcs)?);
        let mut i = 0;
        loop {
            if i == pick.len() {
                return Ok(principals);
            }
            pick[i] += 1;
            if pick[i] < pools[i].len() {
                break;
            }
            pick[i] = 0;
            i += 1;
        }
    }
}
