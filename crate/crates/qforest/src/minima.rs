//! Minimum-weight entering trees on vertex subsets.
//!
//! Four flavors of minima are computed, each with a witness tree:
//! rooted (spanning tree of a subset with a fixed root), free (best root),
//! escape (subset tree plus one arc leaving the subset from its root) and
//! cross (escape restricted to arcs landing in a given target set).
//!
//! Values come from a contraction-based minimum spanning in-arborescence
//! solver on the induced subgraph. Witnesses are canonical: among all minimal
//! trees, the one with the lexicographically smallest sorted arc list, found
//! by greedily forcing arcs and re-solving. The solvers are exact; ties are
//! resolved only in witness selection, never in values.

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::graph::{mark_subset, WeightedDigraph, WeightedGraph};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Which family of trees a minimum ranges over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TreeKind {
    /// Trees spanning the subset, rooted at the given vertex.
    Rooted(usize),
    /// Trees spanning the subset, any root.
    Free,
    /// Subset tree plus exactly one arc leaving the subset from its root.
    Escape,
    /// Escape trees whose leaving arc lands in the given target set.
    Cross(Vec<usize>),
}

/// A computed minimum with its subset, kind, value and canonical witness.
///
/// `value` is infinite exactly when the candidate family is empty, and the
/// witness is present exactly when the value is finite. A witness spans the
/// subset (rooted/free) or the subset plus one external vertex (escape/cross),
/// and its weight equals `value`.
#[derive(Debug, Clone)]
pub struct TreeMinimum {
    pub subset: Vec<usize>,
    pub kind: TreeKind,
    pub value: ExtReal,
    pub witness: Option<Vec<(usize, usize)>>,
}

/// A free minimum together with every root attaining it (within tolerance).
#[derive(Debug, Clone)]
pub struct FreeMinimum {
    pub minimum: TreeMinimum,
    pub roots: Vec<usize>,
}

#[derive(Clone, Copy)]
struct CArc {
    tail: u32,
    head: u32,
    weight: f64,
}

/// Minimum spanning in-arborescence value over dense vertices `0..n` rooted at
/// `root`: every other vertex gets exactly one outgoing arc, no cycles.
/// `None` when no arborescence exists.
fn in_arborescence_value(n: usize, root: usize, arcs: &[CArc]) -> Option<f64> {
    if n <= 1 {
        return Some(0.0);
    }
    // Cheapest outgoing arc per non-root vertex.
    let mut best: Vec<Option<usize>> = vec![None; n];
    for (i, a) in arcs.iter().enumerate() {
        let t = a.tail as usize;
        if t == root {
            continue;
        }
        match best[t] {
            None => best[t] = Some(i),
            Some(j) => {
                if a.weight < arcs[j].weight {
                    best[t] = Some(i)
                }
            }
        }
    }
    for v in 0..n {
        if v != root && best[v].is_none() {
            return None;
        }
    }
    // Look for a cycle among the selected arcs.
    let mut color = vec![0u8; n]; // 0 fresh, 1 on path, 2 settled
    color[root] = 2;
    let mut cycle: Vec<usize> = Vec::new();
    'outer: for start in 0..n {
        if color[start] != 0 {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        loop {
            match color[v] {
                1 => {
                    let pos = path.iter().position(|&u| u == v).unwrap();
                    cycle = path[pos..].to_vec();
                    break 'outer;
                }
                2 => {
                    for &u in &path {
                        color[u] = 2;
                    }
                    break;
                }
                _ => {
                    color[v] = 1;
                    path.push(v);
                    v = arcs[best[v].unwrap()].head as usize;
                }
            }
        }
    }
    if cycle.is_empty() {
        // The greedy selection is itself the optimum.
        return Some(
            (0..n)
                .filter(|&v| v != root)
                .map(|v| arcs[best[v].unwrap()].weight)
                .sum(),
        );
    }
    // Contract the cycle; arcs leaving it are charged the difference against
    // the cycle arc they would replace.
    let mut in_cycle = vec![false; n];
    for &v in &cycle {
        in_cycle[v] = true;
    }
    let mut remap = vec![0u32; n];
    let mut next = 0u32;
    let cycle_id = {
        let mut id = 0u32;
        let mut assigned = false;
        for v in 0..n {
            if in_cycle[v] {
                if !assigned {
                    id = next;
                    next += 1;
                    assigned = true;
                }
                remap[v] = id;
            } else {
                remap[v] = next;
                next += 1;
            }
        }
        id
    };
    let _ = cycle_id;
    let cycle_cost: f64 = cycle.iter().map(|&v| arcs[best[v].unwrap()].weight).sum();
    let mut contracted = Vec::with_capacity(arcs.len());
    for a in arcs {
        let t = a.tail as usize;
        let h = a.head as usize;
        if remap[t] == remap[h] {
            continue;
        }
        let weight = if in_cycle[t] {
            a.weight - arcs[best[t].unwrap()].weight
        } else {
            a.weight
        };
        contracted.push(CArc { tail: remap[t], head: remap[h], weight });
    }
    let value = in_arborescence_value(next as usize, remap[root] as usize, &contracted)?;
    Some(value + cycle_cost)
}

/// Exact constrained rooted value: minimum over spanning in-trees of the
/// induced subgraph rooted at `root` that contain every `forced` arc and avoid
/// every `excluded` arc. Forcing works by starving the tail of alternatives.
fn rooted_value_constrained(
    g: &WeightedDigraph,
    members: &[usize],
    inside: &[bool],
    root: usize,
    forced: &[(usize, usize)],
    excluded: &[(usize, usize)],
) -> ExtReal {
    for (i, &(t, h)) in forced.iter().enumerate() {
        if t == root
            || !inside[t]
            || !inside[h]
            || excluded.contains(&(t, h))
            || g.arc_weight(t, h).is_none()
            || forced[..i].iter().any(|&(t2, _)| t2 == t)
        {
            return ExtReal::INFINITY;
        }
    }
    let mut pos = vec![u32::MAX; g.vertex_count()];
    for (i, &v) in members.iter().enumerate() {
        pos[v] = i as u32;
    }
    let mut arcs = Vec::new();
    for &v in members {
        let forced_head = forced.iter().find(|&&(t, _)| t == v).map(|&(_, h)| h);
        for a in g.out_arcs(v) {
            if !inside[a.head] || excluded.contains(&(a.tail, a.head)) {
                continue;
            }
            if let Some(h) = forced_head {
                if a.head != h {
                    continue;
                }
            }
            arcs.push(CArc { tail: pos[a.tail], head: pos[a.head], weight: a.weight });
        }
    }
    match in_arborescence_value(members.len(), pos[root] as usize, &arcs) {
        Some(v) => ExtReal::finite(v),
        None => ExtReal::INFINITY,
    }
}

/// Constrained value over escape/cross trees: a rooted tree on the subset plus
/// one arc from its root into `target`.
fn leaving_value_constrained(
    g: &WeightedDigraph,
    members: &[usize],
    inside: &[bool],
    target: &[bool],
    forced: &[(usize, usize)],
    excluded: &[(usize, usize)],
) -> ExtReal {
    let mut internal: Vec<(usize, usize)> = Vec::new();
    let mut crossing: Option<(usize, usize)> = None;
    for &(t, h) in forced {
        if !inside[t] {
            return ExtReal::INFINITY;
        }
        if inside[h] {
            internal.push((t, h));
        } else if target[h] {
            if crossing.is_some() {
                return ExtReal::INFINITY;
            }
            crossing = Some((t, h));
        } else {
            return ExtReal::INFINITY;
        }
    }
    let min_crossing_from = |q: usize| -> ExtReal {
        let mut best = ExtReal::INFINITY;
        for a in g.out_arcs(q) {
            if target[a.head] && !excluded.contains(&(a.tail, a.head)) {
                best = best.min(ExtReal::finite(a.weight));
            }
        }
        best
    };
    match crossing {
        Some((x, y)) => {
            if excluded.contains(&(x, y)) || g.arc_weight(x, y).is_none() {
                return ExtReal::INFINITY;
            }
            let w = g.arc_weight(x, y).unwrap();
            rooted_value_constrained(g, members, inside, x, &internal, excluded) + w
        }
        None => {
            let mut best = ExtReal::INFINITY;
            for &q in members {
                if internal.iter().any(|&(t, _)| t == q) {
                    continue;
                }
                let out = min_crossing_from(q);
                if out.is_infinite() {
                    continue;
                }
                let rooted = rooted_value_constrained(g, members, inside, q, &internal, excluded);
                best = best.min(rooted + out);
            }
            best
        }
    }
}

/// Greedy lexicographic selection of the canonical witness: scan candidates in
/// ascending order, keep an arc whenever some minimal member still contains
/// everything kept plus it and nothing dropped. The value closure must be an
/// exact constrained minimum, which makes the scan produce the member with the
/// lexicographically smallest sorted arc list.
fn lex_canonical(
    candidates: &[(usize, usize)],
    target_len: usize,
    minimum: f64,
    tol: f64,
    one_per_tail: bool,
    mut value: impl FnMut(&[(usize, usize)], &[(usize, usize)]) -> ExtReal,
) -> Vec<(usize, usize)> {
    let mut chosen: Vec<(usize, usize)> = Vec::new();
    let mut dropped: Vec<(usize, usize)> = Vec::new();
    for &arc in candidates {
        if chosen.len() == target_len {
            break;
        }
        if one_per_tail && chosen.iter().any(|c| c.0 == arc.0) {
            continue;
        }
        chosen.push(arc);
        let feasible = match value(&chosen, &dropped).value() {
            Some(v) => v <= minimum + tol,
            None => false,
        };
        if !feasible {
            chosen.pop();
            dropped.push(arc);
        }
    }
    debug_assert_eq!(chosen.len(), target_len, "witness selection fell short");
    chosen
}

fn sorted_members(n: usize, subset: &[usize]) -> Result<(Vec<usize>, Vec<bool>)> {
    let inside = mark_subset(n, subset)?;
    let members: Vec<usize> = (0..n).filter(|&v| inside[v]).collect();
    Ok((members, inside))
}

/// Lex-sorted arcs with tail inside the subset and head satisfying `keep_head`.
fn candidate_arcs(
    g: &WeightedDigraph,
    inside: &[bool],
    keep_head: impl Fn(usize) -> bool,
) -> Vec<(usize, usize)> {
    g.arcs()
        .iter()
        .filter(|a| inside[a.tail] && keep_head(a.head))
        .map(|a| (a.tail, a.head))
        .collect()
}

/// Minimum entering tree spanning `subset` rooted at `root`.
pub fn min_rooted_in_tree(
    g: &WeightedDigraph,
    subset: &[usize],
    root: usize,
    tol: f64,
) -> Result<TreeMinimum> {
    let (members, inside) = sorted_members(g.vertex_count(), subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    if root >= inside.len() || !inside[root] {
        return Err(Error::RootOutsideSubset(root));
    }
    let value = rooted_value_constrained(g, &members, &inside, root, &[], &[]);
    let witness = value.value().map(|min| {
        let candidates: Vec<(usize, usize)> = candidate_arcs(g, &inside, |h| inside[h])
            .into_iter()
            .filter(|&(t, _)| t != root)
            .collect();
        lex_canonical(&candidates, members.len() - 1, min, tol, true, |f, x| {
            rooted_value_constrained(g, &members, &inside, root, f, x)
        })
    });
    Ok(TreeMinimum { subset: members, kind: TreeKind::Rooted(root), value, witness })
}

/// Free minimum over all roots, with the set of minimizing roots.
pub fn min_in_tree(g: &WeightedDigraph, subset: &[usize], tol: f64) -> Result<FreeMinimum> {
    let (members, inside) = sorted_members(g.vertex_count(), subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    let per_root: Vec<ExtReal> = members
        .iter()
        .map(|&q| rooted_value_constrained(g, &members, &inside, q, &[], &[]))
        .collect();
    let value = per_root
        .iter()
        .copied()
        .fold(ExtReal::INFINITY, ExtReal::min);
    let roots = match value.value() {
        None => Vec::new(),
        Some(min) => members
            .iter()
            .zip(&per_root)
            .filter(|(_, v)| v.value().is_some_and(|x| x <= min + tol))
            .map(|(&q, _)| q)
            .collect(),
    };
    let witness = value.value().map(|min| {
        let candidates = candidate_arcs(g, &inside, |h| inside[h]);
        lex_canonical(&candidates, members.len() - 1, min, tol, true, |f, x| {
            members
                .iter()
                .filter(|&&q| !f.iter().any(|&(t, _)| t == q))
                .map(|&q| rooted_value_constrained(g, &members, &inside, q, f, x))
                .fold(ExtReal::INFINITY, ExtReal::min)
        })
    });
    Ok(FreeMinimum {
        minimum: TreeMinimum { subset: members, kind: TreeKind::Free, value, witness },
        roots,
    })
}

fn leaving_minimum(
    g: &WeightedDigraph,
    subset: &[usize],
    target_set: &[usize],
    kind: TreeKind,
    tol: f64,
) -> Result<TreeMinimum> {
    let n = g.vertex_count();
    let (members, inside) = sorted_members(n, subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    let target = mark_subset(n, target_set)?;
    if let Some(v) = (0..n).find(|&v| inside[v] && target[v]) {
        return Err(Error::BlocksOverlap(v));
    }
    let value = leaving_value_constrained(g, &members, &inside, &target, &[], &[]);
    let witness = value.value().map(|min| {
        let candidates = candidate_arcs(g, &inside, |h| inside[h] || target[h]);
        lex_canonical(&candidates, members.len(), min, tol, true, |f, x| {
            leaving_value_constrained(g, &members, &inside, &target, f, x)
        })
    });
    Ok(TreeMinimum { subset: members, kind, value, witness })
}

/// Minimum subset tree extended by one arc leaving the subset (from its root).
pub fn min_escape_tree(g: &WeightedDigraph, subset: &[usize], tol: f64) -> Result<TreeMinimum> {
    let inside = mark_subset(g.vertex_count(), subset)?;
    let outside: Vec<usize> = (0..g.vertex_count()).filter(|&v| !inside[v]).collect();
    if outside.is_empty() {
        return Err(Error::SubsetNotProper);
    }
    leaving_minimum(g, subset, &outside, TreeKind::Escape, tol)
}

/// Minimum escape tree whose leaving arc lands in `target`.
pub fn min_cross_tree(
    g: &WeightedDigraph,
    subset: &[usize],
    target: &[usize],
    tol: f64,
) -> Result<TreeMinimum> {
    if target.is_empty() {
        return Err(Error::EmptySubset);
    }
    leaving_minimum(g, subset, target, TreeKind::Cross(target.to_vec()), tol)
}

/// Value-only variants; same solver path, no witness construction.
pub fn rooted_value(g: &WeightedDigraph, subset: &[usize], root: usize) -> Result<ExtReal> {
    let (members, inside) = sorted_members(g.vertex_count(), subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    if root >= inside.len() || !inside[root] {
        return Err(Error::RootOutsideSubset(root));
    }
    Ok(rooted_value_constrained(g, &members, &inside, root, &[], &[]))
}

pub fn free_value(g: &WeightedDigraph, subset: &[usize]) -> Result<ExtReal> {
    let (members, inside) = sorted_members(g.vertex_count(), subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(members
        .iter()
        .map(|&q| rooted_value_constrained(g, &members, &inside, q, &[], &[]))
        .fold(ExtReal::INFINITY, ExtReal::min))
}

pub fn escape_value(g: &WeightedDigraph, subset: &[usize]) -> Result<ExtReal> {
    let n = g.vertex_count();
    let (members, inside) = sorted_members(n, subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    if members.len() == n {
        return Err(Error::SubsetNotProper);
    }
    let target: Vec<bool> = inside.iter().map(|&b| !b).collect();
    Ok(leaving_value_constrained(g, &members, &inside, &target, &[], &[]))
}

pub fn cross_value(g: &WeightedDigraph, subset: &[usize], target: &[usize]) -> Result<ExtReal> {
    let n = g.vertex_count();
    let (members, inside) = sorted_members(n, subset)?;
    if members.is_empty() || target.is_empty() {
        return Err(Error::EmptySubset);
    }
    let target_mark = mark_subset(n, target)?;
    if let Some(v) = (0..n).find(|&v| inside[v] && target_mark[v]) {
        return Err(Error::BlocksOverlap(v));
    }
    Ok(leaving_value_constrained(g, &members, &inside, &target_mark, &[], &[]))
}

/// Lexicographically smallest member of the full family of subset-spanning
/// trees, minimality of weight not required. `None` when the family is empty.
pub fn any_in_tree(g: &WeightedDigraph, subset: &[usize]) -> Result<Option<Vec<(usize, usize)>>> {
    let (members, inside) = sorted_members(g.vertex_count(), subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    let free = |f: &[(usize, usize)], x: &[(usize, usize)]| {
        members
            .iter()
            .filter(|&&q| !f.iter().any(|&(t, _)| t == q))
            .map(|&q| rooted_value_constrained(g, &members, &inside, q, f, x))
            .fold(ExtReal::INFINITY, ExtReal::min)
    };
    if free(&[], &[]).is_infinite() {
        return Ok(None);
    }
    let candidates = candidate_arcs(g, &inside, |h| inside[h]);
    Ok(Some(lex_canonical(&candidates, members.len() - 1, f64::INFINITY, 0.0, true, free)))
}

/// Lexicographically smallest cross tree into `target`, any weight.
pub fn any_cross_tree(
    g: &WeightedDigraph,
    subset: &[usize],
    target: &[usize],
) -> Result<Option<Vec<(usize, usize)>>> {
    let n = g.vertex_count();
    let (members, inside) = sorted_members(n, subset)?;
    if members.is_empty() || target.is_empty() {
        return Err(Error::EmptySubset);
    }
    let target_mark = mark_subset(n, target)?;
    if let Some(v) = (0..n).find(|&v| inside[v] && target_mark[v]) {
        return Err(Error::BlocksOverlap(v));
    }
    let value = |f: &[(usize, usize)], x: &[(usize, usize)]| {
        leaving_value_constrained(g, &members, &inside, &target_mark, f, x)
    };
    if value(&[], &[]).is_infinite() {
        return Ok(None);
    }
    let candidates = candidate_arcs(g, &inside, |h| inside[h] || target_mark[h]);
    Ok(Some(lex_canonical(&candidates, members.len(), f64::INFINITY, 0.0, true, value)))
}

/// Does `arc` occur in at least one minimal tree of the given kind? Decided by
/// forcing the arc (deleting its tail's alternatives) and comparing the forced
/// minimum with the unconstrained one.
pub fn arc_in_some_min_tree(
    g: &WeightedDigraph,
    subset: &[usize],
    kind: &TreeKind,
    arc: (usize, usize),
    tol: f64,
) -> Result<bool> {
    let n = g.vertex_count();
    let (members, inside) = sorted_members(n, subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    if g.arc_weight(arc.0, arc.1).is_none() {
        return Err(Error::ArcNotInHost(arc.0, arc.1));
    }
    if !inside[arc.0] {
        return Err(Error::ArcOutsideProblem(arc.0, arc.1));
    }
    let forced = [arc];
    let (plain, forced_min) = match kind {
        TreeKind::Rooted(q) => {
            if *q >= n || !inside[*q] {
                return Err(Error::RootOutsideSubset(*q));
            }
            (
                rooted_value_constrained(g, &members, &inside, *q, &[], &[]),
                rooted_value_constrained(g, &members, &inside, *q, &forced, &[]),
            )
        }
        TreeKind::Free => {
            let free = |f: &[(usize, usize)]| {
                members
                    .iter()
                    .filter(|&&q| !f.iter().any(|&(t, _)| t == q))
                    .map(|&q| rooted_value_constrained(g, &members, &inside, q, f, &[]))
                    .fold(ExtReal::INFINITY, ExtReal::min)
            };
            (free(&[]), free(&forced))
        }
        TreeKind::Escape => {
            if members.len() == n {
                return Err(Error::SubsetNotProper);
            }
            let target: Vec<bool> = inside.iter().map(|&b| !b).collect();
            (
                leaving_value_constrained(g, &members, &inside, &target, &[], &[]),
                leaving_value_constrained(g, &members, &inside, &target, &forced, &[]),
            )
        }
        TreeKind::Cross(target_set) => {
            let target = mark_subset(n, target_set)?;
            if let Some(v) = (0..n).find(|&v| inside[v] && target[v]) {
                return Err(Error::BlocksOverlap(v));
            }
            (
                leaving_value_constrained(g, &members, &inside, &target, &[], &[]),
                leaving_value_constrained(g, &members, &inside, &target, &forced, &[]),
            )
        }
    };
    match (plain.value(), forced_min.value()) {
        (Some(min), Some(with_arc)) => Ok(with_arc <= min + tol),
        _ => Ok(false),
    }
}

/// Rooted minima of every subset of a small digraph, bitmask-indexed.
/// Filled sequentially; immutable and freely shareable afterwards.
pub struct RootedTable {
    n: usize,
    values: Vec<f64>,
}

impl RootedTable {
    pub fn fill(g: &WeightedDigraph, max_vertices: usize) -> Result<RootedTable> {
        let n = g.vertex_count();
        if n > max_vertices || n > 25 {
            return Err(Error::BudgetExceeded(format!(
                "subset table over {n} vertices (limit {max_vertices})"
            )));
        }
        let mut values = vec![f64::INFINITY; (1usize << n) * n];
        let mut members = Vec::with_capacity(n);
        for mask in 1u32..(1 << n) {
            members.clear();
            members.extend((0..n).filter(|&v| mask >> v & 1 == 1));
            let inside: Vec<bool> = (0..n).map(|v| mask >> v & 1 == 1).collect();
            for &q in &members {
                let v = rooted_value_constrained(g, &members, &inside, q, &[], &[]);
                values[mask as usize * n + q] = v.raw();
            }
        }
        Ok(RootedTable { n, values })
    }

    fn get(&self, mask: u32, root: usize) -> ExtReal {
        let raw = self.values[mask as usize * self.n + root];
        if raw.is_finite() {
            ExtReal::finite(raw)
        } else {
            ExtReal::INFINITY
        }
    }

    pub fn rooted(&self, subset_mask: u32, root: usize) -> ExtReal {
        debug_assert!(subset_mask >> root & 1 == 1);
        self.get(subset_mask, root)
    }

    pub fn free(&self, subset_mask: u32) -> ExtReal {
        (0..self.n)
            .filter(|&q| subset_mask >> q & 1 == 1)
            .map(|q| self.get(subset_mask, q))
            .fold(ExtReal::INFINITY, ExtReal::min)
    }

    /// Escape minimum assembled from the table and the cheapest arc from each
    /// candidate root into `target_mask`.
    pub fn leaving(&self, g: &WeightedDigraph, subset_mask: u32, target_mask: u32) -> ExtReal {
        debug_assert_eq!(subset_mask & target_mask, 0);
        let mut best = ExtReal::INFINITY;
        for q in (0..self.n).filter(|&q| subset_mask >> q & 1 == 1) {
            let mut out = ExtReal::INFINITY;
            for a in g.out_arcs(q) {
                if target_mask >> a.head & 1 == 1 {
                    out = out.min(ExtReal::finite(a.weight));
                }
            }
            best = best.min(self.get(subset_mask, q) + out.raw());
        }
        best
    }

    pub fn escape(&self, g: &WeightedDigraph, subset_mask: u32) -> ExtReal {
        let full = (1u32 << self.n) - 1;
        self.leaving(g, subset_mask, full & !subset_mask)
    }
}

/// Minimum spanning tree of the subgraph induced by `subset` of an undirected
/// graph; infinite when that subgraph is disconnected.
pub fn min_spanning_tree(g: &WeightedGraph, subset: &[usize], tol: f64) -> Result<TreeMinimum> {
    let (members, inside) = sorted_members_undirected(g, subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    let value = mst_value_constrained(g, &inside, members.len(), &[], &[]);
    let witness = value.value().map(|min| {
        let candidates: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|e| inside[e.a] && inside[e.b])
            .map(|e| (e.a, e.b))
            .collect();
        lex_canonical(&candidates, members.len() - 1, min, tol, false, |f, x| {
            mst_value_constrained(g, &inside, members.len(), f, x)
        })
    });
    Ok(TreeMinimum { subset: members, kind: TreeKind::Free, value, witness })
}

/// Minimum tree spanning `subset` plus one vertex of `target`: the spanning
/// tree minimum plus the cheapest crossing edge.
pub fn min_cross_tree_undirected(
    g: &WeightedGraph,
    subset: &[usize],
    target: &[usize],
    tol: f64,
) -> Result<TreeMinimum> {
    let n = g.vertex_count();
    let (members, inside) = sorted_members_undirected(g, subset)?;
    if members.is_empty() || target.is_empty() {
        return Err(Error::EmptySubset);
    }
    let target_mark = mark_subset(n, target)?;
    if let Some(v) = (0..n).find(|&v| inside[v] && target_mark[v]) {
        return Err(Error::BlocksOverlap(v));
    }
    let base = mst_value_constrained(g, &inside, members.len(), &[], &[]);
    let crossing = min_crossing_edge(g, &inside, &target_mark);
    let value = match (base.value(), crossing) {
        (Some(b), Some((_, _, w))) => ExtReal::finite(b + w),
        _ => ExtReal::INFINITY,
    };
    let witness = value.value().map(|_| {
        let min = base.value().unwrap();
        let candidates: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .filter(|e| inside[e.a] && inside[e.b])
            .map(|e| (e.a, e.b))
            .collect();
        let mut tree =
            lex_canonical(&candidates, members.len() - 1, min, tol, false, |f, x| {
                mst_value_constrained(g, &inside, members.len(), f, x)
            });
        let (a, b, _) = crossing.unwrap();
        tree.push((a, b));
        tree.sort_unstable();
        tree
    });
    Ok(TreeMinimum {
        subset: members,
        kind: TreeKind::Cross(target.to_vec()),
        value,
        witness,
    })
}

pub fn spanning_tree_value(g: &WeightedGraph, subset: &[usize]) -> Result<ExtReal> {
    let (members, inside) = sorted_members_undirected(g, subset)?;
    if members.is_empty() {
        return Err(Error::EmptySubset);
    }
    Ok(mst_value_constrained(g, &inside, members.len(), &[], &[]))
}

pub fn cross_value_undirected(
    g: &WeightedGraph,
    subset: &[usize],
    target: &[usize],
) -> Result<ExtReal> {
    let n = g.vertex_count();
    let (members, inside) = sorted_members_undirected(g, subset)?;
    if members.is_empty() || target.is_empty() {
        return Err(Error::EmptySubset);
    }
    let target_mark = mark_subset(n, target)?;
    if let Some(v) = (0..n).find(|&v| inside[v] && target_mark[v]) {
        return Err(Error::BlocksOverlap(v));
    }
    let base = mst_value_constrained(g, &inside, members.len(), &[], &[]);
    match (base.value(), min_crossing_edge(g, &inside, &target_mark)) {
        (Some(b), Some((_, _, w))) => Ok(ExtReal::finite(b + w)),
        _ => Ok(ExtReal::INFINITY),
    }
}

/// Cheapest edge between the subset and the target, smallest endpoints on ties.
pub(crate) fn min_crossing_edge(
    g: &WeightedGraph,
    inside: &[bool],
    target: &[bool],
) -> Option<(usize, usize, f64)> {
    let mut best: Option<(usize, usize, f64)> = None;
    for e in g.edges() {
        let crosses =
            (inside[e.a] && target[e.b]) || (inside[e.b] && target[e.a]);
        if !crosses {
            continue;
        }
        let better = match best {
            None => true,
            Some((_, _, w)) => e.weight < w,
        };
        if better {
            best = Some((e.a, e.b, e.weight));
        }
    }
    best
}

fn sorted_members_undirected(
    g: &WeightedGraph,
    subset: &[usize],
) -> Result<(Vec<usize>, Vec<bool>)> {
    let inside = mark_subset(g.vertex_count(), subset)?;
    let members: Vec<usize> = (0..g.vertex_count()).filter(|&v| inside[v]).collect();
    Ok((members, inside))
}

/// Kruskal over the induced subgraph with forced and excluded edges; infinite
/// when the forced edges close a cycle or the subgraph stays disconnected.
fn mst_value_constrained(
    g: &WeightedGraph,
    inside: &[bool],
    member_count: usize,
    forced: &[(usize, usize)],
    excluded: &[(usize, usize)],
) -> ExtReal {
    let n = g.vertex_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, v: usize) -> usize {
        let mut v = v;
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    let mut total = 0.0;
    let mut used = 0usize;
    let norm = |(u, v): (usize, usize)| (u.min(v), u.max(v));
    for &f in forced {
        let (a, b) = norm(f);
        if !inside[a] || !inside[b] || excluded.iter().any(|&x| norm(x) == (a, b)) {
            return ExtReal::INFINITY;
        }
        let w = match g.edge_weight(a, b) {
            Some(w) => w,
            None => return ExtReal::INFINITY,
        };
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return ExtReal::INFINITY; // forced edges close a cycle
        }
        parent[ra] = rb;
        total += w;
        used += 1;
    }
    let mut order: Vec<usize> = (0..g.edges().len())
        .filter(|&i| {
            let e = &g.edges()[i];
            inside[e.a] && inside[e.b] && !excluded.iter().any(|&x| norm(x) == (e.a, e.b))
        })
        .collect();
    order.sort_by(|&i, &j| {
        let (x, y) = (&g.edges()[i], &g.edges()[j]);
        x.weight.partial_cmp(&y.weight).unwrap().then(x.a.cmp(&y.a)).then(x.b.cmp(&y.b))
    });
    for i in order {
        if used + 1 == member_count {
            break;
        }
        let e = &g.edges()[i];
        let (ra, rb) = (find(&mut parent, e.a), find(&mut parent, e.b));
        if ra != rb {
            parent[ra] = rb;
            total += e.weight;
            used += 1;
        }
    }
    if used + 1 == member_count || member_count == 1 {
        ExtReal::finite(total)
    } else {
        ExtReal::INFINITY
    }
}
