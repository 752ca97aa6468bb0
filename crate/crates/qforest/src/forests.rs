//! Spanning-forest families, representatives, principals and atoms.
//!
//! Everything here is desk-scale by design: families of spanning entering
//! forests are materialized by exhaustive enumeration under an explicit
//! budget, and the structural theorems relating vertex-level forests to
//! quotient-level forests are verified instance by instance.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::ext::ExtReal;
use crate::forest::InForest;
use crate::graph::WeightedDigraph;
use crate::minima;
use crate::oracle::{self, EnumerationBudget};
use crate::partition::Partition;
use crate::split::{self, SplitDigraph};

/// A set of spanning entering forests with a fixed component count.
///
/// `min_weight` is the minimum over the members listed (infinite when there
/// are none); which members are listed depends on the producing operation.
#[derive(Debug, Clone)]
pub struct ForestFamily {
    pub component_count: usize,
    pub forests: Vec<InForest>,
    pub min_weight: ExtReal,
}

/// Atoms of the set algebra generated by the tree vertex sets of all minimal
/// `k`-forests. An atom is labeled when it contains the root of at least one
/// minimal forest.
#[derive(Debug, Clone)]
pub struct AtomFamily {
    pub k: usize,
    pub atoms: Partition,
    pub labeled: Vec<bool>,
}

/// A vertex-level forest paired with the block-level forest it projects to.
#[derive(Debug, Clone)]
pub struct PrincipalPair {
    pub block_forest: InForest,
    pub forest: InForest,
    pub is_principal: bool,
    pub is_minimal_principal: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrincipalMode {
    /// Lexicographically smallest trees, minimality not required.
    Any,
    /// Canonical minimal trees; the result satisfies the minimality equalities.
    Minimal,
}

/// Visits every spanning entering forest of `g`, reporting the successor map,
/// total weight and component count.
fn for_each_spanning_forest(
    g: &WeightedDigraph,
    budget: &EnumerationBudget,
    mut visit: impl FnMut(&[Option<usize>], f64, usize),
) -> Result<()> {
    let n = g.vertex_count();
    budget.check_vertices(n)?;
    let mut combos = 1usize;
    for v in 0..n {
        combos = combos.saturating_mul(g.out_arcs(v).count() + 1);
    }
    budget.check_candidates(combos)?;
    let mut succ: Vec<Option<usize>> = vec![None; n];

    fn closes_cycle(succ: &[Option<usize>], tail: usize, head: usize) -> bool {
        let mut v = head;
        loop {
            if v == tail {
                return true;
            }
            match succ[v] {
                Some(next) => v = next,
                None => return false,
            }
        }
    }

    fn recurse(
        g: &WeightedDigraph,
        v: usize,
        succ: &mut Vec<Option<usize>>,
        weight: f64,
        roots: usize,
        visit: &mut impl FnMut(&[Option<usize>], f64, usize),
    ) {
        if v == g.vertex_count() {
            visit(succ, weight, roots);
            return;
        }
        recurse(g, v + 1, succ, weight, roots, visit);
        let arcs: Vec<(usize, f64)> = g.out_arcs(v).map(|a| (a.head, a.weight)).collect();
        for (head, w) in arcs {
            if closes_cycle(succ, v, head) {
                continue;
            }
            succ[v] = Some(head);
            recurse(g, v + 1, succ, weight + w, roots - 1, visit);
            succ[v] = None;
        }
    }

    recurse(g, 0, &mut succ, 0.0, n, &mut visit);
    Ok(())
}

/// Every spanning entering forest with exactly `k` trees.
pub fn enumerate_spanning_in_forests(
    g: &WeightedDigraph,
    k: usize,
    budget: &EnumerationBudget,
) -> Result<ForestFamily> {
    let mut forests = Vec::new();
    let mut min = f64::INFINITY;
    for_each_spanning_forest(g, budget, |succ, weight, roots| {
        if roots == k {
            min = min.min(weight);
            forests.push(succ.to_vec());
        }
    })?;
    Ok(ForestFamily {
        component_count: k,
        forests: forests
            .into_iter()
            .map(|s| InForest::from_succ(s).expect("enumerated forests are acyclic"))
            .collect(),
        min_weight: if min.is_finite() { ExtReal::finite(min) } else { ExtReal::INFINITY },
    })
}

/// Minimum weight over spanning `k`-forests; infinite when none exist.
pub fn min_forest_weight(
    g: &WeightedDigraph,
    k: usize,
    budget: &EnumerationBudget,
) -> Result<ExtReal> {
    let mut min = f64::INFINITY;
    for_each_spanning_forest(g, budget, |_, weight, roots| {
        if roots == k {
            min = min.min(weight);
        }
    })?;
    Ok(if min.is_finite() { ExtReal::finite(min) } else { ExtReal::INFINITY })
}

/// Minimum `k`-forest weights for every `k` from 0 to the vertex count, in one
/// enumeration pass.
pub fn forest_weight_profile(
    g: &WeightedDigraph,
    budget: &EnumerationBudget,
) -> Result<Vec<ExtReal>> {
    let n = g.vertex_count();
    let mut min = vec![f64::INFINITY; n + 1];
    for_each_spanning_forest(g, budget, |_, weight, roots| {
        min[roots] = min[roots].min(weight);
    })?;
    Ok(min
        .into_iter()
        .map(|m| if m.is_finite() { ExtReal::finite(m) } else { ExtReal::INFINITY })
        .collect())
}

/// Per-`k` verdicts of the convexity chain: the weight saved by allowing one
/// more component never grows as components are added.
#[derive(Debug, Clone)]
pub struct ConvexityReport {
    /// Minimum `k`-forest weight, indexed by `k` from 0 to the vertex count.
    pub profile: Vec<ExtReal>,
    /// Verdict for each `k` from 1 to the vertex count minus one.
    pub verdicts: Vec<bool>,
    pub has_spanning_tree: bool,
    pub all_hold: bool,
}

pub fn check_convexity(g: &WeightedDigraph, budget: &EnumerationBudget) -> Result<ConvexityReport> {
    let profile = forest_weight_profile(g, budget)?;
    let n = g.vertex_count();
    let tol = 1e-9;
    let mut verdicts = Vec::new();
    for k in 1..n {
        let holds = match profile[k - 1].value() {
            // an empty family on the left dominates everything
            None => true,
            Some(prev) => {
                let cur = profile[k].value().expect("nonempty above implies nonempty below");
                let next = profile[k + 1].value().expect("nonempty above implies nonempty below");
                prev + next >= 2.0 * cur - tol
            }
        };
        verdicts.push(holds);
    }
    let all_hold = verdicts.iter().all(|&v| v);
    Ok(ConvexityReport {
        has_spanning_tree: profile.get(1).is_some_and(|p| p.is_finite()),
        profile,
        verdicts,
        all_hold,
    })
}

/// All minimal `k`-forests (ties within `tol` of the minimum).
pub fn minimal_forests(
    g: &WeightedDigraph,
    k: usize,
    budget: &EnumerationBudget,
    tol: f64,
) -> Result<ForestFamily> {
    collect_minimal(g, k, budget, tol, |_| true)
}

/// The divisible `k`-forests of minimum weight among the divisible ones —
/// which may be heavier than, and disjoint from, the minimal `k`-forests.
pub fn minimal_divisible_forests(
    g: &WeightedDigraph,
    partition: &Partition,
    k: usize,
    budget: &EnumerationBudget,
    tol: f64,
) -> Result<ForestFamily> {
    collect_minimal(g, k, budget, tol, |succ| divisible_succ(succ, partition))
}

fn divisible_succ(succ: &[Option<usize>], partition: &Partition) -> bool {
    partition.blocks().iter().all(|block| {
        block
            .iter()
            .filter(|&&v| match succ[v] {
                None => true,
                Some(h) => !block.contains(&h),
            })
            .count()
            == 1
    })
}

fn collect_minimal(
    g: &WeightedDigraph,
    k: usize,
    budget: &EnumerationBudget,
    tol: f64,
    keep: impl Fn(&[Option<usize>]) -> bool,
) -> Result<ForestFamily> {
    let mut min = f64::INFINITY;
    let mut kept: Vec<(Vec<Option<usize>>, f64)> = Vec::new();
    for_each_spanning_forest(g, budget, |succ, weight, roots| {
        if roots != k || weight > min + tol || !keep(succ) {
            return;
        }
        if weight < min {
            min = weight;
            kept.retain(|(_, w)| *w <= min + tol);
        }
        kept.push((succ.to_vec(), weight));
    })?;
    Ok(ForestFamily {
        component_count: k,
        forests: kept
            .into_iter()
            .map(|(s, _)| InForest::from_succ(s).expect("enumerated forests are acyclic"))
            .collect(),
        min_weight: if min.is_finite() { ExtReal::finite(min) } else { ExtReal::INFINITY },
    })
}

/// Block-level successor map of a divisible forest, plus each block's local
/// root (the one member whose arc leaves the block, or a global root).
pub(crate) fn divisible_block_structure(
    forest: &InForest,
    partition: &Partition,
) -> Result<(Vec<Option<usize>>, Vec<usize>)> {
    let k = partition.block_count();
    let mut block_succ = vec![None; k];
    let mut local_roots = vec![usize::MAX; k];
    for (b, block) in partition.blocks().iter().enumerate() {
        let mut found = None;
        for &v in block {
            let exits = match forest.successor(v) {
                None => true,
                Some(h) => partition.block_of(h) != b,
            };
            if exits {
                if found.is_some() {
                    return Err(Error::ForestNotDivisible(b));
                }
                found = Some(v);
                if let Some(h) = forest.successor(v) {
                    block_succ[b] = Some(partition.block_of(h));
                }
            }
        }
        local_roots[b] = found.ok_or(Error::ForestNotDivisible(b))?;
    }
    Ok((block_succ, local_roots))
}

/// The unique quotient-level forest whose arcs match the forest's own
/// splitting; weights live in the quotient, not here.
pub fn representative(split: &SplitDigraph, forest: &InForest) -> Result<InForest> {
    let (block_succ, _) = divisible_block_structure(forest, split.partition())?;
    for (b, s) in block_succ.iter().enumerate() {
        if let Some(y) = s {
            if split.arc(b, *y).is_none() {
                return Err(Error::QuotientArcUnrealizable(b, *y));
            }
        }
    }
    InForest::from_succ(block_succ)
}

/// Builds a vertex-level forest projecting onto `block_forest`: one cross tree
/// per block arc, one spanning tree per root block.
pub fn principal(
    g: &WeightedDigraph,
    partition: &Partition,
    block_forest: &InForest,
    mode: PrincipalMode,
    tol: f64,
) -> Result<PrincipalPair> {
    if block_forest.vertex_count() != partition.block_count() {
        return Err(Error::VertexOutOfRange(
            block_forest.vertex_count(),
            partition.block_count(),
        ));
    }
    let mut arcs: Vec<(usize, usize)> = Vec::new();
    for b in 0..partition.block_count() {
        let block = partition.block(b);
        let tree = match block_forest.successor(b) {
            Some(y) => {
                let target = partition.block(y);
                match mode {
                    PrincipalMode::Minimal => {
                        minima::min_cross_tree(g, block, target, tol)?.witness
                    }
                    PrincipalMode::Any => minima::any_cross_tree(g, block, target)?,
                }
                .ok_or(Error::QuotientArcUnrealizable(b, y))?
            }
            None => match mode {
                PrincipalMode::Minimal => minima::min_in_tree(g, block, tol)?.minimum.witness,
                PrincipalMode::Any => minima::any_in_tree(g, block)?,
            }
            .ok_or(Error::ForestNotDivisible(b))?,
        };
        arcs.extend(tree);
    }
    let forest = InForest::from_arcs(g.vertex_count(), &arcs)?;
    let is_principal = divisible_block_structure(&forest, partition)
        .map(|(succ, _)| succ == block_forest.successors())
        .unwrap_or(false);
    let is_minimal_principal = is_principal
        && minimal_principal_equalities(g, partition, &forest, block_forest.successors(), tol)?;
    Ok(PrincipalPair {
        block_forest: block_forest.clone(),
        forest,
        is_principal,
        is_minimal_principal,
    })
}

/// The three equalities characterizing minimal principals: root blocks pay
/// their free minimum, arc blocks pay the cross minimum, and each non-root
/// block tree is minimal for its own root.
fn minimal_principal_equalities(
    g: &WeightedDigraph,
    partition: &Partition,
    forest: &InForest,
    block_succ: &[Option<usize>],
    tol: f64,
) -> Result<bool> {
    let (_, local_roots) = divisible_block_structure(forest, partition)?;
    for (b, block) in partition.blocks().iter().enumerate() {
        let paid = forest.weight_out_in(g, block)?;
        match block_succ[b] {
            None => {
                let free = minima::free_value(g, block)?;
                if !ExtReal::finite(paid).approx_eq(free, tol) {
                    return Ok(false);
                }
            }
            Some(y) => {
                let cross = minima::cross_value(g, block, partition.block(y))?;
                if !ExtReal::finite(paid).approx_eq(cross, tol) {
                    return Ok(false);
                }
                let internal: f64 = {
                    let mut sum = 0.0;
                    for &v in block {
                        if let Some(h) = forest.successor(v) {
                            if partition.block_of(h) == b {
                                sum += g.arc_weight(v, h).ok_or(Error::ArcNotInHost(v, h))?;
                            }
                        }
                    }
                    sum
                };
                let rooted = minima::rooted_value(g, block, local_roots[b])?;
                if !ExtReal::finite(internal).approx_eq(rooted, tol) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Does `forest` have minimum weight among the principals of `block_forest`?
/// Checked through the characterizing equalities, not by enumeration.
pub fn is_minimal_principal(
    g: &WeightedDigraph,
    partition: &Partition,
    forest: &InForest,
    block_forest: &InForest,
    tol: f64,
) -> Result<bool> {
    let (block_succ, _) = divisible_block_structure(forest, partition)?;
    if block_succ != block_forest.successors() {
        return Err(Error::NotAPrincipal);
    }
    minimal_principal_equalities(g, partition, forest, &block_succ, tol)
}

/// How much the quotient arc out of a non-root block overcharges the forest's
/// own crossing arc: the block tree's rooted minimum minus its free minimum.
/// Zero exactly when the block tree is already a free minimal tree.
pub fn weight_gap(
    g: &WeightedDigraph,
    partition: &Partition,
    forest: &InForest,
    block: usize,
) -> Result<f64> {
    let (block_succ, local_roots) = divisible_block_structure(forest, partition)?;
    if block_succ[block].is_none() {
        return Err(Error::RootBlock(block));
    }
    let members = partition.block(block);
    let rooted = minima::rooted_value(g, members, local_roots[block])?;
    let free = minima::free_value(g, members)?;
    match (rooted.value(), free.value()) {
        (Some(r), Some(f)) => Ok(r - f),
        _ => Err(Error::ForestNotDivisible(block)),
    }
}

/// Outcome of one structural verification; `violations` is empty on success.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub instances_checked: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustive check that the minimality equalities characterize exactly the
/// minimum-weight principals of every quotient `k`-forest.
pub fn check_principal_minimality(
    g: &WeightedDigraph,
    partition: &Partition,
    k: usize,
    budget: &EnumerationBudget,
    tol: f64,
) -> Result<CheckReport> {
    let split = split::split_digraph(g, partition, tol)?;
    let quotient = split.as_digraph();
    let block_family = enumerate_spanning_in_forests(&quotient, k, budget)?;
    let mut checked = 0usize;
    let mut violations = Vec::new();
    for block_forest in &block_family.forests {
        let principals = oracle::enumerate_principals(g, partition, block_forest, budget)?;
        if principals.is_empty() {
            continue;
        }
        let weights: Vec<f64> = principals
            .iter()
            .map(|f| f.weight_in(g))
            .collect::<Result<_>>()?;
        let min = weights.iter().copied().fold(f64::INFINITY, f64::min);
        for (f, &w) in principals.iter().zip(&weights) {
            checked += 1;
            let minimal = w <= min + tol;
            let equalities =
                minimal_principal_equalities(g, partition, f, block_forest.successors(), tol)?;
            if minimal != equalities {
                violations.push(format!(
                    "principal of {:?} with weight {w}: minimal={minimal} but equalities={equalities}",
                    block_forest.successors()
                ));
            }
        }
    }
    Ok(CheckReport {
        name: format!("principal-minimality-equalities k={k}"),
        instances_checked: checked,
        violations,
    })
}

/// Exhaustive check of the overcharge law on minimal principals: quotient arc
/// weight minus crossing arc weight equals the rooted-minus-free gap, is never
/// negative, and vanishes exactly when the block tree is free-minimal.
pub fn check_weight_gaps(
    g: &WeightedDigraph,
    partition: &Partition,
    k: usize,
    budget: &EnumerationBudget,
    tol: f64,
) -> Result<CheckReport> {
    let split = split::split_digraph(g, partition, tol)?;
    let quotient = split.as_digraph();
    let block_family = enumerate_spanning_in_forests(&quotient, k, budget)?;
    let mut checked = 0usize;
    let mut violations = Vec::new();
    for block_forest in &block_family.forests {
        let pair = principal(g, partition, block_forest, PrincipalMode::Minimal, tol)?;
        for (b, s) in block_forest.successors().iter().enumerate() {
            let Some(_) = s else { continue };
            checked += 1;
            let (_, local_roots) = divisible_block_structure(&pair.forest, partition)?;
            let x = local_roots[b];
            let y = pair.forest.successor(x).expect("non-root block exits");
            let crossing_weight = g.arc_weight(x, y).expect("forest arc");
            let quotient_weight = split
                .arc_weight(b, partition.block_of(y))
                .expect("quotient carries the block arc");
            let gap = weight_gap(g, partition, &pair.forest, b)?;
            if (quotient_weight - crossing_weight - gap).abs() > tol {
                violations.push(format!(
                    "block {b}: quotient-crossing difference {} but gap {}",
                    quotient_weight - crossing_weight,
                    gap
                ));
            }
            if gap < -tol {
                violations.push(format!("block {b}: negative gap {gap}"));
            }
            let block_tree_weight: f64 = {
                let members = partition.block(b);
                let mut sum = 0.0;
                for &v in members {
                    if let Some(h) = pair.forest.successor(v) {
                        if partition.block_of(h) == b {
                            sum += g.arc_weight(v, h).unwrap();
                        }
                    }
                }
                sum
            };
            let free = minima::free_value(g, partition.block(b))?
                .value()
                .expect("divisible block");
            let zero_gap = gap.abs() <= tol;
            let tree_is_free_minimal = (block_tree_weight - free).abs() <= tol;
            if zero_gap != tree_is_free_minimal {
                violations.push(format!(
                    "block {b}: gap {gap} but block tree weight {block_tree_weight} vs free {free}"
                ));
            }
        }
    }
    Ok(CheckReport {
        name: format!("weight-gap-law k={k}"),
        instances_checked: checked,
        violations,
    })
}

/// Verifies that minimality transfers between a forest and its representative:
/// the affine weight relation ties the two levels together, minimal principals
/// of minimal quotient forests are exactly the minimal divisible forests, and
/// every minimal divisible forest projects onto a minimal quotient forest.
pub fn minimality_transfer(
    g: &WeightedDigraph,
    partition: &Partition,
    k: usize,
    budget: &EnumerationBudget,
    tol: f64,
) -> Result<CheckReport> {
    let split = split::split_digraph(g, partition, tol)?;
    let quotient = split.as_digraph();
    let offset: f64 = (0..partition.block_count())
        .map(|b| split.block_minimum(b).value)
        .sum();
    let block_family = enumerate_spanning_in_forests(&quotient, k, budget)?;
    let divisible = minimal_divisible_forests(g, partition, k, budget, tol)?;
    let mut checked = 0usize;
    let mut violations = Vec::new();
    let quotient_min = block_family.min_weight;
    for block_forest in &block_family.forests {
        checked += 1;
        let pair = principal(g, partition, block_forest, PrincipalMode::Minimal, tol)?;
        let forest_weight = pair.forest.weight_in(g)?;
        let block_weight = split.forest_weight(block_forest)?;
        if (block_weight - (forest_weight - offset)).abs() > tol {
            violations.push(format!(
                "affine relation broken: quotient weight {block_weight}, vertex weight {forest_weight}, offset {offset}"
            ));
        }
        let forest_minimal = divisible
            .min_weight
            .value()
            .is_some_and(|m| forest_weight <= m + tol);
        let block_minimal = quotient_min
            .value()
            .is_some_and(|m| block_weight <= m + tol);
        if forest_minimal != block_minimal {
            violations.push(format!(
                "biconditional broken at quotient forest {:?}: vertex-minimal={forest_minimal}, quotient-minimal={block_minimal}",
                block_forest.successors()
            ));
        }
    }
    // Reverse inclusion: minimal divisible forests are minimal principals of
    // minimal quotient forests.
    for forest in &divisible.forests {
        checked += 1;
        let repr = representative(&split, forest)?;
        let repr_weight = split.forest_weight(&repr)?;
        if !quotient_min.value().is_some_and(|m| repr_weight <= m + tol) {
            violations.push(format!(
                "representative of a minimal divisible forest is not quotient-minimal (weight {repr_weight})"
            ));
        }
        if !is_minimal_principal(g, partition, forest, &repr, tol)? {
            violations.push(
                "minimal divisible forest fails the minimal-principal equalities".to_string(),
            );
        }
    }
    Ok(CheckReport {
        name: format!("minimality-transfer k={k}"),
        instances_checked: checked,
        violations,
    })
}

/// Atoms of the algebra generated by the tree vertex sets of all minimal
/// `k`-forests: classes of the "same membership in every generating set"
/// relation, labeled when they hold a root of some minimal forest.
pub fn atoms(
    g: &WeightedDigraph,
    k: usize,
    budget: &EnumerationBudget,
    tol: f64,
) -> Result<AtomFamily> {
    let n = g.vertex_count();
    assert!(n <= 64, "atom signatures use 64-bit masks");
    let family = minimal_forests(g, k, budget, tol)?;
    if family.forests.is_empty() {
        return Err(Error::NoSuchForest(k));
    }
    let mut generators: Vec<u64> = Vec::new();
    let mut root_mask = 0u64;
    for f in &family.forests {
        for slot in 0..f.tree_count() {
            let mask = f
                .tree_vertices(slot)
                .iter()
                .fold(0u64, |m, &v| m | 1 << v);
            generators.push(mask);
        }
        for &r in f.roots() {
            root_mask |= 1 << r;
        }
    }
    generators.sort_unstable();
    generators.dedup();
    // Group vertices by their membership signature across all generators.
    let mut classes: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
    for v in 0..n {
        let sig: Vec<bool> = generators.iter().map(|&mask| mask >> v & 1 == 1).collect();
        classes.entry(sig).or_default().push(v);
    }
    let mut blocks: Vec<Vec<usize>> = classes.into_values().collect();
    blocks.sort_by_key(|b| b[0]);
    let labeled = blocks
        .iter()
        .map(|b| b.iter().any(|&v| root_mask >> v & 1 == 1))
        .collect();
    Ok(AtomFamily { k, atoms: Partition::new(n, blocks)?, labeled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::{demo_digraph, demo_partition};
    use crate::minima::DEFAULT_TOLERANCE;

    fn complete_unweighted(n: usize) -> WeightedDigraph {
        let mut arcs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    arcs.push((i, j, 1.0));
                }
            }
        }
        WeightedDigraph::from_indexed(n, arcs).unwrap()
    }

    #[test]
    fn the_only_n_component_forest_is_empty() {
        let g = complete_unweighted(4);
        let family =
            enumerate_spanning_in_forests(&g, 4, &EnumerationBudget::default()).unwrap();
        assert_eq!(family.forests.len(), 1);
        assert_eq!(family.forests[0].arc_count(), 0);
        assert_eq!(family.min_weight.value(), Some(0.0));
    }

    #[test]
    fn zero_component_family_is_empty_with_infinite_weight() {
        let g = complete_unweighted(3);
        let family =
            enumerate_spanning_in_forests(&g, 0, &EnumerationBudget::default()).unwrap();
        assert!(family.forests.is_empty());
        assert!(family.min_weight.is_infinite());
        assert!(min_forest_weight(&g, 0, &EnumerationBudget::default())
            .unwrap()
            .is_infinite());
    }

    /// Independent count of spanning in-trees rooted at `root` through the
    /// out-degree Laplacian minor (integer determinant, exact).
    fn matrix_tree_in_tree_count(g: &WeightedDigraph, root: usize) -> i128 {
        let n = g.vertex_count();
        let mut lap = vec![vec![0i128; n]; n];
        for v in 0..n {
            for a in g.out_arcs(v) {
                lap[v][v] += 1;
                lap[v][a.head] -= 1;
            }
        }
        let keep: Vec<usize> = (0..n).filter(|&v| v != root).collect();
        let m = keep.len();
        let mut a = vec![vec![0i128; m]; m];
        for (i, &r) in keep.iter().enumerate() {
            for (j, &c) in keep.iter().enumerate() {
                a[i][j] = lap[r][c];
            }
        }
        // Bareiss fraction-free elimination.
        let mut sign = 1i128;
        let mut prev = 1i128;
        for p in 0..m {
            if a[p][p] == 0 {
                let swap = (p + 1..m).find(|&r| a[r][p] != 0);
                match swap {
                    Some(r) => {
                        a.swap(p, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for r in p + 1..m {
                for c in p + 1..m {
                    a[r][c] = (a[r][c] * a[p][p] - a[r][p] * a[p][c]) / prev;
                }
                a[r][p] = 0;
            }
            prev = a[p][p];
        }
        sign * a[m - 1][m - 1]
    }

    #[test]
    fn spanning_tree_counts_match_the_laplacian_minor() {
        let g = complete_unweighted(4);
        let budget = EnumerationBudget::default();
        let family = enumerate_spanning_in_forests(&g, 1, &budget).unwrap();
        // 16 trees per root on four vertices, 64 in total
        assert_eq!(family.forests.len(), 64);
        for root in 0..4 {
            assert_eq!(matrix_tree_in_tree_count(&g, root), 16);
            let rooted = family.forests.iter().filter(|f| f.roots() == [root]).count();
            assert_eq!(rooted as i128, 16);
        }
        // also on an irregular digraph
        let g = WeightedDigraph::from_indexed(
            5,
            vec![
                (0, 1, 1.0),
                (1, 2, 1.0),
                (2, 0, 1.0),
                (2, 3, 1.0),
                (3, 4, 1.0),
                (4, 2, 1.0),
                (1, 4, 1.0),
            ],
        )
        .unwrap();
        let family = enumerate_spanning_in_forests(&g, 1, &budget).unwrap();
        for root in 0..5 {
            let expected = matrix_tree_in_tree_count(&g, root);
            let got = family.forests.iter().filter(|f| f.roots() == [root]).count();
            assert_eq!(got as i128, expected, "root {root}");
        }
    }

    #[test]
    fn weight_profile_on_the_demo_instance() {
        let g = demo_digraph();
        let budget = EnumerationBudget::default();
        let profile = forest_weight_profile(&g, &budget).unwrap();
        assert!(profile[0].is_infinite());
        assert_eq!(profile[1].value(), Some(11.0));
        assert_eq!(profile[g.vertex_count()].value(), Some(0.0));
    }

    #[test]
    fn unweighted_profile_is_linear_and_convexity_degenerate() {
        let g = complete_unweighted(4);
        let report = check_convexity(&g, &EnumerationBudget::default()).unwrap();
        assert!(report.has_spanning_tree);
        assert!(report.all_hold);
        for k in 1..=4 {
            assert_eq!(report.profile[k].value(), Some((4 - k) as f64));
        }
    }

    #[test]
    fn two_vertex_convexity_is_trivial() {
        let g = WeightedDigraph::from_indexed(2, vec![(0, 1, 3.0), (1, 0, 5.0)]).unwrap();
        let report = check_convexity(&g, &EnumerationBudget::default()).unwrap();
        assert!(report.all_hold);
        assert_eq!(report.profile[1].value(), Some(3.0));
    }

    #[test]
    fn minimal_divisible_differs_from_minimal_on_the_demo() {
        let g = demo_digraph();
        let p = demo_partition(&g);
        let budget = EnumerationBudget::default();
        let minimal = minimal_forests(&g, 1, &budget, DEFAULT_TOLERANCE).unwrap();
        assert_eq!(minimal.min_weight.value(), Some(11.0));
        assert_eq!(minimal.forests.len(), 1);
        assert!(!split::is_forest_divisible(&minimal.forests[0], &p));
        let divisible = minimal_divisible_forests(&g, &p, 1, &budget, DEFAULT_TOLERANCE).unwrap();
        assert!(!divisible.forests.is_empty());
        assert_eq!(divisible.min_weight.value(), Some(15.0));
        for f in &divisible.forests {
            assert!(split::is_forest_divisible(f, &p));
        }
    }

    #[test]
    fn singleton_partition_divisible_equals_minimal() {
        let g = demo_digraph();
        let p = Partition::singletons(g.vertex_count());
        let budget = EnumerationBudget::default();
        for k in [1, 3, 7] {
            let a = minimal_forests(&g, k, &budget, DEFAULT_TOLERANCE).unwrap();
            let b = minimal_divisible_forests(&g, &p, k, &budget, DEFAULT_TOLERANCE).unwrap();
            assert_eq!(a.min_weight.value(), b.min_weight.value());
            assert_eq!(a.forests.len(), b.forests.len());
        }
    }

    #[test]
    fn two_component_demo_forests_share_a_representative() {
        let g = demo_digraph();
        let p = demo_partition(&g);
        let split = split::split_digraph(&g, &p, DEFAULT_TOLERANCE).unwrap();
        let at = |name: &str| g.resolve(name).unwrap();
        let build = |arcs: &[(&str, &str)]| {
            let mut succ = vec![None; g.vertex_count()];
            for &(t, h) in arcs {
                succ[at(t)] = Some(at(h));
            }
            InForest::from_succ(succ).unwrap()
        };
        let f = build(&[("v", "y"), ("x", "y"), ("s", "x"), ("p", "r"), ("q", "r"), ("u", "t"), ("t", "x")]);
        let h = build(&[("y", "v"), ("s", "x"), ("x", "u"), ("p", "r"), ("r", "q"), ("u", "y"), ("t", "x")]);
        let rf = representative(&split, &f).unwrap();
        let rh = representative(&split, &h).unwrap();
        assert_eq!(rf, rh);
        // one arc from block 0 to block 1, quotient weight 5
        assert_eq!(rf.successors(), &[Some(1), None, None]);
        assert_eq!(split.forest_weight(&rf).unwrap(), 5.0);
    }

    #[test]
    fn arcless_block_forest_yields_disjoint_minimal_block_trees() {
        let g = demo_digraph();
        let p = demo_partition(&g);
        let block_forest = InForest::from_succ(vec![None, None, None]).unwrap();
        let pair =
            principal(&g, &p, &block_forest, PrincipalMode::Minimal, DEFAULT_TOLERANCE).unwrap();
        assert!(pair.is_principal);
        assert!(pair.is_minimal_principal);
        // weight = sum of the three block minima = 3 + 5 + 3
        assert_eq!(pair.forest.weight_in(&g).unwrap(), 11.0);
        assert_eq!(pair.forest.tree_count(), 3);
    }

    #[test]
    fn minimal_principal_weight_is_quotient_weight_plus_offset() {
        let g = demo_digraph();
        let p = demo_partition(&g);
        let block_forest = InForest::from_succ(vec![Some(1), None, None]).unwrap();
        let pair =
            principal(&g, &p, &block_forest, PrincipalMode::Minimal, DEFAULT_TOLERANCE).unwrap();
        assert!(pair.is_minimal_principal);
        // quotient weight 5 plus block minima 3 + 5 + 3
        assert_eq!(pair.forest.weight_in(&g).unwrap(), 16.0);
    }

    #[test]
    fn perturbed_principal_is_not_minimal() {
        let g = demo_digraph();
        let p = demo_partition(&g);
        let at = |name: &str| g.resolve(name).unwrap();
        // block 1 ({v, y}) as root block paying 7 (v -> y) instead of 5 (y -> v)
        let mut succ = vec![None; g.vertex_count()];
        for (t, h) in [("v", "y"), ("s", "x"), ("t", "x"), ("x", "u"), ("u", "v"), ("p", "r"), ("r", "q")] {
            succ[at(t)] = Some(at(h));
        }
        let forest = InForest::from_succ(succ).unwrap();
        let block_forest = representative(
            &split::split_digraph(&g, &p, DEFAULT_TOLERANCE).unwrap(),
            &forest,
        )
        .unwrap();
        let verdict =
            is_minimal_principal(&g, &p, &forest, &block_forest, DEFAULT_TOLERANCE).unwrap();
        assert!(!verdict);
    }

    #[test]
    fn demo_minimal_two_component_quotient_forests_are_the_cheap_single_arcs() {
        let g = demo_digraph();
        let p = demo_partition(&g);
        let split = split::split_digraph(&g, &p, DEFAULT_TOLERANCE).unwrap();
        let quotient = split.as_digraph();
        let family =
            enumerate_spanning_in_forests(&quotient, 2, &EnumerationBudget::default()).unwrap();
        assert_eq!(family.min_weight.value(), Some(2.0));
        let minimal: Vec<&InForest> = family
            .forests
            .iter()
            .filter(|f| split.forest_weight(f).unwrap() <= 2.0)
            .collect();
        // exactly the one-arc forests 0 -> 2 and 2 -> 1
        let mut shapes: Vec<Vec<Option<usize>>> =
            minimal.iter().map(|f| f.successors().to_vec()).collect();
        shapes.sort();
        assert_eq!(
            shapes,
            vec![
                vec![None, None, Some(1)],
                vec![Some(2), None, None],
            ]
        );
        // the heavy representative from the two-forest example is not among them
        assert!(!shapes.contains(&vec![Some(1), None, None]));
    }

    #[test]
    fn transfer_holds_on_the_demo_instance() {
        let g = demo_digraph();
        let p = demo_partition(&g);
        let budget = EnumerationBudget::default();
        for k in 1..=3 {
            let report = minimality_transfer(&g, &p, k, &budget, DEFAULT_TOLERANCE).unwrap();
            assert!(report.ok(), "k={k}: {:?}", report.violations);
        }
    }

    #[test]
    fn atoms_for_full_component_count_are_singletons() {
        let g = complete_unweighted(4);
        let family = atoms(&g, 4, &EnumerationBudget::default(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(family.atoms.block_count(), 4);
        assert!(family.labeled.iter().all(|&l| l));
    }

    #[test]
    fn atoms_of_a_unique_minimal_forest_are_its_trees() {
        // weights force a unique 2-forest: 0 -> 1, 2 -> 3 cheap, the rest heavy
        let g = WeightedDigraph::from_indexed(
            4,
            vec![(0, 1, 1.0), (2, 3, 1.0), (1, 2, 9.0), (3, 0, 9.0)],
        )
        .unwrap();
        let family = atoms(&g, 2, &EnumerationBudget::default(), DEFAULT_TOLERANCE).unwrap();
        assert_eq!(family.atoms.blocks(), &[vec![0, 1], vec![2, 3]]);
        assert!(family.labeled.iter().all(|&l| l));
    }
}
