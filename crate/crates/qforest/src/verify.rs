//! The self-check battery behind `qforest verify`: solver minima against
//! brute-force enumeration, witness consistency, quotient invariants and the
//! forest-level structure theorems, on one instance with seeded sampling.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::Result;
use crate::ext::ExtReal;
use crate::forests;
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::io::AnyGraph;
use crate::minima;
use crate::oracle::{self, EnumerationBudget};
use crate::partition::Partition;
use crate::split;

#[derive(Debug)]
pub struct VerifyCheck {
    pub name: String,
    pub instances: usize,
    pub violations: Vec<String>,
}

impl VerifyCheck {
    fn new(name: &str) -> VerifyCheck {
        VerifyCheck { name: name.to_string(), instances: 0, violations: Vec::new() }
    }
}

#[derive(Debug)]
pub struct VerifyReport {
    pub seed: u64,
    pub budget: usize,
    pub viewed_as_digraph: bool,
    pub checks: Vec<VerifyCheck>,
}

impl VerifyReport {
    pub fn violation_count(&self) -> usize {
        self.checks.iter().map(|c| c.violations.len()).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "budget": self.budget,
            "viewed_as_digraph": self.viewed_as_digraph,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name,
                "instances": c.instances,
                "verdict": if c.violations.is_empty() { "pass" } else { "fail" },
                "violations": c.violations,
            })).collect::<Vec<_>>(),
            "violations_total": self.violation_count(),
        })
    }
}

fn approx(a: ExtReal, b: Option<f64>, tol: f64) -> bool {
    match (a.value(), b) {
        (Some(x), Some(y)) => (x - y).abs() <= tol,
        (None, None) => true,
        _ => false,
    }
}

fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|mask| (0..n).filter(|&v| mask >> v & 1 == 1).collect())
        .collect()
}

fn sampled_subsets(n: usize, max_size: usize, count: usize, rng: &mut impl Rng) -> Vec<Vec<usize>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let size = rng.random_range(1..=max_size.min(n));
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(rng);
        let mut subset: Vec<usize> = all[..size].to_vec();
        subset.sort_unstable();
        out.push(subset);
    }
    out.sort();
    out.dedup();
    out
}

/// Runs the full battery on a graph of either orientation.
pub fn verify(graph: &AnyGraph, seed: u64, budget_limit: usize, tol: f64) -> Result<VerifyReport> {
    match graph {
        AnyGraph::Directed(g) => verify_digraph(g, seed, budget_limit, tol, false),
        AnyGraph::Undirected(g) => verify_undirected(g, seed, budget_limit, tol),
    }
}

fn verify_digraph(
    g: &WeightedDigraph,
    seed: u64,
    budget_limit: usize,
    tol: f64,
    viewed: bool,
) -> Result<VerifyReport> {
    let n = g.vertex_count();
    let budget = EnumerationBudget::with_max_vertices(budget_limit.max(n).min(12));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();

    let subsets = if n <= budget_limit.min(8) {
        all_subsets(n)
    } else {
        sampled_subsets(n, budget.max_subset.min(7), 120, &mut rng)
    };

    // Solver minima against brute-force tree enumeration.
    let mut minima_check = VerifyCheck::new("tree-minima-vs-enumeration");
    for subset in &subsets {
        if subset.len() > budget.max_subset {
            continue;
        }
        let mut best_free: Option<f64> = None;
        for &q in subset {
            let trees = oracle::enumerate_in_trees(g, subset, Some(q), &budget)?;
            let (oracle_min, _) = oracle::minimal_trees(g, &trees, tol)?;
            if let Some(m) = oracle_min {
                best_free = Some(best_free.map_or(m, |b: f64| b.min(m)));
            }
            let solver = minima::rooted_value(g, subset, q)?;
            minima_check.instances += 1;
            if !approx(solver, oracle_min, tol) {
                minima_check
                    .violations
                    .push(format!("rooted minimum mismatch on {subset:?} root {q}"));
            }
        }
        let free = minima::free_value(g, subset)?;
        minima_check.instances += 1;
        if !approx(free, best_free, tol) {
            minima_check.violations.push(format!("free minimum mismatch on {subset:?}"));
        }
        if subset.len() < n {
            let trees = oracle::enumerate_escape_trees(g, subset, &budget)?;
            let (oracle_min, _) = oracle::minimal_trees(g, &trees, tol)?;
            let solver = minima::escape_value(g, subset)?;
            minima_check.instances += 1;
            if !approx(solver, oracle_min, tol) {
                minima_check.violations.push(format!("escape minimum mismatch on {subset:?}"));
            }
        }
    }
    checks.push(minima_check);

    // Cross minima on sampled disjoint pairs.
    let mut cross_check = VerifyCheck::new("cross-minima-vs-enumeration");
    for _ in 0..150 {
        if n < 2 {
            break;
        }
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(&mut rng);
        let xs = rng.random_range(1..n.min(budget.max_subset));
        let ys = rng.random_range(1..=(n - xs).min(4));
        let mut x = all[..xs].to_vec();
        let mut y = all[xs..xs + ys].to_vec();
        x.sort_unstable();
        y.sort_unstable();
        let trees = oracle::enumerate_cross_trees(g, &x, &y, &budget)?;
        let (oracle_min, _) = oracle::minimal_trees(g, &trees, tol)?;
        let solver = minima::cross_value(g, &x, &y)?;
        cross_check.instances += 1;
        if !approx(solver, oracle_min, tol) {
            cross_check.violations.push(format!("cross minimum mismatch on {x:?} -> {y:?}"));
        }
    }
    checks.push(cross_check);

    // Witnesses recompute to their reported values.
    let mut witness_check = VerifyCheck::new("witness-consistency");
    for subset in subsets.iter().take(60) {
        if subset.len() > budget.max_subset {
            continue;
        }
        let free = minima::min_in_tree(g, subset, tol)?;
        witness_check.instances += 1;
        if let (Some(v), Some(w)) = (free.minimum.value.value(), &free.minimum.witness) {
            let paid: f64 = w.iter().map(|&(t, h)| g.arc_weight(t, h).unwrap()).sum();
            if (paid - v).abs() > tol || w.len() + 1 != subset.len() {
                witness_check.violations.push(format!("free witness broken on {subset:?}"));
            }
        } else if free.minimum.value.is_finite() != free.minimum.witness.is_some() {
            witness_check.violations.push(format!("free witness presence on {subset:?}"));
        }
        if subset.len() < n {
            let escape = minima::min_escape_tree(g, subset, tol)?;
            witness_check.instances += 1;
            if let (Some(v), Some(w)) = (escape.value.value(), &escape.witness) {
                let paid: f64 = w.iter().map(|&(t, h)| g.arc_weight(t, h).unwrap()).sum();
                if (paid - v).abs() > tol || w.len() != subset.len() {
                    witness_check.violations.push(format!("escape witness broken on {subset:?}"));
                }
            }
        }
    }
    checks.push(witness_check);

    // Quotient-level checks on sampled partitions that divide the graph.
    let mut partitions: Vec<Partition> = vec![Partition::singletons(n)];
    let mut tries = 0;
    while partitions.len() < 4 && tries < 40 && n >= 2 {
        tries += 1;
        let p = crate::instances::random_partition(n, 4.min(n), &mut rng);
        if split::is_tree_divisible(g, &p).divisible {
            partitions.push(p);
        }
    }

    let mut invariance = VerifyCheck::new("quotient-invariance-under-lightweighting");
    let mut transfer = VerifyCheck::new("minimality-transfer");
    let mut principal_min = VerifyCheck::new("principal-minimality-equalities");
    let mut gap_law = VerifyCheck::new("weight-gap-law");
    let forests_feasible = n <= budget.max_vertices;
    for p in &partitions {
        let before = split::split_digraph(g, p, tol)?;
        let light = split::lightweight_graph(g, p, tol)?;
        let after = split::split_digraph(&light, p, tol)?;
        invariance.instances += 1;
        if before.arc_triples() != after.arc_triples() {
            invariance.violations.push(format!(
                "quotient changed after lightweighting under a {}-block partition",
                p.block_count()
            ));
        }
        if forests_feasible {
            for k in 1..=p.block_count() {
                let report = forests::minimality_transfer(g, p, k, &budget, tol)?;
                transfer.instances += report.instances_checked;
                transfer.violations.extend(report.violations);
                let report = forests::check_principal_minimality(g, p, k, &budget, tol)?;
                principal_min.instances += report.instances_checked;
                principal_min.violations.extend(report.violations);
                let report = forests::check_weight_gaps(g, p, k, &budget, tol)?;
                gap_law.instances += report.instances_checked;
                gap_law.violations.extend(report.violations);
            }
        }
    }
    checks.push(invariance);
    checks.push(transfer);
    checks.push(principal_min);
    checks.push(gap_law);

    // Convexity of the forest weight profile.
    if forests_feasible {
        let mut convexity = VerifyCheck::new("forest-weight-convexity");
        let report = forests::check_convexity(g, &budget)?;
        convexity.instances = report.verdicts.len();
        for (i, holds) in report.verdicts.iter().enumerate() {
            if !holds {
                convexity.violations.push(format!("convexity fails at k={}", i + 1));
            }
        }
        checks.push(convexity);

        // Minimal forests are divisible by the atoms they generate.
        let mut atom_check = VerifyCheck::new("atoms-divide-minimal-forests");
        if report.has_spanning_tree {
            for k in 2..=n.min(4) {
                let atoms = forests::atoms(g, k, &budget, tol)?;
                for kk in [k - 1, k] {
                    let family = forests::minimal_forests(g, kk, &budget, tol)?;
                    for f in &family.forests {
                        atom_check.instances += 1;
                        if !split::is_forest_divisible(f, &atoms.atoms) {
                            atom_check.violations.push(format!(
                                "a minimal {kk}-forest is not divisible by the {k}-atoms"
                            ));
                        }
                    }
                }
            }
        }
        checks.push(atom_check);
    }

    Ok(VerifyReport { seed, budget: budget.max_vertices, viewed_as_digraph: viewed, checks })
}

fn verify_undirected(
    g: &WeightedGraph,
    seed: u64,
    budget_limit: usize,
    tol: f64,
) -> Result<VerifyReport> {
    let n = g.vertex_count();
    let budget = EnumerationBudget::with_max_vertices(budget_limit.max(n).min(12));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let view = split::digraph_view(g);
    let mut report = verify_digraph(&view, seed, budget_limit, tol, true)?;

    let subsets = if n <= budget_limit.min(8) {
        all_subsets(n)
    } else {
        sampled_subsets(n, budget.max_subset.min(7), 80, &mut rng)
    };

    // Spanning-tree minima against edge-subset enumeration, and agreement
    // between the undirected solver and the doubled-arc view.
    let mut mst_check = VerifyCheck::new("undirected-minima-vs-enumeration");
    let mut view_check = VerifyCheck::new("digraph-view-consistency");
    for subset in &subsets {
        if subset.len() > budget.max_subset {
            continue;
        }
        let trees = oracle::enumerate_spanning_trees_undirected(g, subset, &budget)?;
        let oracle_min = trees
            .iter()
            .map(|t| oracle::tree_weight_undirected(g, t).unwrap())
            .fold(None, |acc: Option<f64>, w| Some(acc.map_or(w, |a| a.min(w))));
        let solver = minima::spanning_tree_value(g, subset)?;
        mst_check.instances += 1;
        if !approx(solver, oracle_min, tol) {
            mst_check.violations.push(format!("spanning tree minimum mismatch on {subset:?}"));
        }
        // every rooted minimum of the view equals the undirected minimum
        for &q in subset.iter().take(3) {
            let rooted = minima::rooted_value(&view, subset, q)?;
            view_check.instances += 1;
            if !rooted.approx_eq(solver, tol) {
                view_check
                    .violations
                    .push(format!("view rooted minimum differs on {subset:?} at {q}"));
            }
        }
    }

    // Cross minima through both routes on sampled pairs.
    for _ in 0..100 {
        if n < 2 {
            break;
        }
        let mut all: Vec<usize> = (0..n).collect();
        all.shuffle(&mut rng);
        let xs = rng.random_range(1..n.min(budget.max_subset));
        let ys = rng.random_range(1..=(n - xs).min(4));
        let mut x = all[..xs].to_vec();
        let mut y = all[xs..xs + ys].to_vec();
        x.sort_unstable();
        y.sort_unstable();
        let undirected = minima::cross_value_undirected(g, &x, &y)?;
        let viewed = minima::cross_value(&view, &x, &y)?;
        view_check.instances += 1;
        if !undirected.approx_eq(viewed, tol) {
            view_check.violations.push(format!("cross minima disagree on {x:?} -> {y:?}"));
        }
    }
    report.checks.push(mst_check);

    // Quotient symmetry and agreement of the two weight formulas.
    let mut quotient_check = VerifyCheck::new("undirected-quotient-weights");
    let mut partitions: Vec<Partition> = vec![Partition::singletons(n)];
    let mut tries = 0;
    while partitions.len() < 4 && tries < 40 && n >= 2 {
        tries += 1;
        let p = crate::instances::random_partition(n, 4.min(n), &mut rng);
        if split::split_undirected(g, &p).is_ok() {
            partitions.push(p);
        }
    }
    for p in &partitions {
        let Ok(quotient) = split::split_undirected(g, p) else { continue };
        let view_quotient = split::split_digraph(&view, p, tol)?;
        for x in 0..p.block_count() {
            for y in x + 1..p.block_count() {
                quotient_check.instances += 1;
                let direct = quotient.edge_weight(x, y);
                // tree-route: cross minimum minus spanning minimum
                let cross = minima::cross_value_undirected(g, p.block(x), p.block(y))?;
                let base = minima::spanning_tree_value(g, p.block(x))?;
                let tree_route = match (cross.value(), base.value()) {
                    (Some(c), Some(b)) => Some(c - b),
                    _ => None,
                };
                let matches = match (direct, tree_route) {
                    (Some(a), Some(b)) => (a - b).abs() <= tol,
                    (None, None) => true,
                    _ => false,
                };
                if !matches {
                    quotient_check
                        .violations
                        .push(format!("edge weight formulas disagree on blocks {x}, {y}"));
                }
                // symmetric view quotient with the same weights both ways
                let forward = view_quotient.arc_weight(x, y);
                let backward = view_quotient.arc_weight(y, x);
                let sym = match (forward, backward, direct) {
                    (Some(f), Some(b), Some(d)) => (f - b).abs() <= tol && (f - d).abs() <= tol,
                    (None, None, None) => true,
                    _ => false,
                };
                if !sym {
                    quotient_check
                        .violations
                        .push(format!("view quotient asymmetric on blocks {x}, {y}"));
                }
            }
        }
        // zero overcharge on views: minimal principals pay exactly the edge
        if n <= budget.max_vertices {
            for k in 1..=p.block_count() {
                let q = view_quotient.as_digraph();
                let family = forests::enumerate_spanning_in_forests(&q, k, &budget)?;
                for block_forest in family.forests.iter().take(10) {
                    let pair = forests::principal(
                        &view,
                        p,
                        block_forest,
                        forests::PrincipalMode::Minimal,
                        tol,
                    )?;
                    for (b, s) in block_forest.successors().iter().enumerate() {
                        if s.is_none() {
                            continue;
                        }
                        quotient_check.instances += 1;
                        let gap = forests::weight_gap(&view, p, &pair.forest, b)?;
                        if gap.abs() > tol {
                            quotient_check
                                .violations
                                .push(format!("nonzero gap {gap} on a view principal"));
                        }
                    }
                }
            }
        }
    }
    report.checks.push(view_check);
    report.checks.push(quotient_check);
    Ok(report)
}
