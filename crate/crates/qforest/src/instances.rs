//! Ready-made and randomly generated instances.
//!
//! The random generators draw integer weights so that every comparison in the
//! verification suites is exact. All of them take an explicit RNG; callers
//! seed it for reproducible runs.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::forest::InForest;
use crate::graph::{WeightedDigraph, WeightedGraph};
use crate::partition::Partition;

/// A nine-vertex digraph with hand-checkable quotient weights under
/// [`demo_partition`]. The free minima of the three blocks are 3, 5 and 3, the
/// quotient carries four arcs, and the minimum spanning entering tree (weight
/// 11) is not divisible by the partition.
pub fn demo_digraph() -> WeightedDigraph {
    let labels = ["p", "q", "r", "s", "t", "u", "v", "x", "y"];
    let arcs = [
        ("y", "v", 5.0),
        ("v", "y", 7.0),
        ("t", "s", 3.0),
        ("y", "x", 1.0),
        ("x", "y", 4.0),
        ("u", "v", 7.0),
        ("v", "u", 4.0),
        ("s", "x", 1.0),
        ("x", "u", 1.0),
        ("x", "s", 2.0),
        ("r", "v", 1.0),
        ("t", "p", 1.0),
        ("t", "u", 3.0),
        ("p", "r", 2.0),
        ("q", "r", 2.0),
        ("t", "x", 1.0),
        ("u", "t", 2.0),
        ("u", "y", 6.0),
        ("r", "q", 1.0),
        ("r", "p", 2.0),
    ];
    let at = |name: &str| labels.iter().position(|&l| l == name).unwrap();
    WeightedDigraph::new(
        labels.iter().map(|&l| l.to_string()).collect(),
        arcs.iter().map(|&(t, h, w)| (at(t), at(h), w)).collect(),
    )
    .unwrap()
}

/// The three-block partition that goes with [`demo_digraph`]:
/// block 0 = {s,t,u,x}, block 1 = {v,y}, block 2 = {p,q,r}.
pub fn demo_partition(g: &WeightedDigraph) -> Partition {
    let blocks = [vec!["s", "t", "u", "x"], vec!["v", "y"], vec!["p", "q", "r"]];
    Partition::new(
        g.vertex_count(),
        blocks
            .iter()
            .map(|b| b.iter().map(|name| g.resolve(name).unwrap()).collect())
            .collect(),
    )
    .unwrap()
}

/// Random digraph with independent arcs and integer weights in `1..=max_weight`.
pub fn random_digraph(
    n: usize,
    arc_prob: f64,
    max_weight: u32,
    rng: &mut impl Rng,
) -> WeightedDigraph {
    let mut arcs = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(arc_prob) {
                arcs.push((i, j, rng.random_range(1..=max_weight) as f64));
            }
        }
    }
    WeightedDigraph::from_indexed(n, arcs).unwrap()
}

/// Random partition of `0..n` into at most `max_blocks` nonempty blocks.
pub fn random_partition(n: usize, max_blocks: usize, rng: &mut impl Rng) -> Partition {
    let k = rng.random_range(1..=max_blocks.min(n));
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); k];
    for (i, v) in order.into_iter().enumerate() {
        if i < k {
            blocks[i].push(v);
        } else {
            blocks[rng.random_range(0..k)].push(v);
        }
    }
    Partition::new(n, blocks).unwrap()
}

/// Random entering tree on `block`, as successor assignments: each vertex
/// except a random root points to a previously attached vertex.
fn plant_block_tree(block: &[usize], succ: &mut [Option<usize>], rng: &mut impl Rng) -> usize {
    let mut order = block.to_vec();
    order.shuffle(rng);
    let root = order[0];
    for i in 1..order.len() {
        let parent = order[rng.random_range(0..i)];
        succ[order[i]] = Some(parent);
    }
    root
}

/// A digraph guaranteed tree-divisible by the returned partition: every block
/// gets a planted spanning entering tree, then independent extra arcs.
pub fn random_divisible_instance(
    n: usize,
    max_blocks: usize,
    extra_arc_prob: f64,
    max_weight: u32,
    rng: &mut impl Rng,
) -> (WeightedDigraph, Partition) {
    let partition = random_partition(n, max_blocks, rng);
    let mut succ: Vec<Option<usize>> = vec![None; n];
    for block in partition.blocks() {
        plant_block_tree(block, &mut succ, rng);
    }
    let mut arcs = Vec::new();
    for (v, s) in succ.iter().enumerate() {
        if let Some(h) = s {
            arcs.push((v, *h, rng.random_range(1..=max_weight) as f64));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(extra_arc_prob) {
                arcs.push((i, j, rng.random_range(1..=max_weight) as f64));
            }
        }
    }
    (WeightedDigraph::from_indexed(n, arcs).unwrap(), partition)
}

/// Divisible instance plus a spanning forest that is divisible by the same
/// partition: block trees joined by crossing arcs along a random block forest.
pub fn random_divisible_forest_instance(
    n: usize,
    max_blocks: usize,
    extra_arc_prob: f64,
    max_weight: u32,
    rng: &mut impl Rng,
) -> (WeightedDigraph, Partition, InForest) {
    let partition = random_partition(n, max_blocks, rng);
    let k = partition.block_count();
    let mut succ: Vec<Option<usize>> = vec![None; n];
    let roots: Vec<usize> = partition
        .blocks()
        .iter()
        .map(|block| plant_block_tree(block, &mut succ, rng))
        .collect();
    // Random block-level forest: each block either stays a root or points to a
    // block earlier in a random order, which keeps the quotient acyclic.
    let mut block_order: Vec<usize> = (0..k).collect();
    block_order.shuffle(rng);
    for i in 1..k {
        if rng.random_bool(0.6) {
            let target_block = block_order[rng.random_range(0..i)];
            let members = partition.block(target_block);
            let target = members[rng.random_range(0..members.len())];
            succ[roots[block_order[i]]] = Some(target);
        }
    }
    let forest = InForest::from_succ(succ).unwrap();
    let mut arcs: Vec<(usize, usize, f64)> = forest
        .arcs()
        .map(|(t, h)| (t, h, rng.random_range(1..=max_weight) as f64))
        .collect();
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(extra_arc_prob) {
                arcs.push((i, j, rng.random_range(1..=max_weight) as f64));
            }
        }
    }
    // Extra arcs may collapse with planted ones to a smaller weight; that
    // never breaks divisibility, only the weights the forest pays.
    (WeightedDigraph::from_indexed(n, arcs).unwrap(), partition, forest)
}

/// Random digraph containing a Hamiltonian cycle, hence strongly connected.
pub fn random_strongly_connected(
    n: usize,
    extra_arc_prob: f64,
    max_weight: u32,
    rng: &mut impl Rng,
) -> WeightedDigraph {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut arcs = Vec::new();
    for i in 0..n {
        let from = order[i];
        let to = order[(i + 1) % n];
        arcs.push((from, to, rng.random_range(1..=max_weight) as f64));
    }
    for i in 0..n {
        for j in 0..n {
            if i != j && rng.random_bool(extra_arc_prob) {
                arcs.push((i, j, rng.random_range(1..=max_weight) as f64));
            }
        }
    }
    WeightedDigraph::from_indexed(n, arcs).unwrap()
}

/// Random undirected graph; `reflexive` adds a loop on every vertex.
pub fn random_undirected(
    n: usize,
    edge_prob: f64,
    max_weight: u32,
    reflexive: bool,
    rng: &mut impl Rng,
) -> WeightedGraph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(edge_prob) {
                edges.push((i, j, rng.random_range(1..=max_weight) as f64));
            }
        }
    }
    let loops = reflexive.then(|| {
        (0..n)
            .map(|v| (v, rng.random_range(1..=max_weight) as f64))
            .collect()
    });
    WeightedGraph::from_indexed(n, edges, loops).unwrap()
}

/// Undirected instance whose blocks all induce connected subgraphs: a random
/// spanning tree is planted inside every block, then independent extra edges.
pub fn random_undirected_divisible(
    n: usize,
    max_blocks: usize,
    extra_edge_prob: f64,
    max_weight: u32,
    rng: &mut impl Rng,
) -> (WeightedGraph, Partition) {
    let partition = random_partition(n, max_blocks, rng);
    let mut edges = Vec::new();
    for block in partition.blocks() {
        let mut order = block.to_vec();
        order.shuffle(rng);
        for i in 1..order.len() {
            let other = order[rng.random_range(0..i)];
            edges.push((order[i], other, rng.random_range(1..=max_weight) as f64));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(extra_edge_prob) {
                edges.push((i, j, rng.random_range(1..=max_weight) as f64));
            }
        }
    }
    (WeightedGraph::from_indexed(n, edges, None).unwrap(), partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::split;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn demo_fixture_satisfies_its_advertised_minima() {
        let g = demo_digraph();
        let p = demo_partition(&g);
        assert_eq!(g.vertex_count(), 9);
        assert_eq!(g.arc_count(), 20);
        assert_eq!(p.block_count(), 3);
        assert!(split::is_tree_divisible(&g, &p).divisible);
    }

    #[test]
    fn planted_instances_are_divisible() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..30 {
            let (g, p) = random_divisible_instance(7, 3, 0.2, 9, &mut rng);
            assert!(split::is_tree_divisible(&g, &p).divisible);
        }
    }

    #[test]
    fn planted_forests_are_divisible_spanning_forests() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..30 {
            let (g, p, f) = random_divisible_forest_instance(7, 3, 0.15, 9, &mut rng);
            assert!(split::is_forest_divisible(&f, &p));
            assert!(f.weight_in(&g).is_ok());
            assert!(f.tree_count() <= p.block_count());
        }
    }
}
