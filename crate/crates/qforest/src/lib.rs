//! Tree-based splitting of weighted graphs by a vertex partition.
//!
//! A weighted digraph is viewed "up to a partition" of its vertices: when
//! every block carries a spanning entering tree, the blocks become the
//! vertices of a quotient digraph whose arc weights measure how much a
//! minimal block tree has to grow to reach a neighboring block. The library
//! computes the underlying tree minima with witnesses, builds the quotients
//! (directed and undirected), relates spanning forests of the original graph
//! to spanning forests of the quotient through representatives and
//! principals, strips graphs down to the arcs that matter, and derives the
//! atom partitions generated by minimal forests. Exhaustive enumeration
//! oracles back every solver at desk scale.

pub mod cli;
pub mod error;
pub mod ext;
pub mod forest;
pub mod forests;
pub mod graph;
pub mod instances;
pub mod io;
pub mod minima;
pub mod oracle;
pub mod partition;
pub mod split;
pub mod verify;

pub use error::{BlockDefect, BlockFailure, Error, Result};
pub use ext::ExtReal;
pub use forest::{replace_outgoing, InForest};
pub use forests::{
    atoms, check_convexity, enumerate_spanning_in_forests, is_minimal_principal,
    min_forest_weight, minimal_divisible_forests, minimal_forests, minimality_transfer,
    principal, representative, weight_gap, AtomFamily, ForestFamily, PrincipalMode,
    PrincipalPair,
};
pub use graph::{Arc, Edge, ForestCheck, WeightedDigraph, WeightedGraph};
pub use minima::{
    arc_in_some_min_tree, min_cross_tree, min_cross_tree_undirected, min_escape_tree,
    min_in_tree, min_rooted_in_tree, min_spanning_tree, FreeMinimum, RootedTable, TreeKind,
    TreeMinimum, DEFAULT_TOLERANCE,
};
pub use oracle::EnumerationBudget;
pub use partition::Partition;
pub use split::{
    barrier_digraph, digraph_view, is_forest_divisible, is_tree_divisible, lightweight_graph,
    split_digraph, split_forest, split_undirected, DivisibilityReport, SplitDigraph, SplitGraph,
};
