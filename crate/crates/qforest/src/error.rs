use thiserror::Error;

/// Why a partition block cannot carry a spanning entering tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockDefect {
    /// The underlying undirected graph of the induced subgraph is disconnected.
    Disconnected,
    /// Connected underneath, but no vertex is reachable from all others.
    Rootless,
}

impl std::fmt::Display for BlockDefect {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BlockDefect::Disconnected => write!(f, "disconnected"),
            BlockDefect::Rootless => write!(f, "rootless"),
        }
    }
}

/// A block that breaks tree-divisibility, with a diagnosis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFailure {
    pub block: usize,
    pub defect: BlockDefect,
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("duplicate vertex label `{0}`")]
    DuplicateLabel(String),
    #[error("vertex {0} out of range for a graph with {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("self-loop on vertex `{0}` is not allowed in a directed graph")]
    SelfLoop(String),
    #[error("non-finite weight on (`{0}`, `{1}`)")]
    NonFiniteWeight(String, String),
    #[error("reflexive graph is missing the loop weight at vertex `{0}`")]
    MissingLoop(String),
    #[error("loop weights given for a graph not flagged reflexive")]
    UnexpectedLoops,

    #[error("partition has an empty block")]
    EmptyBlock,
    #[error("partition assigns vertex `{0}` to more than one block")]
    OverlappingBlocks(String),
    #[error("partition does not cover vertex `{0}`")]
    PartitionGap(String),

    #[error("graph with out-degree {1} at vertex {0} is not a forest")]
    OutDegreeExceeded(usize, usize),
    #[error("successor map contains a directed cycle through vertex {0}")]
    CyclicSuccessors(usize),
    #[error("arc ({0}, {1}) is absent from the host graph")]
    ArcNotInHost(usize, usize),
    #[error("arc ({0}, {1}) does not apply to the requested subset")]
    ArcOutsideProblem(usize, usize),

    #[error("root {0} does not belong to the requested subset")]
    RootOutsideSubset(usize),
    #[error("subset must not be empty")]
    EmptySubset,
    #[error("subset must be proper (some vertex must remain outside)")]
    SubsetNotProper,
    #[error("blocks overlap on vertex {0}")]
    BlocksOverlap(usize),

    #[error("graph is not tree-divisible by the partition ({} failing block(s))", .0.len())]
    NotDivisible(Vec<BlockFailure>),
    #[error("block {0} holds no root: the forest is not divisible")]
    ForestNotDivisible(usize),
    #[error("forest is not a principal of the given block forest")]
    NotAPrincipal,
    #[error("block {0} is a root block of the forest")]
    RootBlock(usize),
    #[error("no spanning forest with {0} components exists")]
    NoSuchForest(usize),
    #[error("no tree of the original graph realizes the quotient arc ({0}, {1})")]
    QuotientArcUnrealizable(usize, usize),

    #[error("instance exceeds the enumeration budget: {0}")]
    BudgetExceeded(String),

    #[error("malformed JSON document: {0}")]
    MalformedDocument(String),

    #[error("operation requires a directed graph")]
    DirectedOnly,
    #[error("operation requires a reflexive graph")]
    ReflexiveOnly,
}

pub type Result<T> = std::result::Result<T, Error>;
