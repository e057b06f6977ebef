use thiserror::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by graph construction, walk operations and the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one node")]
    EmptyGraph,

    #[error("node {node} out of range for a graph with {node_count} nodes")]
    NodeOutOfRange { node: usize, node_count: usize },

    #[error("self-loop on node {0} rejected: loops are implicit on every node")]
    SelfLoop(usize),

    #[error("edge ({u}, {v}) already present")]
    DuplicateEdge { u: usize, v: usize },

    #[error("vector has dimension {got}, graph has {expected} nodes")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("walk length must be at least 1")]
    ZeroWalkLength,

    #[error("node pair must be distinct, got node {0} on both sides")]
    IdenticalNodes(usize),

    #[error("graph is not connected")]
    NotConnected,

    #[error("arc count {arcs} outside [{node_count}, {}]", node_count * node_count)]
    ArcCountOutOfRange { arcs: usize, node_count: usize },

    #[error("arc count {arcs} has wrong parity: arcs - nodes must be even (nodes = {node_count})")]
    ArcCountParity { arcs: usize, node_count: usize },

    #[error("sweep requires at least one walk length")]
    EmptySweep,

    #[error("power-law fit needs at least 2 usable histogram bins, got {0}")]
    InsufficientFitData(usize),

    #[error("arc count {arcs} must exceed node count {node_count} for ER reference values")]
    DegenerateDensity { arcs: usize, node_count: usize },

    #[error("degree {degree} out of range: a graph on {node_count} nodes has non-loop degrees up to {}", node_count - 1)]
    DegreeOutOfRange { degree: usize, node_count: usize },

    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),

    #[error("not a probability distribution: {0}")]
    InvalidDistribution(String),

    #[error("bad edge list at line {line}: {reason}")]
    EdgeListFormat { line: usize, reason: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
