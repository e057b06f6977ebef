//! Synthesize small-world graphs from Erdős–Rényi random graphs by
//! extracting the node pairs where a lazy random walk concentrates, and
//! measure the result: diameter, average path length, clustering, and a
//! log-log power-law fit of the degree distribution.
//!
//! The pipeline is `er_graph -> scg -> largest component` (see
//! [`pipeline::makesw`]), with [`metrics::small_world_check`] classifying
//! the output against four structural criteria. Graphs are reflexive
//! (every node has an implicit self-loop) and symmetric; the walk is lazy
//! because the current node counts among its own neighbors.

pub mod error;
pub mod graph;
pub mod io;
pub mod metrics;
pub mod pipeline;
pub mod scg;
pub mod walk;

pub use error::{Error, Result};
pub use graph::{ComponentLabeling, Graph, NodeId, PathLengthStats};
pub use metrics::{
    degree_distribution, er_degree_pmf, er_reference, power_law_fit, small_world_check,
    DegreeHistogram, ErReference, PowerLawFit, SmallWorldReport,
};
pub use pipeline::{
    confluence_experiment, er_graph, makesw, sweep, ConfluenceExperiment, MakeswParams,
    MakeswProvenance, MakeswResult, SweepConfig, SweepRecord,
};
pub use scg::{
    all_pairs_walk_matrix, rank_pairs, scg, scg_with_stats, select_top_pairs, ScgStats, ScoredPair,
    WalkMatrix,
};
pub use walk::{
    confluence, confluence_series, stationary_distribution, step, walk_distribution,
    ConfluenceSeries, ProbabilityVector,
};
