//! The generation pipeline: ER random graphs, the makesw chain
//! (ER -> confluence extraction -> largest component), the walk-length
//! sweep experiment, and the two-target confluence-curve experiment.
//!
//! Randomness is pinned to ChaCha8 seeded from a 64-bit value, so a seed
//! fully determines every output.

use std::collections::{BTreeSet, HashSet};
use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::io::format_real;
use crate::metrics::{small_world_check, SmallWorldReport};
use crate::scg::{rank_pairs, select_top_pairs, validate_target_arcs, ScgStats, WalkMatrix};
use crate::walk::{confluence_series, ConfluenceSeries};

/// Inputs of one makesw run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MakeswParams {
    pub nodes: usize,
    /// Arc count of the generated ER graph.
    pub arcs_in: usize,
    pub walk_length: usize,
    /// Arc count of the extracted graph, before component selection.
    pub arcs_out: usize,
    pub seed: u64,
}

impl MakeswParams {
    pub fn validate(&self) -> Result<()> {
        if self.nodes == 0 {
            return Err(Error::EmptyGraph);
        }
        validate_target_arcs(self.nodes, self.arcs_in)?;
        validate_target_arcs(self.nodes, self.arcs_out)?;
        if self.walk_length == 0 {
            return Err(Error::ZeroWalkLength);
        }
        Ok(())
    }
}

/// Sample a reflexive symmetric ER graph with exactly `arcs` arcs, i.e.
/// `(arcs - n) / 2` distinct undirected edges drawn uniformly.
/// Deterministic for a given seed.
pub fn er_graph(nodes: usize, arcs: usize, seed: u64) -> Result<Graph> {
    if nodes == 0 {
        return Err(Error::EmptyGraph);
    }
    validate_target_arcs(nodes, arcs)?;
    let edges_wanted = (arcs - nodes) / 2;
    let possible = nodes * (nodes - 1) / 2;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut graph = Graph::new(nodes)?;
    if 2 * edges_wanted > possible {
        // Near saturation rejection sampling stalls; shuffle the full
        // pair list instead.
        let mut pairs = Vec::with_capacity(possible);
        for u in 0..nodes {
            for v in (u + 1)..nodes {
                pairs.push((u, v));
            }
        }
        pairs.shuffle(&mut rng);
        for &(u, v) in pairs.iter().take(edges_wanted) {
            graph.add_edge(u, v).expect("shuffled pairs are distinct");
        }
    } else {
        let mut chosen: HashSet<(NodeId, NodeId)> = HashSet::with_capacity(edges_wanted);
        while chosen.len() < edges_wanted {
            let a = rng.random_range(0..nodes);
            let b = rng.random_range(0..nodes);
            if a == b {
                continue;
            }
            let pair = (a.min(b), a.max(b));
            if chosen.insert(pair) {
                graph.add_edge(pair.0, pair.1).expect("pair is fresh");
            }
        }
    }
    Ok(graph)
}

/// What a makesw run did, alongside its output graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MakeswProvenance {
    pub seed: u64,
    /// Node count of the extracted graph before component selection.
    pub pre_lcc_node_count: usize,
    /// Arc count of the extracted graph before component selection.
    pub pre_lcc_arc_count: usize,
    /// Fraction of nodes retained by the largest component.
    pub lcc_fraction: f64,
}

/// Output of [`makesw`].
#[derive(Debug, Clone)]
pub struct MakeswResult {
    /// Largest connected component of the extracted graph, renumbered.
    pub graph: Graph,
    /// The extracted graph before component selection.
    pub full_graph: Graph,
    /// Old id -> new id for nodes kept by the component selection.
    pub node_mapping: Vec<Option<NodeId>>,
    pub provenance: MakeswProvenance,
    pub scg_stats: ScgStats,
}

/// ER generation, confluence extraction, then largest-component
/// selection. The output graph is always connected.
pub fn makesw(params: &MakeswParams) -> Result<MakeswResult> {
    params.validate()?;
    let input = er_graph(params.nodes, params.arcs_in, params.seed)?;
    let (full_graph, scg_stats) =
        crate::scg::scg_with_stats(&input, params.walk_length, params.arcs_out)?;
    let (graph, node_mapping) = full_graph.largest_component_subgraph();
    let provenance = MakeswProvenance {
        seed: params.seed,
        pre_lcc_node_count: full_graph.node_count(),
        pre_lcc_arc_count: full_graph.arc_count(),
        lcc_fraction: graph.node_count() as f64 / full_graph.node_count() as f64,
    };
    Ok(MakeswResult {
        graph,
        full_graph,
        node_mapping,
        provenance,
        scg_stats,
    })
}

/// Sweep configuration: makesw inputs minus the walk length, plus the
/// walk lengths and seeds to explore.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepConfig {
    pub nodes: usize,
    pub arcs_in: usize,
    pub arcs_out: usize,
    pub t_values: Vec<usize>,
    pub seeds: Vec<u64>,
}

/// One sweep data point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub t: usize,
    pub seed: u64,
    pub report: SmallWorldReport,
}

/// CSV header matching [`write_sweep_csv`].
pub const SWEEP_CSV_HEADER: &str =
    "t,seed,n,m,lcc_fraction,diameter,avg_path_len,clustering,slope,r2,verdict";

/// Evaluate makesw over every `(t, seed)` combination. Per seed the walk
/// matrix advances one step at a time, so successive walk lengths reuse
/// earlier steps; this matches from-scratch runs exactly. Records come
/// back in ascending `(t, seed)` order.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>> {
    if config.t_values.is_empty() {
        return Err(Error::EmptySweep);
    }
    let t_set: BTreeSet<usize> = config.t_values.iter().copied().collect();
    if t_set.contains(&0) {
        return Err(Error::ZeroWalkLength);
    }
    let probe = MakeswParams {
        nodes: config.nodes,
        arcs_in: config.arcs_in,
        walk_length: *t_set.iter().next().expect("nonempty"),
        arcs_out: config.arcs_out,
        seed: 0,
    };
    probe.validate()?;

    let seeds: BTreeSet<u64> = config.seeds.iter().copied().collect();
    let records: Result<Vec<Vec<SweepRecord>>> = seeds
        .par_iter()
        .map(|&seed| sweep_one_seed(config, &t_set, seed))
        .collect();
    let mut flat: Vec<SweepRecord> = records?.into_iter().flatten().collect();
    flat.sort_by_key(|r| (r.t, r.seed));
    Ok(flat)
}

fn sweep_one_seed(
    config: &SweepConfig,
    t_set: &BTreeSet<usize>,
    seed: u64,
) -> Result<Vec<SweepRecord>> {
    let n = config.nodes;
    let input = er_graph(n, config.arcs_in, seed)?;
    let t_max = *t_set.iter().next_back().expect("nonempty");
    let mut matrix = WalkMatrix::identity(n);
    let mut records = Vec::with_capacity(t_set.len());
    for t in 1..=t_max {
        matrix.advance(&input)?;
        if !t_set.contains(&t) {
            continue;
        }
        let ranked = rank_pairs(&matrix, &HashSet::new());
        let (full, _) = select_top_pairs(n, &ranked, config.arcs_out)?;
        let (lcc, _) = full.largest_component_subgraph();
        let lcc_fraction = lcc.node_count() as f64 / n as f64;
        let report = small_world_check(&lcc, lcc_fraction)?;
        records.push(SweepRecord { t, seed, report });
    }
    Ok(records)
}

/// Serialize sweep records as CSV.
pub fn write_sweep_csv<W: Write>(records: &[SweepRecord], mut writer: W) -> io::Result<()> {
    writeln!(writer, "{SWEEP_CSV_HEADER}")?;
    for record in records {
        let r = &record.report;
        let (slope, r2) = match &r.fit {
            Some(fit) => (fit.slope, fit.r2),
            None => (f64::NAN, f64::NAN),
        };
        writeln!(
            writer,
            "{},{},{},{},{},{},{},{},{},{},{}",
            record.t,
            record.seed,
            r.node_count,
            r.arc_count,
            format_real(r.lcc_fraction),
            r.diameter,
            format_real(r.avg_path_length),
            format_real(r.clustering),
            format_real(slope),
            format_real(r2),
            r.verdict
        )?;
    }
    Ok(())
}

/// Two confluence series from a common source toward a near and a far
/// target, sharing their asymptote when the targets' degrees match.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfluenceExperiment {
    pub series_v1: ConfluenceSeries,
    pub series_v2: ConfluenceSeries,
    /// Whether the two targets have equal loop-inclusive degree; the
    /// comparison is only meaningful when they do.
    pub degrees_match: bool,
}

/// Track `t`-step probabilities from `u` toward `v1` and `v2` over
/// `t = 1..=t_max` on a connected graph.
pub fn confluence_experiment(
    graph: &Graph,
    u: NodeId,
    v1: NodeId,
    v2: NodeId,
    t_max: usize,
) -> Result<ConfluenceExperiment> {
    if v1 == v2 {
        return Err(Error::IdenticalNodes(v1));
    }
    let series_v1 = confluence_series(graph, u, v1, t_max)?;
    let series_v2 = confluence_series(graph, u, v2, t_max)?;
    Ok(ConfluenceExperiment {
        degrees_match: graph.degree(v1) == graph.degree(v2),
        series_v1,
        series_v2,
    })
}

/// CSV header matching [`write_experiment_csv`].
pub const EXPERIMENT_CSV_HEADER: &str = "t,p_u_v1,p_v1_u,asym_v1,p_u_v2,p_v2_u,asym_v2";

/// Serialize a two-series experiment as CSV.
pub fn write_experiment_csv<W: Write>(
    experiment: &ConfluenceExperiment,
    mut writer: W,
) -> io::Result<()> {
    writeln!(writer, "{EXPERIMENT_CSV_HEADER}")?;
    let s1 = &experiment.series_v1;
    let s2 = &experiment.series_v2;
    for i in 0..s1.len() {
        writeln!(
            writer,
            "{},{},{},{},{},{},{}",
            i + 1,
            format_real(s1.forward[i]),
            format_real(s1.backward[i]),
            format_real(s1.asymptote),
            format_real(s2.forward[i]),
            format_real(s2.backward[i]),
            format_real(s2.asymptote)
        )?;
    }
    Ok(())
}
