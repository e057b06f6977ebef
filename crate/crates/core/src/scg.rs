//! Strong-confluence graph extraction.
//!
//! Scores every candidate node pair by mutual confluence at a fixed walk
//! horizon and keeps self-loops plus the top-ranked pairs until the
//! output reaches the target arc count. Since the walk matrix is fixed
//! during extraction, the greedy one-pair-at-a-time selection collapses
//! to a single batch ranking.

use std::collections::HashSet;
use std::io::{self, Write};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::io::format_real;
use crate::walk::{inverse_degrees, raw_step};

/// All `t`-step transition probabilities, one row per source node.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkMatrix {
    node_count: usize,
    values: Vec<f64>,
}

impl WalkMatrix {
    /// The zero-step matrix: row `u` is the one-hot distribution on `u`.
    pub fn identity(node_count: usize) -> Self {
        let mut values = vec![0.0; node_count * node_count];
        for u in 0..node_count {
            values[u * node_count + u] = 1.0;
        }
        Self { node_count, values }
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Transition probability from `u` to `v` at the current horizon.
    pub fn get(&self, u: NodeId, v: NodeId) -> f64 {
        self.values[u * self.node_count + v]
    }

    pub fn row(&self, u: NodeId) -> &[f64] {
        &self.values[u * self.node_count..(u + 1) * self.node_count]
    }

    /// Advance every row by one walk step. Rows are independent, so they
    /// run in parallel without affecting the result.
    pub fn advance(&mut self, graph: &Graph) -> Result<()> {
        let n = self.node_count;
        if graph.node_count() != n {
            return Err(Error::DimensionMismatch {
                expected: graph.node_count(),
                got: n,
            });
        }
        let inv_deg = inverse_degrees(graph);
        let mut next = vec![0.0; n * n];
        next.par_chunks_mut(n)
            .zip(self.values.par_chunks(n))
            .for_each(|(out, row)| raw_step(graph, &inv_deg, row, out));
        self.values = next;
        Ok(())
    }
}

/// Walk matrix at horizon `t >= 1`, computed by propagating every
/// one-hot row.
pub fn all_pairs_walk_matrix(graph: &Graph, t: usize) -> Result<WalkMatrix> {
    if t == 0 {
        return Err(Error::ZeroWalkLength);
    }
    let mut matrix = WalkMatrix::identity(graph.node_count());
    for _ in 0..t {
        matrix.advance(graph)?;
    }
    Ok(matrix)
}

/// An unordered node pair (`u < v`) with its mutual confluence score.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScoredPair {
    pub u: NodeId,
    pub v: NodeId,
    pub score: f64,
}

/// Score and rank every non-excluded pair: mutual confluence descending,
/// ties broken by lexicographic `(u, v)` ascending. Pairs in `exclude`
/// must be stored with `u < v`.
pub fn rank_pairs(matrix: &WalkMatrix, exclude: &HashSet<(NodeId, NodeId)>) -> Vec<ScoredPair> {
    let n = matrix.node_count();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in (u + 1)..n {
            if exclude.contains(&(u, v)) {
                continue;
            }
            pairs.push(ScoredPair {
                u,
                v,
                score: matrix.get(u, v).max(matrix.get(v, u)),
            });
        }
    }
    pairs.sort_unstable_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| (a.u, a.v).cmp(&(b.u, b.v)))
    });
    pairs
}

/// CSV dump of ranked pairs: header `u,v,score`.
pub fn write_scores_csv<W: Write>(pairs: &[ScoredPair], mut writer: W) -> io::Result<()> {
    writeln!(writer, "u,v,score")?;
    for p in pairs {
        writeln!(writer, "{},{},{}", p.u, p.v, format_real(p.score))?;
    }
    Ok(())
}

/// Extraction diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScgStats {
    /// Number of pairs selected, `(m - n) / 2`.
    pub selected_pairs: usize,
    /// Selected pairs whose confluence was exactly zero; nonzero values
    /// signal a too-short walk or a too-sparse input.
    pub zero_score_selected: usize,
}

pub(crate) fn validate_target_arcs(node_count: usize, arcs: usize) -> Result<()> {
    if arcs < node_count || arcs > node_count * node_count {
        return Err(Error::ArcCountOutOfRange { arcs, node_count });
    }
    if !(arcs - node_count).is_multiple_of(2) {
        return Err(Error::ArcCountParity { arcs, node_count });
    }
    Ok(())
}

/// Keep the leading `(target_arcs - n) / 2` ranked pairs as edges of a
/// fresh graph on `node_count` nodes. `ranked` must come from
/// [`rank_pairs`] with no exclusions.
pub fn select_top_pairs(
    node_count: usize,
    ranked: &[ScoredPair],
    target_arcs: usize,
) -> Result<(Graph, ScgStats)> {
    validate_target_arcs(node_count, target_arcs)?;
    let selected = (target_arcs - node_count) / 2;
    let mut graph = Graph::new(node_count)?;
    let mut zero_score_selected = 0;
    for pair in &ranked[..selected] {
        if pair.score == 0.0 {
            zero_score_selected += 1;
        }
        graph
            .add_edge(pair.u, pair.v)
            .expect("ranked pairs are unique and loop-free");
    }
    Ok((
        graph,
        ScgStats {
            selected_pairs: selected,
            zero_score_selected,
        },
    ))
}

/// Strong-confluence graph: same node set, self-loops plus the
/// `(m - n) / 2` highest-confluence pairs at horizon `t`, for a total of
/// exactly `m` arcs.
pub fn scg(graph: &Graph, t: usize, target_arcs: usize) -> Result<Graph> {
    scg_with_stats(graph, t, target_arcs).map(|(g, _)| g)
}

/// [`scg`] plus extraction diagnostics.
pub fn scg_with_stats(graph: &Graph, t: usize, target_arcs: usize) -> Result<(Graph, ScgStats)> {
    let n = graph.node_count();
    validate_target_arcs(n, target_arcs)?;
    let matrix = all_pairs_walk_matrix(graph, t)?;
    let ranked = rank_pairs(&matrix, &HashSet::new());
    select_top_pairs(n, &ranked, target_arcs)
}
