//! Lazy random walk on a reflexive symmetric graph.
//!
//! The chain moves to a uniformly random neighbor, the current node
//! included: the transition probability from `u` to `v` is `1/deg(u)`
//! whenever `v` is `u` itself or a stored neighbor, with `deg`
//! loop-inclusive. The transition matrix is never materialized; one step
//! is a sparse accumulate over arcs with a fixed order (source id
//! ascending, then neighbor id ascending) so results are bit-identical
//! across runs and parallel schedules.

use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};
use crate::io::format_real;

/// Tolerance on total mass when validating a distribution.
pub const MASS_TOLERANCE: f64 = 1e-9;

/// A probability distribution over the nodes of a graph.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityVector {
    values: Vec<f64>,
}

impl ProbabilityVector {
    /// The one-hot distribution concentrated on `u`.
    pub fn delta(node_count: usize, u: NodeId) -> Self {
        assert!(
            u < node_count,
            "node {u} out of range for {node_count} nodes"
        );
        let mut values = vec![0.0; node_count];
        values[u] = 1.0;
        Self { values }
    }

    /// Validate entries (non-negative, summing to 1 within
    /// [`MASS_TOLERANCE`]) and wrap them.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        if let Some(bad) = values.iter().find(|v| v.is_nan() || **v < 0.0) {
            return Err(Error::InvalidDistribution(format!("negative entry {bad}")));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > MASS_TOLERANCE {
            return Err(Error::InvalidDistribution(format!("entries sum to {sum}")));
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn get(&self, u: NodeId) -> f64 {
        self.values[u]
    }

    /// Sup-norm distance to another distribution of the same dimension.
    pub fn sup_distance(&self, other: &Self) -> f64 {
        assert_eq!(self.len(), other.len(), "dimension mismatch");
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Reciprocal loop-inclusive degrees, precomputed once per graph so the
/// per-arc work in a step is a single multiply.
pub(crate) fn inverse_degrees(graph: &Graph) -> Vec<f64> {
    (0..graph.node_count())
        .map(|u| 1.0 / graph.degree(u) as f64)
        .collect()
}

/// One walk step on raw storage: `output[v] = sum over sources w with
/// v in N+(w) of input[w] / deg(w)`, accumulated in ascending source
/// order. `output` is overwritten.
pub(crate) fn raw_step(graph: &Graph, inv_deg: &[f64], input: &[f64], output: &mut [f64]) {
    output.fill(0.0);
    for w in 0..graph.node_count() {
        let share = input[w] * inv_deg[w];
        output[w] += share;
        for &v in graph.neighbors(w) {
            output[v] += share;
        }
    }
}

/// Advance a distribution by one step of the walk. Mass is conserved.
pub fn step(graph: &Graph, p: &ProbabilityVector) -> Result<ProbabilityVector> {
    let n = graph.node_count();
    if p.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: p.len(),
        });
    }
    let inv_deg = inverse_degrees(graph);
    let mut out = vec![0.0; n];
    raw_step(graph, &inv_deg, p.values(), &mut out);
    ProbabilityVector::from_values(out)
}

fn check_node(graph: &Graph, u: NodeId) -> Result<()> {
    if u >= graph.node_count() {
        return Err(Error::NodeOutOfRange {
            node: u,
            node_count: graph.node_count(),
        });
    }
    Ok(())
}

/// Distribution of the walk started at `u` after exactly `t >= 1` steps;
/// entry `v` is the `t`-step transition probability from `u` to `v`.
pub fn walk_distribution(graph: &Graph, u: NodeId, t: usize) -> Result<ProbabilityVector> {
    check_node(graph, u)?;
    if t == 0 {
        return Err(Error::ZeroWalkLength);
    }
    let n = graph.node_count();
    let inv_deg = inverse_degrees(graph);
    let mut current = ProbabilityVector::delta(n, u).into_values();
    let mut next = vec![0.0; n];
    for _ in 0..t {
        raw_step(graph, &inv_deg, &current, &mut next);
        std::mem::swap(&mut current, &mut next);
    }
    ProbabilityVector::from_values(current)
}

/// The stationary distribution of the walk: mass proportional to the
/// loop-inclusive degree, `deg(v) / sum of degrees`.
pub fn stationary_distribution(graph: &Graph) -> ProbabilityVector {
    let total = graph.arc_count() as f64;
    let values = (0..graph.node_count())
        .map(|v| graph.degree(v) as f64 / total)
        .collect();
    ProbabilityVector::from_values(values).expect("degree masses form a distribution")
}

/// Mutual confluence of a distinct pair at horizon `t`: the larger of the
/// two directed `t`-step transition probabilities.
pub fn confluence(graph: &Graph, u: NodeId, v: NodeId, t: usize) -> Result<f64> {
    check_node(graph, u)?;
    check_node(graph, v)?;
    if u == v {
        return Err(Error::IdenticalNodes(u));
    }
    let forward = walk_distribution(graph, u, t)?.get(v);
    let backward = walk_distribution(graph, v, t)?.get(u);
    Ok(forward.max(backward))
}

/// Both directed transition-probability sequences for a node pair over
/// `t = 1..=len`, with the stationary asymptote of the target.
#[derive(Debug, Clone, PartialEq)]
pub struct ConfluenceSeries {
    pub source: NodeId,
    pub target: NodeId,
    /// `t`-step probability from source to target, `t = 1..=len`.
    pub forward: Vec<f64>,
    /// `t`-step probability from target to source.
    pub backward: Vec<f64>,
    /// Stationary mass of the target, `deg(target) / sum of degrees`.
    pub asymptote: f64,
}

impl ConfluenceSeries {
    pub fn len(&self) -> usize {
        self.forward.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forward.is_empty()
    }

    /// CSV serialization: header `t,p_uv,p_vu,asymptote`, one row per
    /// step, reals with 12 significant digits.
    pub fn write_csv<W: Write>(&self, mut writer: W) -> io::Result<()> {
        writeln!(writer, "t,p_uv,p_vu,asymptote")?;
        for (i, (f, b)) in self.forward.iter().zip(&self.backward).enumerate() {
            writeln!(
                writer,
                "{},{},{},{}",
                i + 1,
                format_real(*f),
                format_real(*b),
                format_real(self.asymptote)
            )?;
        }
        Ok(())
    }
}

/// Track a pair's directed probabilities over `t = 1..=t_max` on a
/// connected graph.
pub fn confluence_series(
    graph: &Graph,
    u: NodeId,
    v: NodeId,
    t_max: usize,
) -> Result<ConfluenceSeries> {
    check_node(graph, u)?;
    check_node(graph, v)?;
    if u == v {
        return Err(Error::IdenticalNodes(u));
    }
    if t_max == 0 {
        return Err(Error::ZeroWalkLength);
    }
    if !graph.is_connected() {
        return Err(Error::NotConnected);
    }
    let n = graph.node_count();
    let inv_deg = inverse_degrees(graph);
    let mut from_u = ProbabilityVector::delta(n, u).into_values();
    let mut from_v = ProbabilityVector::delta(n, v).into_values();
    let mut scratch = vec![0.0; n];
    let mut forward = Vec::with_capacity(t_max);
    let mut backward = Vec::with_capacity(t_max);
    for _ in 0..t_max {
        raw_step(graph, &inv_deg, &from_u, &mut scratch);
        std::mem::swap(&mut from_u, &mut scratch);
        raw_step(graph, &inv_deg, &from_v, &mut scratch);
        std::mem::swap(&mut from_v, &mut scratch);
        forward.push(from_u[v]);
        backward.push(from_v[u]);
    }
    let asymptote = graph.degree(v) as f64 / graph.arc_count() as f64;
    Ok(ConfluenceSeries {
        source: u,
        target: v,
        forward,
        backward,
        asymptote,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap()
    }

    fn two_nodes() -> Graph {
        Graph::from_edges(2, &[(0, 1)]).unwrap()
    }

    #[test]
    fn step_on_single_reflexive_node_is_identity() {
        let g = Graph::new(1).unwrap();
        let p = ProbabilityVector::delta(1, 0);
        let q = step(&g, &p).unwrap();
        assert_eq!(q.values(), &[1.0]);
    }

    #[test]
    fn step_spreads_over_joined_pair() {
        let g = two_nodes();
        let q = step(&g, &ProbabilityVector::delta(2, 0)).unwrap();
        assert_eq!(q.values(), &[0.5, 0.5]);
    }

    #[test]
    fn two_steps_on_path_match_matrix_power() {
        // Frozen from the dense matrix-power oracle: row 0 of the squared
        // transition matrix of the 4-path.
        let g = path4();
        let p = step(&g, &step(&g, &ProbabilityVector::delta(4, 0)).unwrap()).unwrap();
        let expect = [5.0 / 12.0, 5.0 / 12.0, 1.0 / 6.0, 0.0];
        for (got, want) in p.values().iter().zip(expect) {
            assert!((got - want).abs() < 1e-15, "{got} vs {want}");
        }
    }

    #[test]
    fn step_rejects_dimension_mismatch() {
        let g = two_nodes();
        let p = ProbabilityVector::delta(3, 0);
        assert!(matches!(
            step(&g, &p),
            Err(Error::DimensionMismatch {
                expected: 2,
                got: 3
            })
        ));
    }

    #[test]
    fn walk_distribution_agrees_with_iterated_step() {
        let g = path4();
        let direct = walk_distribution(&g, 0, 2).unwrap();
        let expect = [5.0 / 12.0, 5.0 / 12.0, 1.0 / 6.0, 0.0];
        for (got, want) in direct.values().iter().zip(expect) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn walk_distribution_rejects_zero_length_and_bad_node() {
        let g = two_nodes();
        assert!(matches!(
            walk_distribution(&g, 0, 0),
            Err(Error::ZeroWalkLength)
        ));
        assert!(matches!(
            walk_distribution(&g, 5, 1),
            Err(Error::NodeOutOfRange { node: 5, .. })
        ));
    }

    #[test]
    fn two_node_chain_is_already_stationary() {
        let g = two_nodes();
        for t in [1, 2, 9] {
            let p = walk_distribution(&g, 0, t).unwrap();
            assert_eq!(p.values(), &[0.5, 0.5]);
        }
    }

    #[test]
    fn stationary_is_uniform_on_regular_graphs() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let pi = stationary_distribution(&g);
        assert!(pi.values().iter().all(|&x| (x - 0.25).abs() < 1e-15));
    }

    #[test]
    fn stationary_is_degree_proportional() {
        let pi = stationary_distribution(&path4());
        let expect = [0.2, 0.3, 0.3, 0.2];
        for (got, want) in pi.values().iter().zip(expect) {
            assert!((got - want).abs() < 1e-15);
        }

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let pi = stationary_distribution(&star);
        let expect = [0.4, 0.2, 0.2, 0.2];
        for (got, want) in pi.values().iter().zip(expect) {
            assert!((got - want).abs() < 1e-15);
        }
    }

    #[test]
    fn confluence_examples() {
        let g = two_nodes();
        assert_eq!(confluence(&g, 0, 1, 1).unwrap(), 0.5);

        let g = path4();
        // No two-step path between the endpoints.
        assert_eq!(confluence(&g, 0, 3, 2).unwrap(), 0.0);
        // max(1/2, 1/3) from the one-step rows.
        assert!((confluence(&g, 0, 1, 1).unwrap() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn confluence_rejects_identical_nodes_and_zero_t() {
        let g = two_nodes();
        assert!(matches!(
            confluence(&g, 1, 1, 1),
            Err(Error::IdenticalNodes(1))
        ));
        assert!(matches!(
            confluence(&g, 0, 1, 0),
            Err(Error::ZeroWalkLength)
        ));
    }

    #[test]
    fn series_on_two_nodes_is_constant() {
        let g = two_nodes();
        let s = confluence_series(&g, 0, 1, 3).unwrap();
        assert_eq!(s.forward, vec![0.5, 0.5, 0.5]);
        assert_eq!(s.backward, vec![0.5, 0.5, 0.5]);
        assert_eq!(s.asymptote, 0.5);
    }

    #[test]
    fn series_on_path_endpoints() {
        let g = path4();
        let s = confluence_series(&g, 0, 3, 2).unwrap();
        assert_eq!(s.forward, vec![0.0, 0.0]);
        assert!((s.asymptote - 0.2).abs() < 1e-15);
    }

    #[test]
    fn series_rejects_disconnected() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            confluence_series(&g, 0, 1, 3),
            Err(Error::NotConnected)
        ));
    }

    #[test]
    fn series_rejects_zero_horizon() {
        let g = two_nodes();
        assert!(matches!(
            confluence_series(&g, 0, 1, 0),
            Err(Error::ZeroWalkLength)
        ));
    }

    #[test]
    fn series_csv_shape() {
        let g = two_nodes();
        let s = confluence_series(&g, 0, 1, 2).unwrap();
        let mut buf = Vec::new();
        s.write_csv(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("t,p_uv,p_vu,asymptote"));
        assert_eq!(
            lines.next(),
            Some("1,5.00000000000e-1,5.00000000000e-1,5.00000000000e-1")
        );
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn from_values_validates() {
        assert!(ProbabilityVector::from_values(vec![0.5, 0.5]).is_ok());
        assert!(matches!(
            ProbabilityVector::from_values(vec![0.5, 0.6]),
            Err(Error::InvalidDistribution(_))
        ));
        assert!(matches!(
            ProbabilityVector::from_values(vec![-0.1, 1.1]),
            Err(Error::InvalidDistribution(_))
        ));
    }
}
