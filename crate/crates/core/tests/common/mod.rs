//! Shared test fixtures: a dense matrix-power oracle for the walk, a
//! brute-force extraction oracle, and seeded random-graph generators.
//! The oracle path stays independent of the library internals: it
//! materializes the full transition matrix and scores pairs by
//! exhaustive enumeration.

use std::collections::BTreeSet;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use smallworld::Graph;

/// Dense transition matrix: `1/deg(u)` toward self and each stored
/// neighbor, zero elsewhere, loop-inclusive degrees.
pub fn dense_transition(graph: &Graph) -> Vec<Vec<f64>> {
    let n = graph.node_count();
    let mut matrix = vec![vec![0.0; n]; n];
    for u in 0..n {
        let share = 1.0 / graph.degree(u) as f64;
        matrix[u][u] = share;
        for &v in graph.neighbors(u) {
            matrix[u][v] = share;
        }
    }
    matrix
}

fn mat_mul(a: &[Vec<f64>], b: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for (row_out, row_a) in out.iter_mut().zip(a) {
        for w in 0..n {
            let coeff = row_a[w];
            for v in 0..n {
                row_out[v] += coeff * b[w][v];
            }
        }
    }
    out
}

/// `t`-th power of the dense transition matrix, `t >= 1`.
pub fn dense_walk_matrix(graph: &Graph, t: usize) -> Vec<Vec<f64>> {
    assert!(t >= 1);
    let step = dense_transition(graph);
    let mut power = step.clone();
    for _ in 1..t {
        power = mat_mul(&power, &step);
    }
    power
}

/// Brute-force extraction oracle: dense power, exhaustive scoring of all
/// pairs by the larger directed entry, full sort with lexicographic tie
/// break, top `(m - n) / 2` pairs.
pub fn scg_oracle_edges(graph: &Graph, t: usize, target_arcs: usize) -> BTreeSet<(usize, usize)> {
    let n = graph.node_count();
    let power = dense_walk_matrix(graph, t);
    let mut scored: Vec<(f64, usize, usize)> = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            scored.push((power[u][v].max(power[v][u]), u, v));
        }
    }
    scored.sort_by(|a, b| {
        b.0.total_cmp(&a.0)
            .then_with(|| (a.1, a.2).cmp(&(b.1, b.2)))
    });
    scored
        .iter()
        .take((target_arcs - n) / 2)
        .map(|&(_, u, v)| (u, v))
        .collect()
}

/// Undirected edge set of a graph, for comparison against oracle output.
pub fn edge_set(graph: &Graph) -> BTreeSet<(usize, usize)> {
    let mut edges = BTreeSet::new();
    for u in 0..graph.node_count() {
        for &v in graph.neighbors(u) {
            if v > u {
                edges.insert((u, v));
            }
        }
    }
    edges
}

/// Random graph on 1..=max_nodes nodes with i.i.d. edges.
pub fn random_graph(rng: &mut ChaCha8Rng, max_nodes: usize) -> Graph {
    let n = rng.random_range(1..=max_nodes);
    let p = rng.random_range(0.0..0.6);
    let mut graph = Graph::new(n).unwrap();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.random_bool(p) {
                graph.add_edge(u, v).unwrap();
            }
        }
    }
    graph
}

/// Random connected graph: a random attachment tree plus extra edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, max_nodes: usize) -> Graph {
    let n = rng.random_range(2..=max_nodes.max(2));
    let mut graph = Graph::new(n).unwrap();
    for v in 1..n {
        let u = rng.random_range(0..v);
        graph.add_edge(u, v).unwrap();
    }
    let extra = rng.random_range(0..=n);
    for _ in 0..extra {
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v && !graph.has_edge(u, v) {
            graph.add_edge(u, v).unwrap();
        }
    }
    graph
}

/// Seeded generator for deterministic test runs.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
