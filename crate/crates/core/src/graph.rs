//! Reflexive, symmetric graph representation and structural metrics.
//!
//! Every node carries an implicit self-loop; adjacency sets store only
//! non-loop neighbors. The arc count `m` counts directed arcs: one per
//! self-loop plus two per stored undirected edge, so `m = n + 2e` and
//! `m - n` is always even.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};

/// Node identifier: contiguous indices `0..node_count`.
pub type NodeId = usize;

/// Undirected graph with implicit self-loops and sorted neighbor lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    neighbors: Vec<Vec<NodeId>>,
    undirected_edges: usize,
}

impl Graph {
    /// Create a graph with `node_count` nodes and no non-loop edges.
    pub fn new(node_count: usize) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::EmptyGraph);
        }
        Ok(Self {
            neighbors: vec![Vec::new(); node_count],
            undirected_edges: 0,
        })
    }

    /// Build a graph from an undirected edge list.
    pub fn from_edges(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        let mut graph = Self::new(node_count)?;
        for &(u, v) in edges {
            graph.add_edge(u, v)?;
        }
        Ok(graph)
    }

    /// Insert the undirected edge `{u, v}`, updating both adjacency sets.
    ///
    /// Loops are implicit and cannot be inserted; duplicates are rejected.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<()> {
        let n = self.node_count();
        if u >= n {
            return Err(Error::NodeOutOfRange {
                node: u,
                node_count: n,
            });
        }
        if v >= n {
            return Err(Error::NodeOutOfRange {
                node: v,
                node_count: n,
            });
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.neighbors[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge {
                u: u.min(v),
                v: u.max(v),
            }),
            Err(pos_u) => {
                let pos_v = self.neighbors[v]
                    .binary_search(&u)
                    .expect_err("adjacency must stay symmetric");
                self.neighbors[u].insert(pos_u, v);
                self.neighbors[v].insert(pos_v, u);
                self.undirected_edges += 1;
                Ok(())
            }
        }
    }

    pub fn node_count(&self) -> usize {
        self.neighbors.len()
    }

    /// Directed arc count `m`: every self-loop counts 1, every undirected
    /// edge counts 2, so `m = n + 2e`.
    pub fn arc_count(&self) -> usize {
        self.node_count() + 2 * self.undirected_edges
    }

    /// Number of stored (non-loop) undirected edges.
    pub fn undirected_edge_count(&self) -> usize {
        self.undirected_edges
    }

    /// Loop-inclusive degree: `1 + |non-loop neighbors|`. Never zero.
    pub fn degree(&self, u: NodeId) -> usize {
        1 + self.neighbors[u].len()
    }

    /// Number of non-loop neighbors of `u`.
    pub fn nonloop_degree(&self, u: NodeId) -> usize {
        self.neighbors[u].len()
    }

    /// Sorted non-loop neighbors of `u`.
    pub fn neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.neighbors[u]
    }

    /// Whether the non-loop edge `{u, v}` is present.
    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        self.neighbors[u].binary_search(&v).is_ok()
    }

    /// Unweighted shortest-path hop counts from `source`; `None` marks
    /// unreachable nodes. Self-loops never shorten paths.
    pub fn bfs_distances(&self, source: NodeId) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::new();
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let next = dist[u].expect("queued nodes have distances") + 1;
            for &v in &self.neighbors[u] {
                if dist[v].is_none() {
                    dist[v] = Some(next);
                    queue.push_back(v);
                }
            }
        }
        dist
    }

    /// Label connected components by BFS, ids assigned in order of the
    /// smallest node contained in each component.
    pub fn connected_components(&self) -> ComponentLabeling {
        let n = self.node_count();
        let mut ids = vec![usize::MAX; n];
        let mut sizes = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..n {
            if ids[start] != usize::MAX {
                continue;
            }
            let id = sizes.len();
            let mut size = 0;
            ids[start] = id;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &v in &self.neighbors[u] {
                    if ids[v] == usize::MAX {
                        ids[v] = id;
                        queue.push_back(v);
                    }
                }
            }
            sizes.push(size);
        }
        // Ties broken by smallest id: strict > keeps the earlier component.
        let mut largest = 0;
        for (id, &size) in sizes.iter().enumerate() {
            if size > sizes[largest] {
                largest = id;
            }
        }
        ComponentLabeling {
            ids,
            sizes,
            largest,
        }
    }

    /// Induced subgraph on the largest connected component, nodes
    /// renumbered contiguously preserving relative order. The returned
    /// mapping sends old ids to new ids (`None` for dropped nodes).
    pub fn largest_component_subgraph(&self) -> (Graph, Vec<Option<NodeId>>) {
        let labeling = self.connected_components();
        let keep = labeling.largest_id();
        let mut mapping = vec![None; self.node_count()];
        let mut next = 0;
        for (u, slot) in mapping.iter_mut().enumerate() {
            if labeling.component_id(u) == keep {
                *slot = Some(next);
                next += 1;
            }
        }
        let mut subgraph = Graph::new(next).expect("largest component is nonempty");
        for (u, new_u) in mapping.iter().enumerate() {
            let Some(new_u) = *new_u else { continue };
            for &v in &self.neighbors[u] {
                if v > u {
                    let new_v = mapping[v].expect("neighbors share a component");
                    subgraph
                        .add_edge(new_u, new_v)
                        .expect("induced edges are unique and loop-free");
                }
            }
        }
        (subgraph, mapping)
    }

    /// Whether every node is reachable from node 0.
    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(|d| d.is_some())
    }

    /// Exact diameter (max eccentricity over all-sources BFS).
    ///
    /// Errors with [`Error::NotConnected`] on disconnected input rather
    /// than reporting an infinite value.
    pub fn diameter(&self) -> Result<usize> {
        Ok(self.path_length_stats()?.diameter)
    }

    /// Mean shortest-path length over unordered distinct pairs.
    pub fn average_path_length(&self) -> Result<f64> {
        Ok(self.path_length_stats()?.avg_path_length)
    }

    /// Diameter and average path length from one all-sources BFS pass.
    /// Sources run in parallel; the integer reduction makes the result
    /// independent of scheduling.
    pub fn path_length_stats(&self) -> Result<PathLengthStats> {
        let n = self.node_count();
        let per_source = (0..n)
            .into_par_iter()
            .map(|source| {
                let dist = self.bfs_distances(source);
                let mut ecc = 0usize;
                let mut sum = 0u64;
                for d in dist {
                    match d {
                        Some(d) => {
                            ecc = ecc.max(d);
                            sum += d as u64;
                        }
                        None => return None,
                    }
                }
                Some((ecc, sum))
            })
            .try_reduce(|| (0usize, 0u64), |a, b| Some((a.0.max(b.0), a.1 + b.1)));
        let (diameter, ordered_sum) = per_source.ok_or(Error::NotConnected)?;
        let pairs = (n * (n - 1) / 2) as u64;
        let avg_path_length = if pairs == 0 {
            0.0
        } else {
            // ordered_sum counts each unordered pair twice.
            (ordered_sum / 2) as f64 / pairs as f64
        };
        Ok(PathLengthStats {
            diameter,
            avg_path_length,
        })
    }

    /// Adjacent pairs among the non-loop neighbors of `u`.
    fn links_among_neighbors(&self, u: NodeId) -> usize {
        let nb = &self.neighbors[u];
        let mut links = 0usize;
        for i in 0..nb.len() {
            for j in (i + 1)..nb.len() {
                if self.has_edge(nb[i], nb[j]) {
                    links += 1;
                }
            }
        }
        links
    }

    /// Probability that two distinct non-loop neighbors of a common node
    /// are themselves adjacent, over all such (node, neighbor-pair)
    /// configurations. Self-loops never count as triangle edges. Returns
    /// 0 when no node has two neighbors.
    pub fn transitivity(&self) -> f64 {
        let mut closed = 0u64;
        let mut cherries = 0u64;
        for u in 0..self.node_count() {
            let k = self.neighbors[u].len() as u64;
            if k < 2 {
                continue;
            }
            cherries += k * (k - 1) / 2;
            closed += self.links_among_neighbors(u) as u64;
        }
        if cherries == 0 {
            0.0
        } else {
            closed as f64 / cherries as f64
        }
    }

    /// Mean local clustering coefficient over nodes with at least two
    /// non-loop neighbors: per-node fraction of neighbor pairs that are
    /// adjacent, averaged with equal node weight. Returns 0 when no node
    /// qualifies.
    pub fn average_local_clustering(&self) -> f64 {
        let mut total = 0.0;
        let mut counted = 0usize;
        for u in 0..self.node_count() {
            let k = self.neighbors[u].len();
            if k < 2 {
                continue;
            }
            total += self.links_among_neighbors(u) as f64 / (k * (k - 1) / 2) as f64;
            counted += 1;
        }
        if counted == 0 {
            0.0
        } else {
            total / counted as f64
        }
    }
}

/// Diameter and average path length of a connected graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathLengthStats {
    pub diameter: usize,
    pub avg_path_length: f64,
}

/// Partition of the nodes into connected components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentLabeling {
    ids: Vec<usize>,
    sizes: Vec<usize>,
    largest: usize,
}

impl ComponentLabeling {
    /// Component id of node `u`.
    pub fn component_id(&self, u: NodeId) -> usize {
        self.ids[u]
    }

    /// Per-node component ids.
    pub fn ids(&self) -> &[usize] {
        &self.ids
    }

    /// Per-component sizes, indexed by component id.
    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn component_count(&self) -> usize {
        self.sizes.len()
    }

    /// Id of the largest component (ties broken by smallest id).
    pub fn largest_id(&self) -> usize {
        self.largest
    }

    pub fn largest_size(&self) -> usize {
        self.sizes[self.largest]
    }
}
