//! Undirected simple graph with an optional geometric embedding.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// Dense node index in `[0, n)`. Stable for the lifetime of a topology.
pub type NodeId = usize;

/// A point in the square simulation area.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Position<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Position<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }

    pub fn dist(&self, other: &Self) -> T {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        (dx * dx + dy * dy).sqrt()
    }
}

/// Geometric context of an embedded topology: per-node positions inside a
/// square of the given side length, plus the uniform transmission range the
/// node set was (or would be) linked with.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Embedding<T> {
    pub positions: Vec<Position<T>>,
    pub side: T,
    pub range: T,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("node id {id} out of range for {n} nodes")]
    InvalidNode { id: NodeId, n: usize },
    #[error("self-loop at node {0}")]
    SelfLoop(NodeId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(NodeId, NodeId),
    #[error("edge ({0}, {1}) not present")]
    EdgeAbsent(NodeId, NodeId),
    #[error("embedding size {positions} does not match node count {n}")]
    EmbeddingMismatch { positions: usize, n: usize },
}

/// Undirected simple graph. Neighbor lists are kept sorted so that edge
/// queries, set intersections, and iteration order are all deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct Topology<T> {
    adj: Vec<Vec<NodeId>>,
    edge_count: usize,
    embedding: Option<Embedding<T>>,
}

impl<T: Scalar> Topology<T> {
    /// Edgeless graph on `n` nodes.
    pub fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            embedding: None,
        }
    }

    /// Edgeless embedded graph. `side` and `range` describe the simulation
    /// area; no unit-disk linking is performed here.
    pub fn with_embedding(
        positions: Vec<Position<T>>,
        side: T,
        range: T,
    ) -> Self {
        let n = positions.len();
        Self {
            adj: vec![Vec::new(); n],
            edge_count: 0,
            embedding: Some(Embedding {
                positions,
                side,
                range,
            }),
        }
    }

    pub fn node_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn embedding(&self) -> Option<&Embedding<T>> {
        self.embedding.as_ref()
    }

    /// Drops the geometric embedding, keeping the graph structure.
    pub fn strip_embedding(&mut self) {
        self.embedding = None;
    }

    pub fn check_node(&self, v: NodeId) -> Result<(), GraphError> {
        if v < self.adj.len() {
            Ok(())
        } else {
            Err(GraphError::InvalidNode {
                id: v,
                n: self.adj.len(),
            })
        }
    }

    /// Sorted neighbor list of `v`. Panics on out-of-range ids; use
    /// [`Topology::check_node`] first on untrusted input.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: NodeId, v: NodeId) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Inserts the undirected edge `(u, v)`.
    pub fn add_edge(&mut self, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let pos_u = match self.adj[u].binary_search(&v) {
            Ok(_) => return Err(GraphError::DuplicateEdge(u, v)),
            Err(pos) => pos,
        };
        self.adj[u].insert(pos_u, v);
        let pos_v = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos_v, u);
        self.edge_count += 1;
        Ok(())
    }

    /// Removes the undirected edge `(u, v)`.
    pub fn remove_edge(&mut self, u: NodeId, v: NodeId) -> Result<(), GraphError> {
        self.check_node(u)?;
        self.check_node(v)?;
        let pos_u = self.adj[u]
            .binary_search(&v)
            .map_err(|_| GraphError::EdgeAbsent(u, v))?;
        self.adj[u].remove(pos_u);
        let pos_v = self.adj[v].binary_search(&u).expect("adjacency symmetric");
        self.adj[v].remove(pos_v);
        self.edge_count -= 1;
        Ok(())
    }

    /// All edges as `(u, v)` pairs with `u < v`, in ascending order.
    pub fn edges(&self) -> Vec<(NodeId, NodeId)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (u, neigh) in self.adj.iter().enumerate() {
            for &v in neigh {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Sorted intersection size `|N(u) ∩ N(v)|`.
    pub fn common_neighbor_count(&self, u: NodeId, v: NodeId) -> usize {
        merge_count(&self.adj[u], &self.adj[v])
    }

    /// Sorted intersection `N(u) ∩ N(v)`.
    pub fn common_neighbors(&self, u: NodeId, v: NodeId) -> Vec<NodeId> {
        let (a, b) = (&self.adj[u], &self.adj[v]);
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    out.push(a[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out
    }

    /// Euclidean length of an existing edge; `None` without an embedding.
    pub fn edge_length(&self, u: NodeId, v: NodeId) -> Option<T> {
        self.embedding
            .as_ref()
            .map(|e| e.positions[u].dist(&e.positions[v]))
    }

    /// Node ids of the largest connected component, plus the sub-topology
    /// induced by it (nodes re-indexed densely, embedding carried over).
    pub fn largest_component(&self) -> (Vec<NodeId>, Topology<T>) {
        let n = self.node_count();
        let mut comp = vec![usize::MAX; n];
        let mut best: (usize, usize) = (0, 0); // (size, component id)
        let mut ncomp = 0;
        let mut queue = std::collections::VecDeque::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = ncomp;
            ncomp += 1;
            let mut size = 0;
            comp[start] = id;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                size += 1;
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        queue.push_back(w);
                    }
                }
            }
            if size > best.0 {
                best = (size, id);
            }
        }
        let members: Vec<NodeId> = (0..n).filter(|&v| comp[v] == best.1).collect();
        let mut dense = vec![usize::MAX; n];
        for (i, &v) in members.iter().enumerate() {
            dense[v] = i;
        }
        let mut sub = match &self.embedding {
            Some(e) => Topology::with_embedding(
                members.iter().map(|&v| e.positions[v]).collect(),
                e.side,
                e.range,
            ),
            None => Topology::new(members.len()),
        };
        for &v in &members {
            for &w in &self.adj[v] {
                if v < w {
                    sub.add_edge(dense[v], dense[w]).expect("induced edge");
                }
            }
        }
        (members, sub)
    }

    /// True when removing edge `(u, v)` would leave `u` and `v` in the same
    /// component. Early-exit BFS from `u` toward `v` that ignores the edge
    /// itself; cheap when a short detour exists.
    pub fn connected_without_edge(&self, u: NodeId, v: NodeId) -> bool {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut queue = std::collections::VecDeque::new();
        seen[u] = true;
        queue.push_back(u);
        while let Some(x) = queue.pop_front() {
            for &w in &self.adj[x] {
                if x == u && w == v {
                    continue;
                }
                if w == v {
                    return true;
                }
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        false
    }
}

fn merge_count(a: &[NodeId], b: &[NodeId]) -> usize {
    let (mut i, mut j, mut count) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                count += 1;
                i += 1;
                j += 1;
            }
        }
    }
    count
}

/// Convenience constructors for fixtures and tests.
impl<T: Scalar> Topology<T> {
    /// Graph from an explicit edge list.
    pub fn from_edges(n: usize, edges: &[(NodeId, NodeId)]) -> Result<Self, GraphError> {
        let mut t = Self::new(n);
        for &(u, v) in edges {
            t.add_edge(u, v)?;
        }
        Ok(t)
    }

    /// Complete graph on `n` nodes.
    pub fn complete(n: usize) -> Self {
        let mut t = Self::new(n);
        for u in 0..n {
            for v in (u + 1)..n {
                t.add_edge(u, v).expect("fresh edge");
            }
        }
        t
    }

    /// Path 0 - 1 - ... - (n-1).
    pub fn path(n: usize) -> Self {
        let mut t = Self::new(n);
        for u in 1..n {
            t.add_edge(u - 1, u).expect("fresh edge");
        }
        t
    }

    /// Cycle on `n >= 3` nodes.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycle needs at least 3 nodes");
        let mut t = Self::path(n);
        t.add_edge(n - 1, 0).expect("fresh edge");
        t
    }

    /// Star with the center at node 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let mut t = Self::new(leaves + 1);
        for v in 1..=leaves {
            t.add_edge(0, v).expect("fresh edge");
        }
        t
    }
}
