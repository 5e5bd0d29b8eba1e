//! Small exact graphs (at most 64 vertices, one adjacency word per vertex),
//! plus the large sparse host graphs used by the experiments.

mod density;
mod graph6;
mod host;
mod iso;
mod json;

pub(crate) use density::densest_weighted;
pub use density::{classify_balance, density, max_density, BalanceClass, DensityWitness};
pub use graph6::{graph6_decode, graph6_encode};
pub use host::HostGraph;
pub use iso::{automorphism_count, count_induced_copies, count_induced_embeddings, find_induced_embedding};
pub use json::{parse_graph_text, LabeledGraphJson};

use std::collections::HashSet;

/// Maximum number of vertices of a [`PatternGraph`].
pub const MAX_PATTERN_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("vertex count {0} outside 1..=64")]
    BadOrder(usize),
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("expected {expected} labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("unknown vertex label {0:?}")]
    UnknownLabel(String),
    #[error("graph6 parse error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("graph JSON error: {0}")]
    Json(String),
}

/// Read-only adjacency access shared by pattern and host graphs.
pub trait GraphView {
    type Neighbors<'a>: Iterator<Item = usize>
    where
        Self: 'a;

    fn order(&self) -> usize;
    fn adjacent(&self, u: usize, v: usize) -> bool;
    fn neighbors(&self, u: usize) -> Self::Neighbors<'_>;
    fn degree(&self, u: usize) -> usize;
}

/// Iterator over the set bits of a `u64`, lowest first.
#[derive(Clone, Copy, Debug)]
pub struct Bits(pub u64);

impl Iterator for Bits {
    type Item = usize;
    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

/// Mask with the lowest `n` bits set.
#[inline]
pub fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Simple undirected graph on `0..n`, `1 <= n <= 64`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PatternGraph {
    n: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl PatternGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_PATTERN_VERTICES {
            return Err(GraphError::BadOrder(n));
        }
        Ok(PatternGraph { n, adj: vec![0; n], labels: None })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Result<Self, GraphError> {
        let mut g = Self::empty(n)?;
        for u in 0..n {
            g.adj[u] = full_mask(n) & !(1u64 << u);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self, GraphError> {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_edges(n, &edges)
    }

    /// Builds a graph directly from adjacency rows (must be symmetric, loop-free).
    pub fn from_adjacency(adj: Vec<u64>) -> Result<Self, GraphError> {
        let n = adj.len();
        let g = PatternGraph { n, adj, labels: None };
        if n == 0 || n > MAX_PATTERN_VERTICES {
            return Err(GraphError::BadOrder(n));
        }
        for u in 0..n {
            if g.adj[u] >> u & 1 == 1 {
                return Err(GraphError::SelfLoop(u));
            }
            if g.adj[u] & !full_mask(n) != 0 {
                return Err(GraphError::VertexOutOfRange { v: 63 - g.adj[u].leading_zeros() as usize, n });
            }
            for v in Bits(g.adj[u]) {
                if g.adj[v] >> u & 1 == 0 {
                    return Err(GraphError::Json(format!("asymmetric adjacency between {u} and {v}")));
                }
            }
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::VertexOutOfRange { v: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount { expected: self.n, got: labels.len() });
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(GraphError::DuplicateLabel(l.clone()));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Vertex carrying `label`, if labels are present.
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|l| l == label)
    }

    #[inline]
    pub fn adj_mask(&self, u: usize) -> u64 {
        self.adj[u]
    }

    pub fn adjacency(&self) -> &[u64] {
        &self.adj
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    /// Number of edges with both ends in `mask`.
    #[inline]
    pub fn edges_within(&self, mask: u64) -> usize {
        Bits(mask).map(|v| (self.adj[v] & mask).count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in Bits(self.adj[u] >> u >> 1) {
                out.push((u, u + 1 + v));
            }
        }
        out
    }

    /// Induced subgraph on the vertices of `mask`, renumbered in increasing order.
    /// Labels are carried over.
    pub fn induced(&self, mask: u64) -> Result<PatternGraph, GraphError> {
        let verts: Vec<usize> = Bits(mask & self.vertex_mask()).collect();
        self.induced_on(&verts)
    }

    /// Induced subgraph on `verts` (distinct), vertex `i` of the result being `verts[i]`.
    pub fn induced_on(&self, verts: &[usize]) -> Result<PatternGraph, GraphError> {
        let mut g = PatternGraph::empty(verts.len())?;
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j)?;
                }
            }
        }
        if let Some(l) = &self.labels {
            g.labels = Some(verts.iter().map(|&v| l[v].clone()).collect());
        }
        Ok(g)
    }

    /// Disjoint union, `self` first.
    pub fn disjoint_union(&self, other: &PatternGraph) -> Result<PatternGraph, GraphError> {
        let mut g = PatternGraph::empty(self.n + other.n)?;
        for (u, v) in self.edges() {
            g.add_edge(u, v)?;
        }
        for (u, v) in other.edges() {
            g.add_edge(self.n + u, self.n + v)?;
        }
        Ok(g)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = 1u64;
        let mut frontier = 1u64;
        while frontier != 0 {
            let mut next = 0;
            for v in Bits(frontier) {
                next |= self.adj[v];
            }
            frontier = next & !seen;
            seen |= next;
        }
        seen == self.vertex_mask()
    }
}

impl GraphView for PatternGraph {
    type Neighbors<'a> = Bits;

    fn order(&self) -> usize {
        self.n
    }
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }
    fn neighbors(&self, u: usize) -> Bits {
        Bits(self.adj[u])
    }
    fn degree(&self, u: usize) -> usize {
        self.adj[u].count_ones() as usize
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_input() {
        assert_eq!(PatternGraph::empty(0), Err(GraphError::BadOrder(0)));
        assert_eq!(PatternGraph::empty(65), Err(GraphError::BadOrder(65)));
        assert_eq!(PatternGraph::from_edges(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert!(PatternGraph::from_edges(3, &[(0, 3)]).is_err());
        let g = PatternGraph::empty(2).unwrap();
        assert!(g.with_labels(vec!["a".into(), "a".into()]).is_err());
    }

    #[test]
    fn counts_and_induced() {
        let k4 = PatternGraph::complete(4).unwrap();
        assert_eq!(k4.edge_count(), 6);
        assert_eq!(k4.edges_within(0b0111), 3);
        let sub = k4.induced(0b1011).unwrap();
        assert_eq!(sub.n(), 3);
        assert_eq!(sub.edge_count(), 3);
        let k64 = PatternGraph::complete(64).unwrap();
        assert_eq!(k64.edge_count(), 64 * 63 / 2);
    }

    #[test]
    fn connectivity() {
        assert!(PatternGraph::cycle(5).unwrap().is_connected());
        let two = PatternGraph::complete(2).unwrap().disjoint_union(&PatternGraph::complete(2).unwrap()).unwrap();
        assert!(!two.is_connected());
    }
}
