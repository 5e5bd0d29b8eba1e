//! Large sparse graphs: sorted adjacency lists plus a hashed edge set.

use std::collections::HashSet;

use super::{GraphError, GraphView, PatternGraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HostGraph {
    adj: Vec<Vec<u32>>,
    edge_set: HashSet<u64>,
}

#[inline]
fn key(u: usize, v: usize) -> u64 {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    (a as u64) << 32 | b as u64
}

impl HostGraph {
    /// Builds from an edge list; duplicate edges are merged.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, GraphError> {
        let mut adj = vec![Vec::new(); n];
        let mut edge_set = HashSet::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { v: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if edge_set.insert(key(u, v)) {
                adj[u].push(v as u32);
                adj[v].push(u as u32);
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(HostGraph { adj, edge_set })
    }

    pub fn from_pattern(g: &PatternGraph) -> Self {
        HostGraph::from_edges(g.n(), g.edges()).expect("pattern graphs are simple")
    }

    /// Converts to a pattern graph when `n <= 64`.
    pub fn to_pattern(&self) -> Result<PatternGraph, GraphError> {
        let mut g = PatternGraph::empty(self.n())?;
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                if (v as usize) > u {
                    g.add_edge(u, v as usize)?;
                }
            }
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_set.len()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.edge_set.contains(&key(u, v))
    }

    /// Sorted neighbour list.
    #[inline]
    pub fn neighbor_list(&self, u: usize) -> &[u32] {
        &self.adj[u]
    }
}

impl GraphView for HostGraph {
    type Neighbors<'a> = std::iter::Map<std::slice::Iter<'a, u32>, fn(&u32) -> usize>;

    fn order(&self) -> usize {
        self.n()
    }
    fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v)
    }
    fn neighbors(&self, u: usize) -> Self::Neighbors<'_> {
        self.adj[u].iter().map((|&v| v as usize) as fn(&u32) -> usize)
    }
    fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic() {
        let h = HostGraph::from_edges(4, [(0, 1), (1, 0), (2, 1), (3, 1)]).unwrap();
        assert_eq!(h.edge_count(), 3);
        assert_eq!(h.neighbor_list(1), &[0, 2, 3]);
        assert!(h.has_edge(2, 1) && !h.has_edge(0, 2) && !h.has_edge(1, 1));
        let p = h.to_pattern().unwrap();
        assert_eq!(HostGraph::from_pattern(&p), h);
        assert!(HostGraph::from_edges(2, [(0, 0)]).is_err());
    }
}
