//! Rooted pairs `(G, H)`, α-deficiencies and α-safety, strict extensions in
//! host graphs, and the full level-r extension property.

mod restaurant;
mod safety;
mod strict;

pub use restaurant::{has_full_extension_property, has_full_extension_property_naive, FailingDemand};
pub use safety::{
    is_alpha_safe, is_alpha_safe_with, safety_threshold, safety_threshold_with, SafetyOptions, SafetyThreshold,
    SafetyVerdict, DEFAULT_FREE_VERTEX_CAP,
};
pub use strict::{count_strict_extensions, find_strict_extension, for_each_strict_extension};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::graph::{full_mask, parse_graph_text, Bits, GraphError, LabeledGraphJson, PatternGraph};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("root count {roots} outside 1..={n}")]
    BadRootCount { roots: usize, n: usize },
    #[error("duplicate root {0}")]
    DuplicateRoot(usize),
    #[error("pair has no non-root vertices")]
    NoExtension,
    #[error("vertex subset misses root {0}")]
    MissingRoot(usize),
    #[error("alpha must be positive, got {0}")]
    NonPositiveAlpha(Rational),
    #[error("instance too large: {free} non-root vertices exceed the cap of {cap}")]
    TooLarge { free: usize, cap: usize },
    #[error("root image has {got} vertices, pair has {want} roots")]
    RootImageLength { got: usize, want: usize },
    #[error("root image vertex {0} repeated or out of range")]
    BadRootImage(usize),
}

/// A graph `g` whose first `root_count` vertices span the induced subgraph `H`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RootedPair {
    g: PatternGraph,
    root_count: usize,
}

impl RootedPair {
    pub fn new(g: PatternGraph, root_count: usize) -> Result<Self, ExtensionError> {
        if root_count == 0 || root_count > g.n() {
            return Err(ExtensionError::BadRootCount { roots: root_count, n: g.n() });
        }
        Ok(RootedPair { g, root_count })
    }

    /// Renumbers `g` so that `roots` (in the given order) come first,
    /// remaining vertices keeping their relative order.
    pub fn with_roots(g: &PatternGraph, roots: &[usize]) -> Result<Self, ExtensionError> {
        let mut seen = 0u64;
        for &r in roots {
            if r >= g.n() {
                return Err(GraphError::VertexOutOfRange { v: r, n: g.n() }.into());
            }
            if seen >> r & 1 == 1 {
                return Err(ExtensionError::DuplicateRoot(r));
            }
            seen |= 1 << r;
        }
        let order: Vec<usize> = roots.iter().copied().chain(Bits(g.vertex_mask() & !seen)).collect();
        RootedPair::new(g.induced_on(&order)?, roots.len())
    }

    pub fn g(&self) -> &PatternGraph {
        &self.g
    }

    pub fn root_count(&self) -> usize {
        self.root_count
    }

    pub fn root_mask(&self) -> u64 {
        full_mask(self.root_count)
    }

    /// `H`, the subgraph induced on the roots.
    pub fn h(&self) -> PatternGraph {
        self.g.induced(self.root_mask()).expect("root count >= 1")
    }

    /// `v(G, H)`.
    pub fn free_count(&self) -> usize {
        self.g.n() - self.root_count
    }

    /// `e(G, H)`.
    pub fn extension_edges(&self) -> usize {
        self.g.edge_count() - self.g.edges_within(self.root_mask())
    }

    /// Edges among roots.
    pub fn h_edges(&self) -> Vec<(usize, usize)> {
        self.g.edges().into_iter().filter(|&(u, v)| u < self.root_count && v < self.root_count).collect()
    }

    /// Non-root adjacency in local indices (vertex `root_count + i` ↦ `i`)
    /// and each non-root vertex's number of root neighbours.
    pub(crate) fn free_structure(&self) -> (Vec<u64>, Vec<u64>) {
        let k = self.root_count;
        let adj = (k..self.g.n()).map(|u| self.g.adj_mask(u) >> k).collect();
        let w = (k..self.g.n()).map(|u| (self.g.adj_mask(u) & self.root_mask()).count_ones() as u64).collect();
        (adj, w)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "graph": LabeledGraphJson::from_graph(&self.g),
            "graph6": self.g.to_graph6(),
            "roots": (0..self.root_count).collect::<Vec<_>>(),
        })
    }

    /// Parses `{"graph": <graph6 string | labeled JSON>, "roots": [..]}`.
    pub fn from_json_str(text: &str) -> Result<Self, ExtensionError> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum GraphField {
            Text(String),
            Labeled(LabeledGraphJson),
        }
        #[derive(Deserialize)]
        struct PairJson {
            graph: GraphField,
            roots: Vec<usize>,
        }
        let raw: PairJson = serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let g = match raw.graph {
            GraphField::Text(s) => parse_graph_text(&s)?,
            GraphField::Labeled(l) => l.to_graph()?,
        };
        RootedPair::with_roots(&g, &raw.roots)
    }
}

/// `f_α(S, H) = v(S, H) − α·e(S, H)` for `S = g[s]`, `s` containing all roots.
pub fn deficiency(p: &RootedPair, s: &[usize], alpha: Rational) -> Result<Rational, ExtensionError> {
    let mut mask = 0u64;
    for &v in s {
        if v >= p.g.n() {
            return Err(GraphError::VertexOutOfRange { v, n: p.g.n() }.into());
        }
        mask |= 1 << v;
    }
    if let Some(r) = Bits(p.root_mask() & !mask).next() {
        return Err(ExtensionError::MissingRoot(r));
    }
    let v = (mask.count_ones() as usize - p.root_count) as i128;
    let e = (p.g.edges_within(mask) - p.g.edges_within(p.root_mask())) as i128;
    Ok(Rational::from_int(v) - alpha * Rational::from_int(e))
}

/// Adjacency pattern `e⃗ = (e_1, …, e_m)` of a vertex towards an ordered list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AdjacencyPattern(pub Vec<bool>);

impl AdjacencyPattern {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|e⃗| = Σ e_i`.
    pub fn weight(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i]
    }

    pub fn zeros(m: usize) -> Self {
        AdjacencyPattern(vec![false; m])
    }

    /// All `2^m` patterns of length `m`, in binary counting order.
    pub fn all(m: usize) -> impl Iterator<Item = AdjacencyPattern> {
        (0u64..1 << m).map(move |bits| AdjacencyPattern((0..m).map(|i| bits >> (m - 1 - i) & 1 == 1).collect()))
    }
}

impl fmt::Display for AdjacencyPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for AdjacencyPattern {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(format!("adjacency pattern must be a 0/1 string, got {s:?}")),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(AdjacencyPattern)
    }
}
