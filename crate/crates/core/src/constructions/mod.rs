//! Builders for the concrete graphs, rooted pairs and bound expressions of the
//! depth-4 analysis and of the general-k constructions, each with the vertex
//! and edge counts it is expected to reproduce.

mod bounds;
mod k4;
mod lower;

pub use bounds::{
    bound_formula, bound_formulas, check_bound_identity, check_bound_inequality, eval_bound_formula, BoundError,
    BoundFormula,
};
pub use k4::{
    build_base_h, build_case_h0, build_g0, build_k4_companion_pair, case_h0_spec, g0_from_golden, g0_step_report,
    region_instances, region_threshold, CaseSpec, Companion, G0Part, RegionInstance, StepCheck, G0_GRAPH6,
};
pub use lower::{build_lower_pair, build_phi_k_witness, lower_pair_non_roots, phi_k_witness_order};

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde_json::json;

use crate::extensions::{AdjacencyPattern, ExtensionError, RootedPair};
use crate::graph::{GraphError, LabeledGraphJson, PatternGraph};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error("unknown construction id {0:?}")]
    UnknownId(String),
    #[error("case must be in 1..=13, got {0}")]
    CaseOutOfRange(usize),
    #[error("lemma must be 1, 2 or 3, got {0}")]
    BadLemma(usize),
    #[error("k = {k} outside the supported range {min}..={max}")]
    KOutOfRange { k: usize, min: usize, max: usize },
    #[error("adjacency pattern has length {got}, expected {want}")]
    PatternLength { got: usize, want: usize },
    #[error("adjacency pattern has weight {weight}, at most {max} allowed")]
    PatternWeight { weight: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
}

/// Identifier of a buildable object; `Display`/`FromStr` use the CLI syntax
/// `base-h`, `g0`, `case:N`, `companion:c|d`, `pair:L:K[:bits]`, `phi-witness:K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionId {
    BaseH,
    CaseH0(usize),
    G0,
    Companion(Companion),
    LowerPair { lemma: usize, k: usize, pattern: AdjacencyPattern },
    PhiKWitness(usize),
}

impl fmt::Display for ConstructionId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstructionId::BaseH => write!(f, "base-h"),
            ConstructionId::CaseH0(c) => write!(f, "case:{c}"),
            ConstructionId::G0 => write!(f, "g0"),
            ConstructionId::Companion(Companion::C) => write!(f, "companion:c"),
            ConstructionId::Companion(Companion::D) => write!(f, "companion:d"),
            ConstructionId::LowerPair { lemma, k, pattern } => write!(f, "pair:{lemma}:{k}:{pattern}"),
            ConstructionId::PhiKWitness(k) => write!(f, "phi-witness:{k}"),
        }
    }
}

impl FromStr for ConstructionId {
    type Err = ConstructionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || ConstructionError::UnknownId(s.to_string());
        let num = |t: &str| t.parse::<usize>().map_err(|_| unknown());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["base-h"] => Ok(ConstructionId::BaseH),
            ["g0"] => Ok(ConstructionId::G0),
            ["case", n] => Ok(ConstructionId::CaseH0(num(n)?)),
            ["companion", "c"] => Ok(ConstructionId::Companion(Companion::C)),
            ["companion", "d"] => Ok(ConstructionId::Companion(Companion::D)),
            ["phi-witness", k] => Ok(ConstructionId::PhiKWitness(num(k)?)),
            ["pair", l, k] => {
                let (lemma, k) = (num(l)?, num(k)?);
                let len = lower::pattern_length(lemma, k)?;
                Ok(ConstructionId::LowerPair { lemma, k, pattern: AdjacencyPattern::zeros(len) })
            }
            ["pair", l, k, bits] => Ok(ConstructionId::LowerPair {
                lemma: num(l)?,
                k: num(k)?,
                pattern: bits.parse().map_err(|_| unknown())?,
            }),
            _ => Err(unknown()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionObject {
    Graph(PatternGraph),
    Pair(RootedPair),
}

/// A built object together with the counts it must reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedConstruction {
    pub id: ConstructionId,
    pub object: ConstructionObject,
    /// Expected `(v, e)`; for pairs these are `(v(G,H), e(G,H))`.
    pub expected: Option<(usize, usize)>,
    pub notes: String,
}

impl NamedConstruction {
    /// The underlying graph (for pairs, the full graph `G`).
    pub fn graph(&self) -> &PatternGraph {
        match &self.object {
            ConstructionObject::Graph(g) => g,
            ConstructionObject::Pair(p) => p.g(),
        }
    }

    pub fn pair(&self) -> Option<&RootedPair> {
        match &self.object {
            ConstructionObject::Pair(p) => Some(p),
            ConstructionObject::Graph(_) => None,
        }
    }

    /// `(v, e)` for graphs, `(v(G,H), e(G,H))` for pairs.
    pub fn counts(&self) -> (usize, usize) {
        match &self.object {
            ConstructionObject::Graph(g) => (g.n(), g.edge_count()),
            ConstructionObject::Pair(p) => (p.free_count(), p.extension_edges()),
        }
    }

    /// True when no expectation is recorded or the counts match it exactly.
    pub fn matches_expected(&self) -> bool {
        self.expected.is_none_or(|e| e == self.counts())
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = self.graph();
        let mut v = json!({
            "id": self.id.to_string(),
            "graph6": g.to_graph6(),
            "graph": LabeledGraphJson::from_graph(g),
            "counts": self.counts(),
            "expected": self.expected,
            "notes": self.notes,
        });
        if let Some(p) = self.pair() {
            v["roots"] = json!((0..p.root_count()).collect::<Vec<_>>());
        }
        v
    }
}

/// Builds any construction by id.
pub fn build(id: &ConstructionId) -> Result<NamedConstruction, ConstructionError> {
    match id {
        ConstructionId::BaseH => Ok(build_base_h()),
        ConstructionId::CaseH0(c) => build_case_h0(*c),
        ConstructionId::G0 => Ok(build_g0()),
        ConstructionId::Companion(which) => Ok(k4::companion_construction(*which)),
        ConstructionId::LowerPair { lemma, k, pattern } => lower::lower_pair_construction(*lemma, *k, pattern),
        ConstructionId::PhiKWitness(k) => build_phi_k_witness(*k),
    }
}

/// Incremental builder for graphs with named vertices.
#[derive(Default)]
pub(crate) struct Labeled {
    names: Vec<String>,
    index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
}

impl Labeled {
    pub(crate) fn vertex(&mut self, name: &str) -> usize {
        assert!(!self.index.contains_key(name), "vertex {name} added twice");
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        self.names.len() - 1
    }

    pub(crate) fn id(&self, name: &str) -> usize {
        self.index[name]
    }

    pub(crate) fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub(crate) fn edge(&mut self, a: &str, b: &str) {
        let e = (self.id(a), self.id(b));
        self.edges.push(e);
    }

    /// Adds `v` (if new) and joins it to each of `others`.
    pub(crate) fn join(&mut self, v: &str, others: &[&str]) {
        if !self.contains(v) {
            self.vertex(v);
        }
        for o in others {
            self.edge(v, o);
        }
    }

    pub(crate) fn snapshot(&self) -> Result<PatternGraph, GraphError> {
        PatternGraph::from_edges(self.names.len(), &self.edges)?.with_labels(self.names.clone())
    }

    pub(crate) fn finish(self) -> Result<PatternGraph, GraphError> {
        PatternGraph::from_edges(self.names.len(), &self.edges)?.with_labels(self.names)
    }
}
