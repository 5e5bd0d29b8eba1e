//! Labeled JSON graph form `{"n": .., "edges": [[u, v], ..], "labels": [..]}`
//! and auto-detection between it and graph6.

use serde::{Deserialize, Serialize};

use super::{graph6_decode, graph6_encode, GraphError, PatternGraph};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledGraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl LabeledGraphJson {
    pub fn from_graph(g: &PatternGraph) -> Self {
        LabeledGraphJson {
            n: g.n(),
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels().map(|l| l.to_vec()),
        }
    }

    pub fn to_graph(&self) -> Result<PatternGraph, GraphError> {
        let mut g = PatternGraph::empty(self.n)?;
        for &[u, v] in &self.edges {
            g.add_edge(u, v)?;
        }
        match &self.labels {
            Some(l) => g.with_labels(l.clone()),
            None => Ok(g),
        }
    }
}

impl PatternGraph {
    pub fn to_graph6(&self) -> String {
        graph6_encode(self)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(LabeledGraphJson::from_graph(self)).expect("plain data serializes")
    }
}

/// Parses either graph6 or labeled JSON, chosen by the first non-blank byte
/// (`{` means JSON). Extra JSON fields are ignored; for graph6 only the first
/// line is read.
pub fn parse_graph_text(text: &str) -> Result<PatternGraph, GraphError> {
    let t = text.trim_start();
    if t.starts_with('{') {
        let v: LabeledGraphJson = serde_json::from_str(t).map_err(|e| GraphError::Json(e.to_string()))?;
        v.to_graph()
    } else {
        let line = t.lines().next().unwrap_or("").trim_end();
        let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
        graph6_decode(line)
    }
}
