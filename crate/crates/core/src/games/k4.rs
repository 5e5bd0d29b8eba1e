//! Duplicator's strategy for the 4-round existential game against a graph
//! that contains G_0 together with the two companion extensions.
//!
//! Spoiler plays in an arbitrary graph; Duplicator answers in the host:
//! round 1 with `x`, round 2 with `a` (adjacent pick) or `b` (non-adjacent
//! pick), round 3 with the level-1 vertex of G_0 realising the adjacency
//! pattern (or `c`/`d` when Spoiler's pick is adjacent to neither), and in
//! round 4 with a G_0 or companion vertex for patterns with two or more
//! adjacencies and with a strict extension of a single vertex for patterns
//! with at most one.

use std::collections::HashMap;

use super::{extends_partial_iso, GamePosition, Side};
use crate::constructions::{build_g0, build_k4_companion_pair, Companion, Labeled};
use crate::extensions::{find_strict_extension, RootedPair};
use crate::graph::{Bits, GraphView, PatternGraph};
use crate::logic::phi4_level1;

/// Order of the synthetic host used to check the strategy exhaustively.
pub const K4_HOST_ORDER: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum StrategyError {
    #[error("strategy has no answer in round {round}: {reason}")]
    AssumptionViolated { round: usize, reason: String },
    #[error("host is not marked correctly: {0}")]
    BadHost(String),
}

/// A labelled host graph containing G_0 and both companions, with every
/// answer of the strategy precomputed.
#[derive(Clone, Debug)]
pub struct K4Host {
    graph: PatternGraph,
    /// Answer for the distinct host vertices played so far and the
    /// adjacency bits of Spoiler's new pick towards them (bit `i` = adjacent
    /// to the `i`-th).
    table: HashMap<(Vec<usize>, u8), usize>,
}

impl K4Host {
    /// Marks a host by its labels. G_0's vertices and the companion
    /// vertices `c, c__1_0, c__0_1, d, d__1_0, d__0_1` must be present and
    /// induce the expected graphs.
    pub fn from_labeled(graph: PatternGraph) -> Result<Self, StrategyError> {
        let bad = |m: String| StrategyError::BadHost(m);
        let find = |name: &str| graph.vertex(name).ok_or_else(|| bad(format!("missing vertex {name}")));
        let g0 = build_g0();
        let g0 = g0.graph();
        let g0_labels = g0.labels().expect("G_0 is labelled");
        let image: Vec<usize> = g0_labels.iter().map(|l| find(l)).collect::<Result<_, _>>()?;
        for u in 0..g0.n() {
            for v in u + 1..g0.n() {
                if g0.has_edge(u, v) != graph.has_edge(image[u], image[v]) {
                    return Err(bad(format!("{} and {} disagree with G_0", g0_labels[u], g0_labels[v])));
                }
            }
        }
        for which in [Companion::C, Companion::D] {
            let pair = build_k4_companion_pair(which);
            let (roots, news) = which.names();
            let names: Vec<&str> = roots.iter().chain(news.iter()).copied().collect();
            let ids: Vec<usize> = names.iter().map(|n| find(n)).collect::<Result<_, _>>()?;
            for u in 0..ids.len() {
                for v in u + 1..ids.len() {
                    if pair.g().has_edge(u, v) != graph.has_edge(ids[u], ids[v]) {
                        return Err(bad(format!("{} and {} disagree with the companion", names[u], names[v])));
                    }
                }
            }
        }
        let g0_mask = image.iter().fold(0u64, |m, &v| m | 1 << v);
        let mut host = K4Host { graph, table: HashMap::new() };
        host.fill_table(g0_mask)?;
        Ok(host)
    }

    pub fn graph(&self) -> &PatternGraph {
        &self.graph
    }

    fn id(&self, name: &str) -> usize {
        self.graph.vertex(name).expect("checked on construction")
    }

    /// Vertex outside `played` whose adjacency to `played` is `bits`.
    fn realiser(&self, played: &[usize], bits: u8, within: u64) -> Option<usize> {
        let mut m = within & self.graph.vertex_mask();
        for (i, &y) in played.iter().enumerate() {
            m &= !(1u64 << y);
            m &= if bits >> i & 1 == 1 { self.graph.adj_mask(y) } else { !self.graph.adj_mask(y) };
        }
        Bits(m).next()
    }

    /// A strict extension of one new vertex with adjacency `bits` over
    /// `played` (the safe-extension fallback for sparse patterns).
    fn extension_answer(&self, played: &[usize], bits: u8) -> Option<usize> {
        let k = played.len();
        let mut edges = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                if self.graph.has_edge(played[i], played[j]) {
                    edges.push((i, j));
                }
            }
            if bits >> i & 1 == 1 {
                edges.push((i, k));
            }
        }
        let g = PatternGraph::from_edges(k + 1, &edges).ok()?;
        let pair = RootedPair::new(g, k).ok()?;
        find_strict_extension(&self.graph, &pair, played).ok().flatten().map(|img| img[0])
    }

    fn fill_table(&mut self, g0_mask: u64) -> Result<(), StrategyError> {
        let (x, a, b) = (self.id("x"), self.id("a"), self.id("b"));
        self.table.insert((vec![], 0), x);
        self.table.insert((vec![x], 1), a);
        self.table.insert((vec![x], 0), b);
        for (s, s_id, comp) in [("a", a, "c"), ("b", b, "d")] {
            let [z11, z10, z01] = phi4_level1(s);
            let third = [(0b11, z11.as_str()), (0b01, z10.as_str()), (0b10, z01.as_str()), (0b00, comp)];
            for (bits, name) in third {
                let z = self.id(name);
                self.table.insert((vec![x, s_id], bits), z);
                for bits4 in 0u8..8 {
                    let played = vec![x, s_id, z];
                    let answer = if bits4.count_ones() <= 1 {
                        self.extension_answer(&played, bits4)
                    } else if name == comp {
                        // Rounds 3-4 through the companion: a_1_1, a'_1_1, c__1_0, c__0_1.
                        let named = match bits4 {
                            0b111 => format!("{s}_1_1"),
                            0b011 => format!("{s}p_1_1"),
                            0b101 => format!("{comp}__1_0"),
                            _ => format!("{comp}__0_1"),
                        };
                        Some(self.id(&named))
                    } else {
                        self.realiser(&played, bits4, g0_mask)
                    };
                    if let Some(y) = answer {
                        if self.realiser(&played, bits4, 1 << y).is_none() {
                            return Err(StrategyError::BadHost(format!(
                                "answer {y} does not realise pattern {bits4:03b} over {name}"
                            )));
                        }
                        self.table.insert((played, bits4), y);
                    }
                }
            }
        }
        Ok(())
    }

    /// `(played, bits)` combinations reachable against some Spoiler graph
    /// that the host cannot answer.
    pub fn gaps(&self) -> Vec<(Vec<usize>, u8)> {
        let mut out = Vec::new();
        for ((played, _), &z) in self.table.iter().filter(|((p, _), _)| p.len() == 2) {
            for bits in 0u8..8 {
                let key = ([played.clone(), vec![z]].concat(), bits);
                if !self.table.contains_key(&key) {
                    out.push(key);
                }
            }
        }
        out.sort();
        out
    }
}

/// G_0, both companions, and for every sparse round-4 pattern that G_0 and
/// the companions do not already realise a new vertex realising it, padded
/// with isolated vertices to [`K4_HOST_ORDER`] vertices.
pub fn k4_synthetic_host() -> K4Host {
    let g0 = build_g0();
    let g0 = g0.graph();
    let mut l = Labeled::default();
    let labels = g0.labels().expect("G_0 is labelled");
    for name in labels {
        l.vertex(name);
    }
    for (u, v) in g0.edges() {
        l.edge(&labels[u], &labels[v]);
    }
    for which in [Companion::C, Companion::D] {
        let pair = build_k4_companion_pair(which);
        let (roots, news) = which.names();
        let names: Vec<&str> = roots.iter().chain(news.iter()).copied().collect();
        for v in 4..7 {
            let nbrs: Vec<&str> = (0..v).filter(|&u| pair.g().has_edge(u, v)).map(|u| names[u]).collect();
            l.join(names[v], &nbrs);
        }
    }
    // Sparse demands: the distinct played vertices (x, s, z) and a pattern
    // with at most one adjacency.
    let mut demands = Vec::new();
    for (s, comp) in [("a", "c"), ("b", "d")] {
        let zs = phi4_level1(s);
        for z in zs.iter().map(String::as_str).chain([comp]) {
            for bits in [0u8, 1, 2, 4] {
                demands.push(([String::from("x"), s.to_string(), z.to_string()], bits));
            }
        }
    }
    let mut extra = 0;
    loop {
        let graph = l_snapshot(&l);
        let unmet = demands.iter().find(|(played, bits)| {
            let ids: Vec<usize> = played.iter().map(|n| graph.vertex(n).unwrap()).collect();
            let mut m = graph.vertex_mask();
            for (i, &y) in ids.iter().enumerate() {
                m &= !(1u64 << y);
                m &= if bits >> i & 1 == 1 { graph.adj_mask(y) } else { !graph.adj_mask(y) };
            }
            m == 0
        });
        let Some((played, bits)) = unmet else { break };
        let name = format!("w_{extra}");
        extra += 1;
        let nbrs: Vec<&str> = (0..3).filter(|i| bits >> i & 1 == 1).map(|i| played[i].as_str()).collect();
        l.join(&name, &nbrs);
    }
    let mut pad = 0;
    while l_snapshot(&l).n() < K4_HOST_ORDER {
        l.vertex(&format!("pad_{pad}"));
        pad += 1;
    }
    K4Host::from_labeled(l.finish().expect("host fits in a pattern graph")).expect("synthetic host is well formed")
}

fn l_snapshot(l: &Labeled) -> PatternGraph {
    l.snapshot().expect("host fits in a pattern graph")
}

/// Duplicator's answer to Spoiler's pick `x` (made in `spoiler_graph`) at
/// `pos`, assuming Spoiler plays on the left and the host on the right.
pub fn duplicator_k4_respond<S: GraphView>(
    host: &K4Host,
    spoiler_graph: &S,
    pos: &GamePosition,
    x: usize,
) -> Result<usize, StrategyError> {
    let round = pos.round();
    let violated = |reason: String| StrategyError::AssumptionViolated { round, reason };
    if pos.side != Side::Left {
        return Err(violated("Spoiler must play in the graph opposite the host".into()));
    }
    if let Some(i) = pos.xs.iter().position(|&xi| xi == x) {
        return Ok(pos.ys[i]);
    }
    // Distinct picks so far, in first-occurrence order.
    let mut distinct: Vec<(usize, usize)> = Vec::new();
    for (&xi, &yi) in pos.xs.iter().zip(&pos.ys) {
        if !distinct.iter().any(|&(u, _)| u == xi) {
            distinct.push((xi, yi));
        }
    }
    let bits = distinct.iter().enumerate().fold(0u8, |b, (i, &(xi, _))| b | (spoiler_graph.adjacent(x, xi) as u8) << i);
    let played: Vec<usize> = distinct.iter().map(|&(_, y)| y).collect();
    let y = host.table.get(&(played.clone(), bits)).copied().ok_or_else(|| {
        violated(format!("no answer for pattern {bits:0w$b} over {played:?}", w = played.len().max(1)))
    })?;
    debug_assert!(extends_partial_iso(spoiler_graph, &host.graph, &pos.xs, &pos.ys, x, y));
    Ok(y)
}
