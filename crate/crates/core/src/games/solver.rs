//! Exact solution of the k-round existential game by minimax search.
//!
//! Spoiler commits to one graph and picks a vertex there each round;
//! Duplicator answers in the other graph and must keep the map from
//! Spoiler's picks to the answers a partial isomorphism (equality and
//! adjacency agree both ways). Spoiler wins as soon as Duplicator cannot.

use std::collections::{HashMap, HashSet};

use super::{GameError, Side, Winner};
use crate::graph::{Bits, PatternGraph};
use crate::logic::{Formula, Sentence};

pub const DEFAULT_MAX_VERTICES: usize = 40;
pub const DEFAULT_MAX_ROUNDS: usize = 5;
pub const DEFAULT_MEMO_CAPACITY: usize = 1 << 22;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverOptions {
    /// Cache position values. With memoisation off the search is the plain
    /// minimax recursion (repeated Spoiler picks included), kept as an oracle.
    pub memo: bool,
    pub max_vertices: usize,
    pub max_rounds: usize,
    /// Approximate bound on cached positions.
    pub memo_capacity: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            memo: true,
            max_vertices: DEFAULT_MAX_VERTICES,
            max_rounds: DEFAULT_MAX_ROUNDS,
            memo_capacity: DEFAULT_MEMO_CAPACITY,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameOutcome {
    pub winner: Winner,
    pub rounds: usize,
    /// Spoiler's side and a winning first pick, when Spoiler wins.
    pub opening: Option<(Side, usize)>,
    /// Positions expanded by the search.
    pub nodes: u64,
}

/// Two-generation cache: when the young generation fills up, it replaces the
/// old one, so recently used entries survive and memory stays bounded.
struct Memo {
    young: HashMap<u128, bool>,
    old: HashMap<u128, bool>,
    half: usize,
}

impl Memo {
    fn new(capacity: usize) -> Self {
        Memo { young: HashMap::new(), old: HashMap::new(), half: (capacity / 2).max(1) }
    }

    fn get(&mut self, key: u128) -> Option<bool> {
        if let Some(&v) = self.young.get(&key) {
            return Some(v);
        }
        let v = self.old.remove(&key)?;
        self.insert(key, v);
        Some(v)
    }

    fn insert(&mut self, key: u128, value: bool) {
        if self.young.len() >= self.half {
            self.old = std::mem::take(&mut self.young);
        }
        self.young.insert(key, value);
    }
}

/// Solver for one pair of graphs and a fixed number of rounds.
pub struct EhrSolver<'a> {
    left: &'a PatternGraph,
    right: &'a PatternGraph,
    rounds: usize,
    opts: SolverOptions,
    memo: Memo,
    nodes: u64,
}

impl<'a> EhrSolver<'a> {
    pub fn new(left: &'a PatternGraph, right: &'a PatternGraph, rounds: usize) -> Result<Self, GameError> {
        Self::with_options(left, right, rounds, SolverOptions::default())
    }

    pub fn with_options(
        left: &'a PatternGraph,
        right: &'a PatternGraph,
        rounds: usize,
        opts: SolverOptions,
    ) -> Result<Self, GameError> {
        if rounds == 0 || rounds > opts.max_rounds {
            return Err(GameError::BadRounds { k: rounds, cap: opts.max_rounds });
        }
        for n in [left.n(), right.n()] {
            if n > opts.max_vertices {
                return Err(GameError::TooLarge { n, cap: opts.max_vertices });
            }
        }
        Ok(EhrSolver { left, right, rounds, opts, memo: Memo::new(opts.memo_capacity), nodes: 0 })
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    /// `(Spoiler's graph, Duplicator's graph)`.
    fn graphs(&self, side: Side) -> (&'a PatternGraph, &'a PatternGraph) {
        match side {
            Side::Left => (self.left, self.right),
            Side::Right => (self.right, self.left),
        }
    }

    /// Duplicator's legal answers to `x`, as a mask over Duplicator's graph.
    fn replies(s: &PatternGraph, d: &PatternGraph, pairs: &[(usize, usize)], x: usize) -> u64 {
        let mut m = d.vertex_mask();
        for &(xi, yi) in pairs {
            if xi == x {
                m &= 1 << yi;
            } else {
                m &= !(1u64 << yi);
                m &= if s.has_edge(x, xi) { d.adj_mask(yi) } else { !d.adj_mask(yi) };
            }
        }
        m
    }

    /// Cache key: side, rounds left and the set of pairs. The value of a
    /// position depends on which pairs were played, not on their order.
    fn key(side: Side, pairs: &[(usize, usize)], r: usize) -> u128 {
        let mut sorted: Vec<(usize, usize)> = pairs.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let mut key = (side == Side::Right) as u128 | (r as u128) << 1 | (sorted.len() as u128) << 4;
        for (i, (x, y)) in sorted.into_iter().enumerate() {
            key |= ((x as u128) << 6 | y as u128) << (8 + 12 * i);
        }
        key
    }

    /// Spoiler candidates: with memoisation on, re-picking a vertex is
    /// skipped (it only wastes a round).
    fn spoiler_moves(&self, s: &PatternGraph, pairs: &[(usize, usize)]) -> u64 {
        let mut m = s.vertex_mask();
        if self.opts.memo {
            for &(x, _) in pairs {
                m &= !(1u64 << x);
            }
        }
        m
    }

    fn wins(&mut self, side: Side, pairs: &mut Vec<(usize, usize)>, r: usize) -> bool {
        if r == 0 {
            return false;
        }
        let key = Self::key(side, pairs, r);
        if self.opts.memo {
            if let Some(v) = self.memo.get(key) {
                return v;
            }
        }
        self.nodes += 1;
        let (s, d) = self.graphs(side);
        let mut result = false;
        for x in Bits(self.spoiler_moves(s, pairs)) {
            let ys = Self::replies(s, d, pairs, x);
            let all_lose = Bits(ys).all(|y| {
                pairs.push((x, y));
                let w = self.wins(side, pairs, r - 1);
                pairs.pop();
                w
            });
            if all_lose {
                result = true;
                break;
            }
        }
        if self.opts.memo {
            self.memo.insert(key, result);
        }
        result
    }

    fn pairs_of(xs: &[usize], ys: &[usize]) -> Vec<(usize, usize)> {
        xs.iter().copied().zip(ys.iter().copied()).collect()
    }

    /// Whether Spoiler, committed to `side`, wins from the position `xs → ys`
    /// with `r` rounds left.
    pub fn spoiler_wins(&mut self, side: Side, xs: &[usize], ys: &[usize], r: usize) -> bool {
        self.wins(side, &mut Self::pairs_of(xs, ys), r)
    }

    /// A pick after which Spoiler wins whatever Duplicator answers.
    pub fn winning_move(&mut self, side: Side, xs: &[usize], ys: &[usize], r: usize) -> Option<usize> {
        if r == 0 {
            return None;
        }
        let mut pairs = Self::pairs_of(xs, ys);
        let (s, d) = self.graphs(side);
        Bits(self.spoiler_moves(s, &pairs)).find(|&x| {
            Bits(Self::replies(s, d, &pairs, x)).all(|y| {
                pairs.push((x, y));
                let w = self.wins(side, &mut pairs, r - 1);
                pairs.pop();
                w
            })
        })
    }

    /// Duplicator's answer to `x`: one that keeps Duplicator winning when possible,
    /// otherwise any legal answer, otherwise `None`. `r` counts the current
    /// round as not yet played.
    pub fn best_reply(&mut self, side: Side, xs: &[usize], ys: &[usize], x: usize, r: usize) -> Option<usize> {
        let mut pairs = Self::pairs_of(xs, ys);
        let (s, d) = self.graphs(side);
        let legal = Self::replies(s, d, &pairs, x);
        let good = Bits(legal).find(|&y| {
            pairs.push((x, y));
            let w = self.wins(side, &mut pairs, r.saturating_sub(1));
            pairs.pop();
            !w
        });
        good.or_else(|| Bits(legal).next())
    }

    /// The side Spoiler wins on, if any.
    pub fn winning_side(&mut self) -> Option<Side> {
        let k = self.rounds;
        [Side::Left, Side::Right].into_iter().find(|&side| self.wins(side, &mut Vec::new(), k))
    }

    pub fn solve(&mut self) -> GameOutcome {
        let k = self.rounds;
        match self.winning_side() {
            Some(side) => {
                let x = self.winning_move(side, &[], &[], k).expect("winning side has a winning move");
                GameOutcome { winner: Winner::Spoiler, rounds: k, opening: Some((side, x)), nodes: self.nodes }
            }
            None => GameOutcome { winner: Winner::Duplicator, rounds: k, opening: None, nodes: self.nodes },
        }
    }

    /// Formula true in Spoiler's graph at the picks of `pairs` and false in
    /// Duplicator's graph at the answers; requires a Spoiler win from there.
    ///
    /// The new variable is pinned down by its atomic type over the earlier
    /// ones and by one subformula per legal answer of Duplicator: any
    /// witness in Duplicator's graph with that type is one of those answers, and the
    /// subformula for it fails.
    fn extract(&mut self, side: Side, pairs: &mut Vec<(usize, usize)>, r: usize) -> Formula {
        let xs: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let ys: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        let x = self.winning_move(side, &xs, &ys, r).expect("extraction from a won position");
        let (s, d) = self.graphs(side);
        let var = format!("x{}", pairs.len() + 1);
        let mut parts = Vec::new();
        for (i, &xi) in xs.iter().enumerate() {
            let prev = format!("x{}", i + 1);
            if s.has_edge(x, xi) {
                parts.push(Formula::adj(&var, &prev));
            } else {
                parts.push(Formula::non_adj(&var, &prev));
                parts.push(Formula::neq(&var, &prev));
            }
        }
        let mut seen = HashSet::new();
        for y in Bits(Self::replies(s, d, pairs, x)) {
            pairs.push((x, y));
            let sub = self.extract(side, pairs, r - 1);
            pairs.pop();
            if seen.insert(sub.clone()) {
                parts.push(sub);
            }
        }
        if parts.is_empty() {
            parts.push(Formula::eq(&var, &var));
        }
        Formula::exists(&var, Formula::and(parts))
    }

    /// An existential sentence of quantifier depth at most `k` that holds in
    /// Spoiler's graph and fails in the other, when Spoiler wins.
    pub fn distinguishing_sentence(&mut self) -> Option<(Side, Sentence)> {
        let side = self.winning_side()?;
        let f = self.extract(side, &mut Vec::new(), self.rounds);
        Some((side, Sentence::new(f).expect("extracted formulas are closed")))
    }
}

pub fn solve_ehr(g1: &PatternGraph, g2: &PatternGraph, k: usize) -> Result<GameOutcome, GameError> {
    solve_ehr_with(g1, g2, k, SolverOptions::default())
}

pub fn solve_ehr_with(
    g1: &PatternGraph,
    g2: &PatternGraph,
    k: usize,
    opts: SolverOptions,
) -> Result<GameOutcome, GameError> {
    Ok(EhrSolver::with_options(g1, g2, k, opts)?.solve())
}

/// When Spoiler wins the `k`-round game, the side Spoiler plays on and an
/// existential sentence of depth at most `k` true there and false on the
/// other side; `None` when Duplicator wins.
pub fn extract_distinguishing_sentence(
    g1: &PatternGraph,
    g2: &PatternGraph,
    k: usize,
) -> Result<Option<(Side, Sentence)>, GameError> {
    Ok(EhrSolver::new(g1, g2, k)?.distinguishing_sentence())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::evaluate;

    fn no_memo() -> SolverOptions {
        SolverOptions { memo: false, ..SolverOptions::default() }
    }

    #[test]
    fn triangle_versus_path() {
        let k3 = PatternGraph::complete(3).unwrap();
        let p3 = PatternGraph::path(3).unwrap();
        assert_eq!(solve_ehr(&k3, &p3, 1).unwrap().winner, Winner::Duplicator);
        let out = solve_ehr(&k3, &p3, 3).unwrap();
        assert_eq!(out.winner, Winner::Spoiler);
        assert_eq!(out.opening.unwrap().0, Side::Left);
        assert_eq!(solve_ehr_with(&k3, &p3, 3, no_memo()).unwrap().winner, Winner::Spoiler);
    }

    #[test]
    fn non_edge_is_found_from_either_side() {
        // Only the path has a non-adjacent pair; every pair of the triangle
        // appears in the path.
        let k3 = PatternGraph::complete(3).unwrap();
        let p3 = PatternGraph::path(3).unwrap();
        let out = solve_ehr(&k3, &p3, 2).unwrap();
        assert_eq!(out.winner, Winner::Spoiler);
        assert_eq!(out.opening.unwrap().0, Side::Right);
    }

    #[test]
    fn isomorphic_graphs_are_a_draw_for_duplicator() {
        let c5 = PatternGraph::cycle(5).unwrap();
        let out = solve_ehr(&c5, &c5, 5).unwrap();
        assert_eq!(out.winner, Winner::Duplicator);
        assert!(out.nodes > 0);
    }

    #[test]
    fn extracted_sentence_separates() {
        let k4 = PatternGraph::complete(4).unwrap();
        let c4 = PatternGraph::cycle(4).unwrap();
        let (side, s) = extract_distinguishing_sentence(&k4, &c4, 3).unwrap().unwrap();
        assert_eq!(side, Side::Left);
        assert!(s.quantifier_depth() <= 3);
        assert!(evaluate(&k4, &s).unwrap());
        assert!(!evaluate(&c4, &s).unwrap());
        assert!(extract_distinguishing_sentence(&c4, &c4, 3).unwrap().is_none());
    }

    #[test]
    fn limits_are_enforced() {
        let g = PatternGraph::empty(41).unwrap();
        let h = PatternGraph::empty(2).unwrap();
        assert_eq!(solve_ehr(&g, &h, 2), Err(GameError::TooLarge { n: 41, cap: 40 }));
        assert_eq!(solve_ehr(&h, &h, 0), Err(GameError::BadRounds { k: 0, cap: 5 }));
        assert_eq!(solve_ehr(&h, &h, 6), Err(GameError::BadRounds { k: 6, cap: 5 }));
    }

    #[test]
    fn tiny_memo_still_exact() {
        let k4 = PatternGraph::complete(4).unwrap();
        let c4 = PatternGraph::cycle(4).unwrap();
        let opts = SolverOptions { memo_capacity: 2, ..SolverOptions::default() };
        assert_eq!(solve_ehr_with(&c4, &k4, 3, opts).unwrap().winner, Winner::Spoiler);
    }
}
