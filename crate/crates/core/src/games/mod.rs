//! The existential Ehrenfeucht game: an exact solver, extraction of a
//! distinguishing existential sentence from Spoiler's winning strategy,
//! Duplicator's depth-4 strategy on hosts containing G_0, and a simulator
//! for playing policies against each other.

mod k4;
mod sim;
mod solver;

pub use k4::{duplicator_k4_respond, k4_synthetic_host, K4Host, StrategyError, K4_HOST_ORDER};
pub use sim::{
    exhaustive_spoiler, simulate_game, CopyDuplicator, DuplicatorPolicy, ExhaustiveReport, GameRecord, K4Duplicator,
    MoveRecord, RandomSpoiler, ScriptedSpoiler, SolverDuplicator, SolverSpoiler, SpoilerPolicy,
};
pub use solver::{
    extract_distinguishing_sentence, solve_ehr, solve_ehr_with, EhrSolver, GameOutcome, SolverOptions,
    DEFAULT_MAX_ROUNDS, DEFAULT_MAX_VERTICES, DEFAULT_MEMO_CAPACITY,
};

use serde::{Deserialize, Serialize};

use crate::graph::GraphView;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("graph with {n} vertices exceeds the solver cap of {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("round count must be in 1..={cap}, got {k}")]
    BadRounds { k: usize, cap: usize },
    #[error("position is not a partial isomorphism at move {0}")]
    NotPartialIso(usize),
    #[error("position lists {xs} Spoiler moves but {ys} replies")]
    LengthMismatch { xs: usize, ys: usize },
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
}

/// Which graph Spoiler committed to: `Left` is the first graph of the game,
/// `Right` the second. Spoiler never switches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Winner {
    Spoiler,
    Duplicator,
}

/// A game state: Spoiler's vertices `xs` in the chosen graph, Duplicator's replies
/// `ys` in the other, and the rounds still to play.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GamePosition {
    pub side: Side,
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
    pub rounds_left: usize,
}

impl GamePosition {
    pub fn start(side: Side, rounds: usize) -> Self {
        GamePosition { side, xs: Vec::new(), ys: Vec::new(), rounds_left: rounds }
    }

    /// Builds a position, checking that `xs → ys` is a partial isomorphism
    /// from `spoiler` to `duplicator`.
    pub fn new<S: GraphView, D: GraphView>(
        spoiler: &S,
        duplicator: &D,
        side: Side,
        xs: Vec<usize>,
        ys: Vec<usize>,
        rounds_left: usize,
    ) -> Result<Self, GameError> {
        if xs.len() != ys.len() {
            return Err(GameError::LengthMismatch { xs: xs.len(), ys: ys.len() });
        }
        for (&v, n) in xs.iter().map(|v| (v, spoiler.order())).chain(ys.iter().map(|v| (v, duplicator.order()))) {
            if v >= n {
                return Err(GameError::VertexOutOfRange { v, n });
            }
        }
        if let Some(i) = first_violation(spoiler, duplicator, &xs, &ys) {
            return Err(GameError::NotPartialIso(i));
        }
        Ok(GamePosition { side, xs, ys, rounds_left })
    }

    pub fn round(&self) -> usize {
        self.xs.len() + 1
    }
}

/// Index of the first move that breaks equality or adjacency agreement with
/// an earlier move, if any.
pub fn first_violation<S: GraphView, D: GraphView>(s: &S, d: &D, xs: &[usize], ys: &[usize]) -> Option<usize> {
    (0..xs.len().min(ys.len())).find(|&j| !extends_partial_iso(s, d, &xs[..j], &ys[..j], xs[j], ys[j]))
}

/// Whether adding the pair `(x, y)` to a partial isomorphism keeps it one.
pub fn extends_partial_iso<S: GraphView, D: GraphView>(
    s: &S,
    d: &D,
    xs: &[usize],
    ys: &[usize],
    x: usize,
    y: usize,
) -> bool {
    xs.iter().zip(ys).all(
        |(&xi, &yi)| {
            if xi == x || yi == y {
                xi == x && yi == y
            } else {
                s.adjacent(x, xi) == d.adjacent(y, yi)
            }
        },
    )
}
