//! Playing the game with explicit policies, JSON-lines transcripts, and an
//! exhaustive Spoiler that tries every sequence of picks against a fixed
//! Duplicator.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::k4::{duplicator_k4_respond, K4Host};
use super::solver::EhrSolver;
use super::{extends_partial_iso, GamePosition, Side, Winner};
use crate::graph::{GraphView, PatternGraph};

pub trait SpoilerPolicy {
    fn choose_side(&mut self, g1: &PatternGraph, g2: &PatternGraph, rounds: usize, rng: &mut ChaCha8Rng) -> Side;
    fn choose(&mut self, g1: &PatternGraph, g2: &PatternGraph, pos: &GamePosition, rng: &mut ChaCha8Rng) -> usize;
}

pub trait DuplicatorPolicy {
    /// Answer to `x`; `None` forfeits.
    fn respond(
        &mut self,
        g1: &PatternGraph,
        g2: &PatternGraph,
        pos: &GamePosition,
        x: usize,
        rng: &mut ChaCha8Rng,
    ) -> Option<usize>;
}

fn spoiler_graph<'g>(g1: &'g PatternGraph, g2: &'g PatternGraph, side: Side) -> (&'g PatternGraph, &'g PatternGraph) {
    match side {
        Side::Left => (g1, g2),
        Side::Right => (g2, g1),
    }
}

/// Uniform side (unless fixed) and uniform picks.
#[derive(Clone, Debug, Default)]
pub struct RandomSpoiler {
    pub side: Option<Side>,
}

impl SpoilerPolicy for RandomSpoiler {
    fn choose_side(&mut self, _: &PatternGraph, _: &PatternGraph, _: usize, rng: &mut ChaCha8Rng) -> Side {
        self.side.unwrap_or_else(|| if rng.gen_bool(0.5) { Side::Left } else { Side::Right })
    }

    fn choose(&mut self, g1: &PatternGraph, g2: &PatternGraph, pos: &GamePosition, rng: &mut ChaCha8Rng) -> usize {
        rng.gen_range(0..spoiler_graph(g1, g2, pos.side).0.n())
    }
}

/// A fixed side and sequence of picks.
#[derive(Clone, Debug)]
pub struct ScriptedSpoiler {
    pub side: Side,
    pub moves: Vec<usize>,
}

impl SpoilerPolicy for ScriptedSpoiler {
    fn choose_side(&mut self, _: &PatternGraph, _: &PatternGraph, _: usize, _: &mut ChaCha8Rng) -> Side {
        self.side
    }

    fn choose(&mut self, _: &PatternGraph, _: &PatternGraph, pos: &GamePosition, _: &mut ChaCha8Rng) -> usize {
        self.moves[pos.xs.len()]
    }
}

/// Follows a winning strategy from the exact solver when one exists and
/// picks uniformly otherwise.
pub struct SolverSpoiler<'a> {
    solver: EhrSolver<'a>,
}

impl<'a> SolverSpoiler<'a> {
    pub fn new(solver: EhrSolver<'a>) -> Self {
        SolverSpoiler { solver }
    }
}

impl SpoilerPolicy for SolverSpoiler<'_> {
    fn choose_side(&mut self, _: &PatternGraph, _: &PatternGraph, _: usize, rng: &mut ChaCha8Rng) -> Side {
        self.solver.winning_side().unwrap_or_else(|| if rng.gen_bool(0.5) { Side::Left } else { Side::Right })
    }

    fn choose(&mut self, g1: &PatternGraph, g2: &PatternGraph, pos: &GamePosition, rng: &mut ChaCha8Rng) -> usize {
        self.solver
            .winning_move(pos.side, &pos.xs, &pos.ys, pos.rounds_left)
            .unwrap_or_else(|| rng.gen_range(0..spoiler_graph(g1, g2, pos.side).0.n()))
    }
}

/// Answers with a non-losing reply from the exact solver.
pub struct SolverDuplicator<'a> {
    solver: EhrSolver<'a>,
}

impl<'a> SolverDuplicator<'a> {
    pub fn new(solver: EhrSolver<'a>) -> Self {
        SolverDuplicator { solver }
    }
}

impl DuplicatorPolicy for SolverDuplicator<'_> {
    fn respond(
        &mut self,
        _: &PatternGraph,
        _: &PatternGraph,
        pos: &GamePosition,
        x: usize,
        _: &mut ChaCha8Rng,
    ) -> Option<usize> {
        self.solver.best_reply(pos.side, &pos.xs, &pos.ys, x, pos.rounds_left)
    }
}

/// Answers every pick with the same vertex; wins on identical graphs.
#[derive(Clone, Copy, Debug, Default)]
pub struct CopyDuplicator;

impl DuplicatorPolicy for CopyDuplicator {
    fn respond(
        &mut self,
        g1: &PatternGraph,
        g2: &PatternGraph,
        pos: &GamePosition,
        x: usize,
        _: &mut ChaCha8Rng,
    ) -> Option<usize> {
        (x < spoiler_graph(g1, g2, pos.side).1.n()).then_some(x)
    }
}

/// The depth-4 strategy; the host must be the right-hand graph.
pub struct K4Duplicator<'a> {
    pub host: &'a K4Host,
}

impl DuplicatorPolicy for K4Duplicator<'_> {
    fn respond(
        &mut self,
        g1: &PatternGraph,
        _: &PatternGraph,
        pos: &GamePosition,
        x: usize,
        _: &mut ChaCha8Rng,
    ) -> Option<usize> {
        duplicator_k4_respond(self.host, g1, pos, x).ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MoveRecord {
    pub round: usize,
    pub side: Side,
    pub vertex: usize,
    pub reply: Option<usize>,
    /// Whether the position is still a partial isomorphism after the reply.
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GameRecord {
    pub rounds: usize,
    pub side: Side,
    pub moves: Vec<MoveRecord>,
    pub winner: Winner,
}

impl GameRecord {
    /// One JSON object per round: `{"round", "side", "vertex", "reply", "ok"}`.
    pub fn to_json_lines(&self) -> String {
        self.moves.iter().map(|m| serde_json::to_string(m).expect("plain record") + "\n").collect()
    }
}

/// Plays one game. The RNG handed to the policies is seeded from `seed`.
pub fn simulate_game(
    g1: &PatternGraph,
    g2: &PatternGraph,
    rounds: usize,
    spoiler: &mut dyn SpoilerPolicy,
    duplicator: &mut dyn DuplicatorPolicy,
    seed: u64,
) -> GameRecord {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let side = spoiler.choose_side(g1, g2, rounds, &mut rng);
    let (s, d) = spoiler_graph(g1, g2, side);
    let mut pos = GamePosition::start(side, rounds);
    let mut moves = Vec::new();
    let mut winner = Winner::Duplicator;
    while pos.rounds_left > 0 {
        let x = spoiler.choose(g1, g2, &pos, &mut rng);
        let reply = duplicator.respond(g1, g2, &pos, x, &mut rng);
        let ok = reply.is_some_and(|y| x < s.n() && y < d.n() && extends_partial_iso(s, d, &pos.xs, &pos.ys, x, y));
        moves.push(MoveRecord { round: pos.round(), side, vertex: x, reply, ok });
        if !ok {
            winner = Winner::Spoiler;
            break;
        }
        pos.xs.push(x);
        pos.ys.push(reply.unwrap());
        pos.rounds_left -= 1;
    }
    GameRecord { rounds, side, moves, winner }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    /// Complete games played (one per Spoiler pick sequence that Duplicator
    /// survived to the end, plus one per sequence cut short by a loss).
    pub games: u64,
    pub spoiler_wins: u64,
    /// Picks and answers of the first lost game, ending with the pick that
    /// Duplicator could not answer legally.
    pub first_loss: Option<(Vec<usize>, Vec<usize>)>,
}

/// Plays every sequence of Spoiler picks (repeats included) on `side`
/// against a deterministic Duplicator.
pub fn exhaustive_spoiler<S: GraphView, D: GraphView>(
    spoiler_graph: &S,
    duplicator_graph: &D,
    rounds: usize,
    side: Side,
    respond: &mut dyn FnMut(&GamePosition, usize) -> Option<usize>,
) -> ExhaustiveReport {
    fn rec<S: GraphView, D: GraphView>(
        s: &S,
        d: &D,
        pos: &mut GamePosition,
        respond: &mut dyn FnMut(&GamePosition, usize) -> Option<usize>,
        report: &mut ExhaustiveReport,
    ) {
        if pos.rounds_left == 0 {
            report.games += 1;
            return;
        }
        for x in 0..s.order() {
            let reply = respond(pos, x);
            match reply.filter(|&y| y < d.order() && extends_partial_iso(s, d, &pos.xs, &pos.ys, x, y)) {
                Some(y) => {
                    pos.xs.push(x);
                    pos.ys.push(y);
                    pos.rounds_left -= 1;
                    rec(s, d, pos, respond, report);
                    pos.rounds_left += 1;
                    pos.xs.pop();
                    pos.ys.pop();
                }
                None => {
                    report.games += 1;
                    report.spoiler_wins += 1;
                    if report.first_loss.is_none() {
                        let mut xs = pos.xs.clone();
                        xs.push(x);
                        report.first_loss = Some((xs, pos.ys.clone()));
                    }
                }
            }
        }
    }
    let mut report = ExhaustiveReport { games: 0, spoiler_wins: 0, first_loss: None };
    let mut pos = GamePosition::start(side, rounds);
    rec(spoiler_graph, duplicator_graph, &mut pos, respond, &mut report);
    report
}
