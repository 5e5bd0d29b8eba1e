use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zol_core::games::{
    duplicator_k4_respond, exhaustive_spoiler, extract_distinguishing_sentence, k4_synthetic_host, simulate_game,
    solve_ehr, solve_ehr_with, GamePosition, K4Duplicator, RandomSpoiler, ScriptedSpoiler, Side, SolverOptions, Winner,
    K4_HOST_ORDER,
};
use zol_core::logic::{evaluate, parse_sentence};
use zol_core::PatternGraph;

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> PatternGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    PatternGraph::from_edges(n, &edges).unwrap()
}

#[test]
fn k4_strategy_survives_every_spoiler_sequence_in_the_host() {
    let host = k4_synthetic_host();
    let g = host.graph();
    assert_eq!(g.n(), K4_HOST_ORDER);
    let report = exhaustive_spoiler(g, g, 4, Side::Left, &mut |pos: &GamePosition, x| {
        duplicator_k4_respond(&host, g, pos, x).ok()
    });
    assert_eq!(report.spoiler_wins, 0, "{:?}", report.first_loss);
    assert_eq!(report.games, (K4_HOST_ORDER as u64).pow(4));
}

#[test]
fn k4_strategy_survives_every_spoiler_sequence_in_random_graphs() {
    let host = k4_synthetic_host();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for p in [0.2, 0.5, 0.8] {
        let s = random_graph(24, p, &mut rng);
        let report = exhaustive_spoiler(&s, host.graph(), 4, Side::Left, &mut |pos: &GamePosition, x| {
            duplicator_k4_respond(&host, &s, pos, x).ok()
        });
        assert_eq!(report.spoiler_wins, 0, "p = {p}: {:?}", report.first_loss);
    }
}

#[test]
fn k4_strategy_has_no_answer_in_round_five_territory() {
    // A triangle on the first three picks is answered by x, a, a_1_1; a
    // fourth pick adjacent to all three is answered inside G_0, but the
    // strategy covers only four rounds of distinct picks.
    let host = k4_synthetic_host();
    let k5 = PatternGraph::complete(5).unwrap();
    let mut spoiler = ScriptedSpoiler { side: Side::Left, moves: vec![0, 1, 2, 3] };
    let rec = simulate_game(&k5, host.graph(), 4, &mut spoiler, &mut K4Duplicator { host: &host }, 0);
    assert_eq!(rec.winner, Winner::Duplicator);
    let mut pos = GamePosition::start(Side::Left, 5);
    for m in &rec.moves {
        pos.xs.push(m.vertex);
        pos.ys.push(m.reply.unwrap());
    }
    assert!(duplicator_k4_respond(&host, &k5, &pos, 4).is_err());
}

#[test]
fn random_spoilers_never_beat_the_k4_strategy() {
    let host = k4_synthetic_host();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for seed in 0..200 {
        let g = random_graph(12, 0.5, &mut rng);
        let mut spoiler = RandomSpoiler { side: Some(Side::Left) };
        let rec = simulate_game(&g, host.graph(), 4, &mut spoiler, &mut K4Duplicator { host: &host }, seed);
        assert_eq!(rec.winner, Winner::Duplicator, "{}", rec.to_json_lines());
    }
}

#[test]
fn memoised_and_plain_search_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let plain = SolverOptions { memo: false, ..SolverOptions::default() };
    for _ in 0..60 {
        let (n1, n2) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let g = random_graph(n1, 0.5, &mut rng);
        let h = random_graph(n2, 0.5, &mut rng);
        let k = rng.gen_range(1..=3);
        let a = solve_ehr(&g, &h, k).unwrap().winner;
        let b = solve_ehr_with(&g, &h, k, plain).unwrap().winner;
        assert_eq!(a, b, "{:?} vs {:?}, k = {k}", g.edges(), h.edges());
    }
}

#[test]
fn extracted_sentences_separate_the_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut separated = 0;
    for _ in 0..80 {
        let g = random_graph(rng.gen_range(2..=6), 0.5, &mut rng);
        let h = random_graph(rng.gen_range(2..=6), 0.5, &mut rng);
        let k = rng.gen_range(1..=3);
        match extract_distinguishing_sentence(&g, &h, k).unwrap() {
            Some((side, s)) => {
                let (yes, no) = if side == Side::Left { (&g, &h) } else { (&h, &g) };
                assert!(s.quantifier_depth() <= k);
                assert!(evaluate(yes, &s).unwrap(), "{s}");
                assert!(!evaluate(no, &s).unwrap(), "{s}");
                // The printed sentence parses back to the same meaning.
                let reparsed = parse_sentence(&s.to_string()).unwrap();
                assert!(evaluate(yes, &reparsed).unwrap());
                assert!(!evaluate(no, &reparsed).unwrap());
                separated += 1;
            }
            None => assert_eq!(solve_ehr(&g, &h, k).unwrap().winner, Winner::Duplicator),
        }
    }
    assert!(separated > 10);
}

#[test]
fn solver_handles_forty_vertices() {
    let host = k4_synthetic_host();
    let g = host.graph();
    let out = solve_ehr(g, g, 2).unwrap();
    assert_eq!(out.winner, Winner::Duplicator);
}
