mod common;

use common::{arb_graph, random_graph, random_sentence};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zol_core::constructions::build_phi_k_witness;
use zol_core::extensions::{
    count_strict_extensions, deficiency, has_full_extension_property, has_full_extension_property_naive, is_alpha_safe,
    safety_threshold, SafetyThreshold,
};
use zol_core::games::{extract_distinguishing_sentence, solve_ehr, Winner};
use zol_core::graph::{
    automorphism_count, classify_balance, count_induced_copies, density, graph6_decode, graph6_encode, max_density,
    BalanceClass,
};
use zol_core::logic::{brute_force_evaluate, build_phi_k, evaluate, parse_sentence, quantifier_depth};
use zol_core::{HostGraph, PatternGraph, Rational, RootedPair};

fn subset_density(g: &PatternGraph, mask: u64) -> Rational {
    Rational::new(g.edges_within(mask) as i128, mask.count_ones() as i128)
}

/// Every maximiser of `e(S)/|S|` by plain enumeration of nonempty subsets.
fn enumerate_maxden(g: &PatternGraph) -> (Rational, Vec<u64>) {
    let mut best = Rational::zero();
    let mut arg = Vec::new();
    for mask in 1u64..1 << g.n() {
        let d = subset_density(g, mask);
        if d > best || arg.is_empty() {
            if d > best {
                arg.clear();
            }
            best = d;
        }
        if d == best {
            arg.push(mask);
        }
    }
    (best, arg)
}

fn count_embeddings_by_injection(host: &PatternGraph, pattern: &PatternGraph) -> u128 {
    fn rec(host: &PatternGraph, pattern: &PatternGraph, image: &mut Vec<usize>) -> u128 {
        let i = image.len();
        if i == pattern.n() {
            return 1;
        }
        let mut total = 0;
        for h in 0..host.n() {
            if image.contains(&h) {
                continue;
            }
            if (0..i).all(|j| pattern.has_edge(i, j) == host.has_edge(h, image[j])) {
                image.push(h);
                total += rec(host, pattern, image);
                image.pop();
            }
        }
        total
    }
    rec(host, pattern, &mut Vec::new())
}

/// `(min v/e over S with e ≥ 1, min f_α over nonempty S)` by enumeration of
/// non-root subsets.
fn enumerate_safety(p: &RootedPair, alpha: Rational) -> (Option<Rational>, Rational) {
    let k = p.root_count();
    let f = p.free_count();
    let mut thr: Option<Rational> = None;
    let mut min_def: Option<Rational> = None;
    for sub in 1u64..1 << f {
        let s: Vec<usize> = (0..k).chain((0..f).filter(|i| sub >> i & 1 == 1).map(|i| i + k)).collect();
        let d = deficiency(p, &s, alpha).unwrap();
        min_def = Some(min_def.map_or(d, |m| if d < m { d } else { m }));
        let mask = s.iter().fold(0u64, |m, &v| m | 1 << v);
        let e = p.g().edges_within(mask) - p.g().edges_within(p.root_mask());
        if e > 0 {
            let t = Rational::new(sub.count_ones() as i128, e as i128);
            thr = Some(thr.map_or(t, |m| if t < m { t } else { m }));
        }
    }
    (thr, min_def.unwrap())
}

fn arb_pair() -> impl Strategy<Value = RootedPair> {
    (arb_graph(2, 10), 1usize..=3)
        .prop_filter_map("needs a non-root vertex", |(g, r)| (r < g.n()).then(|| RootedPair::new(g, r).unwrap()))
}

fn strict_extensions_by_subsets(host: &PatternGraph, p: &RootedPair, roots: &[usize]) -> u64 {
    let k = p.root_count();
    let f = p.free_count();
    let g = p.g();
    let mut count = 0;
    for mask in 0u64..1 << host.n() {
        if mask.count_ones() as usize != f || roots.iter().any(|&r| mask >> r & 1 == 1) {
            continue;
        }
        let w: Vec<usize> = (0..host.n()).filter(|&v| mask >> v & 1 == 1).collect();
        // Any bijection from the non-roots onto W that realises G exactly.
        let mut perm: Vec<usize> = (0..f).collect();
        let realises = |perm: &[usize]| {
            (0..f).all(|i| {
                let hi = w[perm[i]];
                (0..k).all(|r| g.has_edge(k + i, r) == host.has_edge(hi, roots[r]))
                    && (0..i).all(|j| g.has_edge(k + i, k + j) == host.has_edge(hi, w[perm[j]]))
            })
        };
        let mut found = realises(&perm);
        while !found && next_permutation(&mut perm) {
            found = realises(&perm);
        }
        count += found as u64;
    }
    count
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn graph6_round_trip(g in arb_graph(1, 30)) {
        prop_assert_eq!(graph6_decode(&graph6_encode(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_round_trip_up_to_the_vertex_cap(g in arb_graph(31, 64)) {
        prop_assert_eq!(graph6_decode(&graph6_encode(&g)).unwrap(), g);
    }

    #[test]
    fn max_density_matches_subset_enumeration(g in arb_graph(1, 14)) {
        let (best, maximisers) = enumerate_maxden(&g);
        let w = max_density(&g);
        prop_assert_eq!(w.value, best);
        let mask = w.vertices.iter().fold(0u64, |m, &v| m | 1 << v);
        prop_assert!(maximisers.contains(&mask));
    }

    #[test]
    fn density_and_balance_are_consistent(g in arb_graph(1, 12)) {
        let (best, maximisers) = enumerate_maxden(&g);
        let rho = density(&g);
        prop_assert!(rho <= max_density(&g).value);
        let class = classify_balance(&g);
        prop_assert_eq!(rho == best, class != BalanceClass::Unbalanced);
        if class == BalanceClass::StrictlyBalanced {
            prop_assert_eq!(maximisers, vec![g.vertex_mask()]);
            prop_assert_eq!(max_density(&g).vertices.len(), g.n());
        }
    }

    #[test]
    fn induced_copies_times_automorphisms_count_embeddings(host in arb_graph(1, 7), pattern in arb_graph(1, 4)) {
        let copies = count_induced_copies(&host, &pattern);
        let aut: u128 = automorphism_count(&pattern).try_into().unwrap();
        prop_assert_eq!(copies * aut, count_embeddings_by_injection(&host, &pattern));
    }

    #[test]
    fn threshold_contract_and_monotonicity(p in arb_pair(), num in 1i128..200) {
        let alpha = Rational::new(num, 100);
        let (thr, min_def) = enumerate_safety(&p, alpha);
        let verdict = is_alpha_safe(&p, alpha).unwrap();
        prop_assert_eq!(verdict.min_deficiency, min_def);
        prop_assert_eq!(verdict.safe, min_def.is_positive());
        match safety_threshold(&p).unwrap() {
            SafetyThreshold::Unbounded => prop_assert!(thr.is_none() && verdict.safe),
            SafetyThreshold::Value(t) => {
                prop_assert_eq!(Some(t), thr);
                let eps = Rational::new(1, 1000);
                prop_assert!(is_alpha_safe(&p, t - eps).unwrap().safe || t - eps <= Rational::zero());
                prop_assert!(!is_alpha_safe(&p, t).unwrap().safe);
                prop_assert!(!is_alpha_safe(&p, t + eps).unwrap().safe);
                prop_assert_eq!(verdict.safe, alpha < t);
            }
        }
        if verdict.safe {
            let smaller = Rational::new(num, 100) * Rational::new(1, 2);
            prop_assert!(is_alpha_safe(&p, smaller).unwrap().safe);
        }
    }

    #[test]
    fn strict_extension_count_matches_subset_enumeration(
        host in arb_graph(3, 12),
        pattern in arb_graph(2, 5),
        roots in 1usize..=2,
        seed in any::<u64>(),
    ) {
        prop_assume!(roots < pattern.n() && roots <= host.n());
        let p = RootedPair::new(pattern, roots).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut image: Vec<usize> = Vec::new();
        while image.len() < roots {
            let v = rng.gen_range(0..host.n());
            if !image.contains(&v) {
                image.push(v);
            }
        }
        let fast = count_strict_extensions(&host, &p, &image).unwrap();
        prop_assert_eq!(fast, strict_extensions_by_subsets(&host, &p, &image));
    }

    #[test]
    fn printed_sentences_parse_back(seed in any::<u64>(), depth in 1usize..=3) {
        let s = random_sentence(&mut ChaCha8Rng::seed_from_u64(seed), depth);
        prop_assert_eq!(parse_sentence(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn evaluator_matches_brute_force(g in arb_graph(1, 6), seed in any::<u64>(), depth in 1usize..=3) {
        let s = random_sentence(&mut ChaCha8Rng::seed_from_u64(seed), depth);
        prop_assert!(quantifier_depth(&s) <= depth);
        let fast = evaluate(&g, &s).unwrap();
        prop_assert_eq!(fast, brute_force_evaluate(&g, s.formula(), &mut Vec::new()));
    }

    #[test]
    fn game_is_symmetric_and_monotone_in_rounds(g in arb_graph(1, 6), h in arb_graph(1, 6)) {
        let mut previous = Winner::Duplicator;
        for k in 1..=3 {
            let w = solve_ehr(&g, &h, k).unwrap().winner;
            prop_assert_eq!(w, solve_ehr(&h, &g, k).unwrap().winner);
            if previous == Winner::Spoiler {
                prop_assert_eq!(w, Winner::Spoiler);
            }
            previous = w;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(320))]

    #[test]
    fn extracted_sentences_are_sound(g in arb_graph(1, 8), h in arb_graph(1, 8), k in 1usize..=3) {
        if let Some((side, s)) = extract_distinguishing_sentence(&g, &h, k).unwrap() {
            prop_assert!(quantifier_depth(&s) <= k);
            let (yes, no) = if side == zol_core::games::Side::Left { (&g, &h) } else { (&h, &g) };
            prop_assert!(evaluate(yes, &s).unwrap());
            prop_assert!(!evaluate(no, &s).unwrap());
        } else {
            prop_assert_eq!(solve_ehr(&g, &h, k).unwrap().winner, Winner::Duplicator);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(110))]

    #[test]
    fn extension_property_matches_naive(n in 1usize..=40, p in 0.05f64..0.95, r in 1usize..=3, seed in any::<u64>()) {
        let g = random_graph(n, p, &mut ChaCha8Rng::seed_from_u64(seed));
        let host = HostGraph::from_pattern(&g);
        let fast = has_full_extension_property(&host, r);
        prop_assert_eq!(fast.is_none(), has_full_extension_property_naive(&host, r).is_none());
        if let Some(d) = fast {
            // The reported demand really has no witness.
            let witness = (0..n).find(|&w| {
                !d.xs.contains(&w) && !d.ys.contains(&w)
                    && d.xs.iter().all(|&x| g.has_edge(w, x))
                    && d.ys.iter().all(|&y| !g.has_edge(w, y))
            });
            prop_assert_eq!(witness, None);
        }
    }
}

#[test]
fn duplicator_wins_imply_agreement_on_random_sentences() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let mut pairs = 0;
    while pairs < 12 {
        let g = random_graph(rng.gen_range(3..=6), 0.5, &mut rng);
        let h = random_graph(rng.gen_range(3..=6), 0.5, &mut rng);
        let k = rng.gen_range(1..=3);
        if solve_ehr(&g, &h, k).unwrap().winner != Winner::Duplicator {
            continue;
        }
        pairs += 1;
        for _ in 0..200 {
            let s = random_sentence(&mut rng, k);
            assert_eq!(evaluate(&g, &s).unwrap(), evaluate(&h, &s).unwrap(), "{s} at k = {k}");
        }
    }
}

#[test]
fn phi_k_has_depth_k() {
    for k in 5..=8 {
        assert_eq!(quantifier_depth(&build_phi_k(k).unwrap()), k);
    }
}

#[test]
fn supergraphs_of_the_witness_model_phi_5() {
    // φ_k only constrains the chosen vertices, so any graph containing an
    // induced copy of a model is a model.
    let w = build_phi_k_witness(5).unwrap();
    let phi = build_phi_k(5).unwrap();
    let base = w.graph();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let extra = rng.gen_range(1..=5);
        let n = base.n() + extra;
        let mut edges = base.edges();
        for u in base.n()..n {
            for v in 0..u {
                if rng.gen_bool(0.4) {
                    edges.push((v, u));
                }
            }
        }
        let g = PatternGraph::from_edges(n, &edges).unwrap();
        assert!(evaluate(&g, &phi).unwrap());
    }
}
