use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;
use zol_core::graph::graph6_encode;
use zol_core::{HostGraph, PatternGraph};
use zol_experiments::runs::PairSpec;
use zol_experiments::{
    count_induced, count_induced_brute, expected_induced_copies, phi_min_expected, run_experiment,
    run_nonconvergence_demo, run_poisson_experiment, run_safe_extension_experiment, sample_gnp, sample_gnp_with,
    ExperimentError, NonconvParams, PoissonParams, RootSampling, RunOptions, SafeExtParams,
};

fn k4_pendant() -> PatternGraph {
    PatternGraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)]).unwrap()
}

#[test]
fn edge_counts_match_the_binomial_mean() {
    let (n, p) = (10_000usize, 1e-3);
    let pairs = (n * (n - 1) / 2) as f64;
    let (mean, sd) = (pairs * p, (pairs * p * (1.0 - p)).sqrt());
    for seed in 0..50 {
        let e = sample_gnp(n, p, seed).edge_count() as f64;
        assert!((e - mean).abs() < 5.0 * sd, "seed {seed}: {e} edges, mean {mean}");
    }
}

#[test]
fn extreme_probabilities() {
    assert_eq!(sample_gnp(30, 0.0, 1).edge_count(), 0);
    assert_eq!(sample_gnp(30, 1.0, 1).edge_count(), 435);
}

#[test]
fn sparse_and_dense_samplers_agree_in_distribution() {
    // Just below and above the switch between skipping and direct testing.
    for p in [0.24, 0.26] {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let total: usize = (0..200).map(|_| sample_gnp_with(60, p, &mut rng).edge_count()).sum();
        let mean = total as f64 / 200.0;
        let expect = 1770.0 * p;
        let sd = (1770.0 * p * (1.0 - p) / 200.0).sqrt();
        assert!((mean - expect).abs() < 5.0 * sd, "p = {p}: {mean} vs {expect}");
    }
}

#[test]
fn fast_counts_equal_subset_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let patterns = [
        PatternGraph::complete(3).unwrap(),
        PatternGraph::cycle(4).unwrap(),
        PatternGraph::path(3).unwrap(),
        PatternGraph::complete(4).unwrap(),
        k4_pendant(),
        PatternGraph::cycle(5).unwrap(),
    ];
    for _ in 0..12 {
        let n = rng.gen_range(5..=30);
        let p = rng.gen_range(0.1..0.7);
        let host = sample_gnp_with(n, p, &mut rng);
        for pat in &patterns {
            if pat.n() <= 4 || n <= 22 {
                assert_eq!(count_induced(&host, pat), count_induced_brute(&host, pat), "n = {n}, {:?}", pat.edges());
            }
        }
    }
}

#[test]
fn induced_counts_ignore_non_induced_copies() {
    // K4 holds four triangles and no induced C4 or P3.
    let k4 = HostGraph::from_pattern(&PatternGraph::complete(4).unwrap());
    assert_eq!(count_induced(&k4, &PatternGraph::complete(3).unwrap()), 4);
    assert_eq!(count_induced(&k4, &PatternGraph::cycle(4).unwrap()), 0);
    assert_eq!(count_induced(&k4, &PatternGraph::path(3).unwrap()), 0);
}

#[test]
fn phi_min_picks_the_clique_of_a_pendant_k4() {
    let n = 10_000;
    let p = (n as f64).powf(-2.0 / 3.0);
    let m = phi_min_expected(&k4_pendant(), n, p).unwrap();
    assert_eq!(m.vertices, vec![0, 1, 2, 3]);
    let k4 = PatternGraph::complete(4).unwrap();
    assert!((m.value - expected_induced_copies(&k4, n, p)).abs() < 1e-9);
}

#[test]
fn phi_min_is_monotone_in_p_in_sparse_regimes() {
    let mut rng = ChaCha8Rng::seed_from_u64(20);
    for case in 0..20 {
        let v = rng.gen_range(3..=7);
        let mut edges = vec![(0, 1)];
        for a in 0..v {
            for b in a + 1..v {
                if (a, b) != (0, 1) && rng.gen_bool(0.5) {
                    edges.push((a, b));
                }
            }
        }
        let g = PatternGraph::from_edges(v, &edges).unwrap();
        let n = 1000;
        let hi = rng.gen_range(0.001..0.05);
        let lo = hi * rng.gen_range(0.1..0.9);
        let a = phi_min_expected(&g, n, lo).unwrap().value;
        let b = phi_min_expected(&g, n, hi).unwrap().value;
        assert!(a <= b, "case {case}: {a} > {b}");
    }
}

#[test]
fn records_are_reproducible_and_independent_of_workers() {
    let params = PoissonParams { pattern: "K3".into(), c: 1.0, n: 200, trials: 64 };
    let one = run_poisson_experiment(&params, &RunOptions { seed: 5, workers: 1 }).unwrap();
    let four = run_poisson_experiment(&params, &RunOptions { seed: 5, workers: 4 }).unwrap();
    assert_eq!(one.to_json_string(), four.to_json_string());
    let other = run_poisson_experiment(&params, &RunOptions { seed: 6, workers: 1 }).unwrap();
    assert_ne!(one.outcomes, other.outcomes);
}

#[test]
fn zero_scale_gives_zero_counts() {
    let params = PoissonParams { pattern: "C4".into(), c: 0.0, n: 100, trials: 20 };
    let rec = run_poisson_experiment(&params, &RunOptions::with_seed(1)).unwrap();
    assert!(rec.outcomes.iter().all(|c| c == 0));
    assert_eq!(rec.summary["tv_distance"], 0.0);
}

#[test]
fn json_dispatch_and_schema() {
    let rec = run_experiment(
        "threshold",
        &json!({"pattern": "K3", "alphas": ["1/2", "999/1000"], "ns": [50], "trials": 20}),
        &RunOptions::with_seed(2),
    )
    .unwrap();
    let v: serde_json::Value = serde_json::from_str(&rec.to_json_string()).unwrap();
    for key in ["experiment", "params", "seed", "trials", "outcomes", "summary"] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert_eq!(rec.table().len(), 2);
    assert!(rec.table()[1]["frequency"].as_f64().unwrap() < 0.1);
    assert!(rec.summary_csv().unwrap().starts_with("alpha,expected_copies,frequency,n,p\n"));
    assert!(matches!(
        run_experiment("poisson", &json!({"pattern": "K3", "n": 10}), &RunOptions::with_seed(2)),
        Err(ExperimentError::InvalidParams(_))
    ));
    assert!(matches!(
        run_experiment("nope", &json!({}), &RunOptions::with_seed(2)),
        Err(ExperimentError::UnknownExperiment(_))
    ));
}

#[test]
fn pendant_extension_counts_grow_like_root_degree() {
    let params = SafeExtParams {
        pair: PairSpec::Named("pendant".into()),
        alpha: "1/2".parse().unwrap(),
        ns: vec![200, 400, 800, 1600],
        trials: 200,
        roots: RootSampling::Uniform,
        max_root_tuples: 1,
    };
    let rec = run_safe_extension_experiment(&params, &RunOptions::with_seed(7)).unwrap();
    let slope = rec.summary["slope"].as_f64().unwrap();
    assert!((slope - 0.5).abs() < 0.15, "slope {slope}");
    assert_eq!(rec.summary["f_alpha"], "1/2");

    let isolated =
        SafeExtParams { pair: PairSpec::Named("isolated".into()), ns: vec![100, 200, 400], trials: 20, ..params };
    let rec = run_safe_extension_experiment(&isolated, &RunOptions::with_seed(7)).unwrap();
    assert!((rec.summary["slope"].as_f64().unwrap() - 1.0).abs() < 0.1);
}

#[test]
fn unsafe_pairs_are_refused() {
    let params = SafeExtParams {
        pair: PairSpec::Named("companion:c".into()),
        alpha: "3/5".parse().unwrap(),
        ns: vec![100],
        trials: 1,
        roots: RootSampling::Induced,
        max_root_tuples: 10,
    };
    assert!(matches!(
        run_safe_extension_experiment(&params, &RunOptions::with_seed(1)),
        Err(ExperimentError::Unsafe { .. })
    ));
}

#[test]
fn triangle_at_its_threshold_stays_inside_the_unit_interval() {
    let params = NonconvParams { pattern: "K3".into(), ns: vec![200, 400], trials: 1000, scale: "1".parse().unwrap() };
    let rec = run_nonconvergence_demo(&params, &RunOptions::with_seed(8)).unwrap();
    assert!((rec.summary["target"].as_f64().unwrap() - 0.1535).abs() < 1e-3);
    assert!(rec.summary["max_deviation"].as_f64().unwrap() < 0.05);

    let far = NonconvParams { scale: "2".parse().unwrap(), ..params };
    let rec = run_nonconvergence_demo(&far, &RunOptions::with_seed(8)).unwrap();
    assert!(rec.table().iter().all(|r| r["frequency"].as_f64().unwrap() < 0.01));
}

#[test]
fn graph6_patterns_are_accepted() {
    let params = PoissonParams { pattern: graph6_encode(&PatternGraph::cycle(4).unwrap()), c: 1.0, n: 50, trials: 4 };
    assert!(run_poisson_experiment(&params, &RunOptions::with_seed(1)).is_ok());
}
