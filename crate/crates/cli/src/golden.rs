//! Golden checks: every published number the toolkit reproduces, run as one
//! suite by `zol verify-paper`.

use serde_json::{json, Value};
use zol_core::constructions::{
    build, build_base_h, build_case_h0, build_g0, build_k4_companion_pair, check_bound_inequality, region_instances,
    region_threshold, Companion,
};
use zol_core::extensions::{is_alpha_safe, safety_threshold, SafetyThreshold};
use zol_core::games::{duplicator_k4_respond, k4_synthetic_host, GamePosition, Side};
use zol_core::graph::{automorphism_count, classify_balance, density, max_density};
use zol_core::logic::{
    build_phi4, build_phi_k, build_psi1, build_psi2, evaluate, evaluate_with_budget, parse_sentence, Formula,
};
use zol_core::{BalanceClass, PatternGraph, Rational};
use zol_experiments::{run_poisson_experiment, PoissonParams, RunOptions};

/// Outcome of one golden check.
#[derive(Clone, Debug, PartialEq)]
pub struct GoldenCheck {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl GoldenCheck {
    pub fn to_json(&self) -> Value {
        json!({ "name": self.name, "passed": self.passed, "detail": self.detail })
    }
}

/// Fixed seed for the one statistical golden check.
pub const GOLDEN_SEED: u64 = 0x5eed_0001;

fn r(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

fn verdict(name: &'static str, passed: bool, detail: String) -> GoldenCheck {
    GoldenCheck { name, passed, detail }
}

fn g0_density() -> GoldenCheck {
    let g0 = build_g0();
    let d = density(g0.graph());
    verdict("g0-density", d == r(13, 7), format!("density {d}"))
}

fn g0_maxden() -> GoldenCheck {
    let g0 = build_g0();
    let w = max_density(g0.graph());
    let ok = w.value == r(13, 7) && w.vertices.len() == 21;
    verdict("g0-maxden", ok, format!("maxden {} on {} vertices", w.value, w.vertices.len()))
}

fn g0_balance() -> GoldenCheck {
    let g0 = build_g0();
    let c = classify_balance(g0.graph());
    verdict("g0-strictly-balanced", c == BalanceClass::StrictlyBalanced, c.as_str().to_string())
}

fn g0_models_phi() -> GoldenCheck {
    let g0 = build_g0();
    match evaluate_with_budget(g0.graph(), &build_phi4(), 100_000_000) {
        Ok(s) => verdict("g0-models-phi", s.value, format!("{} after {} partial assignments", s.value, s.visited)),
        Err(e) => verdict("g0-models-phi", false, e.to_string()),
    }
}

fn two_children_sentence() -> GoldenCheck {
    let parsed = match parse_sentence("E x; E y; E z; x~y & x~z & !y=z") {
        Ok(s) => s,
        Err(e) => return verdict("two-children-sentence", false, e.to_string()),
    };
    let expected = Formula::exists(
        "x",
        Formula::exists(
            "y",
            Formula::exists(
                "z",
                Formula::and(vec![Formula::adj("x", "y"), Formula::adj("x", "z"), Formula::neq("y", "z")]),
            ),
        ),
    );
    let p3 = PatternGraph::path(3).expect("path");
    let k2 = PatternGraph::complete(2).expect("edge");
    let ok = *parsed.formula() == expected && evaluate(&p3, &parsed) == Ok(true) && evaluate(&k2, &parsed) == Ok(false);
    verdict("two-children-sentence", ok, format!("{parsed}"))
}

fn sentence_depths() -> GoldenCheck {
    let d4 = build_phi4().quantifier_depth();
    let d5 = build_phi_k(5).map(|s| s.quantifier_depth());
    let d6 = build_phi_k(6).map(|s| s.quantifier_depth());
    let ok = d4 == 4 && d5 == Ok(5) && d6 == Ok(6);
    verdict("sentence-depths", ok, format!("phi: {d4}, phi_5: {d5:?}, phi_6: {d6:?}"))
}

fn psi_literal_counts() -> GoldenCheck {
    let a = build_psi1(["a1", "a2", "b1", "b2", "b3"]).map(|f| f.literal_count());
    let b = build_psi2(["a1", "a2", "a3", "b1", "b2", "b3", "b4"]).map(|f| f.literal_count());
    verdict("psi-literal-counts", a == Ok(6) && b == Ok(12), format!("psi_1: {a:?}, psi_2: {b:?}"))
}

fn companions_safe() -> GoldenCheck {
    let mut detail = Vec::new();
    let mut ok = true;
    for which in [Companion::C, Companion::D] {
        let pair = build_k4_companion_pair(which);
        let t = safety_threshold(&pair);
        let safe = is_alpha_safe(&pair, r(7, 13)).map(|v| v.safe);
        ok &= matches!(t, Ok(SafetyThreshold::Value(v)) if v >= r(3, 5)) && safe == Ok(true);
        let t_text = t.as_ref().map_or_else(|e| e.to_string(), |t| t.to_string());
        let s_text = safe.as_ref().map_or_else(|e| e.to_string(), |s| s.to_string());
        detail.push(format!("{which:?}: threshold {t_text}, safe at 7/13: {s_text}"));
    }
    verdict("companions-safe", ok, detail.join("; "))
}

fn k4_strategy_examples() -> GoldenCheck {
    let host = k4_synthetic_host();
    let hg = host.graph();
    // x1 ~ x2, x3 adjacent to neither, x4 adjacent to all three.
    let s = PatternGraph::from_edges(4, &[(0, 1), (0, 3), (1, 3), (2, 3)]).expect("spoiler graph");
    let mut pos = GamePosition::start(Side::Left, 4);
    let mut labels = Vec::new();
    for x in 0..4 {
        match duplicator_k4_respond(&host, &s, &pos, x) {
            Ok(y) => {
                labels.push(hg.label(y).unwrap_or("?").to_string());
                pos.xs.push(x);
                pos.ys.push(y);
                pos.rounds_left -= 1;
            }
            Err(e) => return verdict("k4-strategy-examples", false, e.to_string()),
        }
    }
    let ok = labels[1] == "a" && labels[2] == "c" && labels[3] == "a_1_1";
    verdict("k4-strategy-examples", ok, format!("replies {}", labels.join(", ")))
}

fn golden_counts() -> GoldenCheck {
    let base = build_base_h().counts();
    let mut ok = base == (10, 14);
    let mut detail = vec![format!("base H {base:?}")];
    for (case, want) in [(1, (12, 17)), (3, (10, 16)), (8, (11, 17))] {
        let got = build_case_h0(case).map(|c| c.counts());
        ok &= got == Ok(want);
        detail.push(format!("case {case} {got:?}"));
    }
    for case in 1..=13 {
        ok &= build_case_h0(case).map(|c| c.matches_expected()).unwrap_or(false);
    }
    verdict("golden-counts", ok, detail.join(", "))
}

fn first_level_edge_bound() -> GoldenCheck {
    let k = 20i128;
    let lam = (k - 3) * (k - 3) * (k - 4) / 2;
    let params: Vec<Rational> = [k, lam, lam, 2 * k * k, 0].into_iter().map(Rational::from_int).collect();
    let res = check_bound_inequality("first-level-edge-density", &params);
    verdict("first-level-edge-bound", res == Ok(true), format!("{res:?}"))
}

fn region_thresholds() -> GoldenCheck {
    let mut ok = region_threshold(23, 13) == 8 && region_threshold(24, 13) == 1 && region_threshold(22, 12) == 2;
    for inst in region_instances() {
        ok &= region_threshold(inst.a, inst.b) == inst.stated;
    }
    verdict("region-thresholds", ok, format!("{} stated conditions", region_instances().len()))
}

fn poisson_rates() -> GoldenCheck {
    let c4 = PatternGraph::cycle(4).expect("cycle");
    let aut = automorphism_count(&c4);
    let ok = aut.to_string() == "8";
    verdict("c4-poisson-rate", ok, format!("lambda = 1/{aut}"))
}

fn triangle_poisson_mean() -> GoldenCheck {
    let params = PoissonParams { pattern: "K3".into(), c: 1.0, n: 300, trials: 2000 };
    match run_poisson_experiment(&params, &RunOptions::with_seed(GOLDEN_SEED)) {
        Ok(rec) => {
            let mean = rec.summary["mean"].as_f64().unwrap_or(f64::NAN);
            let ok = (mean - 1.0 / 6.0).abs() <= 0.15 / 6.0;
            verdict("triangle-poisson-mean", ok, format!("mean {mean:.4} vs 1/6"))
        }
        Err(e) => verdict("triangle-poisson-mean", false, e.to_string()),
    }
}

fn g0_build_roundtrip() -> GoldenCheck {
    let ok = build(&"g0".parse().expect("id")).map(|c| c.matches_expected()).unwrap_or(false);
    verdict("g0-counts", ok, "v = 21, e = 39".into())
}

/// Runs every golden check in a fixed order.
pub fn golden_checks() -> Vec<GoldenCheck> {
    let checks: [fn() -> GoldenCheck; 15] = [
        golden_counts,
        g0_build_roundtrip,
        g0_density,
        g0_maxden,
        g0_balance,
        g0_models_phi,
        two_children_sentence,
        sentence_depths,
        psi_literal_counts,
        companions_safe,
        k4_strategy_examples,
        first_level_edge_bound,
        region_thresholds,
        poisson_rates,
        triangle_poisson_mean,
    ];
    checks.iter().map(|c| c()).collect()
}
