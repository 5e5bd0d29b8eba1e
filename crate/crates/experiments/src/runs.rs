//! The experiment runners. Each takes plain parameters (deserialisable from
//! JSON) and a [`RunOptions`], and returns a self-describing record.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use zol_core::constructions::{build, ConstructionId};
use zol_core::extensions::{
    count_strict_extensions, deficiency, find_strict_extension, has_full_extension_property, is_alpha_safe,
    safety_threshold,
};
use zol_core::graph::{automorphism_count, classify_balance, graph6_decode};
use zol_core::{BalanceClass, HostGraph, PatternGraph, Rational, RootedPair};

use crate::count::{contains_induced, count_induced, induced_embeddings};
use crate::expected::expected_induced_copies;
use crate::record::ExperimentRecord;
use crate::rng::{default_master_seed, trial_rng};
use crate::sample::{sample_gnp_with, EdgeProbability};
use crate::stats::{ols_slope, poisson_tv_distance, summarize_counts};
use crate::ExperimentError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RunOptions {
    pub seed: u64,
    /// Worker threads; `0` uses every available core. Never affects results.
    pub workers: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { seed: default_master_seed(), workers: 0 }
    }
}

impl RunOptions {
    pub fn with_seed(seed: u64) -> Self {
        RunOptions { seed, workers: 0 }
    }

    fn pool(&self) -> rayon::ThreadPool {
        rayon::ThreadPoolBuilder::new().num_threads(self.workers).build().expect("thread pool")
    }
}

/// Runs `trials` independent trials of grid cell `cell`, returning outcomes
/// in trial order.
fn run_cell<T: Send>(
    pool: &rayon::ThreadPool,
    opts: &RunOptions,
    cell: u64,
    trials: usize,
    f: impl Fn(&mut ChaCha8Rng) -> T + Sync,
) -> Vec<T> {
    pool.install(|| (0..trials as u64).into_par_iter().map(|t| f(&mut trial_rng(opts.seed, cell, t))).collect())
}

/// `K<n>`, `C<n>`, `P<n>`, a graph-valued construction id, or graph6.
pub fn parse_pattern(name: &str) -> Result<PatternGraph, ExperimentError> {
    let name = name.trim();
    let family = |prefix: char| {
        let rest = name.strip_prefix(prefix)?;
        (rest.len() <= 2 && !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit())).then(|| rest.parse().ok())?
    };
    if let Some(k) = family('K') {
        return Ok(PatternGraph::complete(k)?);
    }
    if let Some(k) = family('C') {
        return Ok(PatternGraph::cycle(k)?);
    }
    if let Some(k) = family('P') {
        return Ok(PatternGraph::path(k)?);
    }
    if let Ok(id) = name.parse::<ConstructionId>() {
        let c = build(&id)?;
        if c.pair().is_none() {
            return Ok(c.graph().clone());
        }
    }
    graph6_decode(name).map_err(|_| ExperimentError::UnknownPattern(name.to_string()))
}

fn aut_f64(g: &PatternGraph) -> f64 {
    automorphism_count(g).to_string().parse().expect("decimal integer")
}

/// The pattern and `1/ρ = v/e`, refusing patterns outside the Poisson regime's
/// hypothesis.
fn balanced_pattern(name: &str) -> Result<(PatternGraph, Rational), ExperimentError> {
    let g = parse_pattern(name)?;
    if g.edge_count() == 0 {
        return Err(ExperimentError::EdgelessPattern);
    }
    let class = classify_balance(&g);
    if class != BalanceClass::StrictlyBalanced {
        return Err(ExperimentError::NotStrictlyBalanced { pattern: name.to_string(), class });
    }
    let inv_rho = Rational::new(g.n() as i128, g.edge_count() as i128);
    Ok((g, inv_rho))
}

fn check(cond: bool, msg: &str) -> Result<(), ExperimentError> {
    if cond {
        Ok(())
    } else {
        Err(ExperimentError::InvalidParams(msg.to_string()))
    }
}

fn frequency(hits: &[bool]) -> f64 {
    hits.iter().filter(|&&h| h).count() as f64 / hits.len().max(1) as f64
}

fn record<P: Serialize>(
    experiment: &str,
    params: &P,
    opts: &RunOptions,
    trials: usize,
    outcomes: Vec<Value>,
    summary: Value,
) -> ExperimentRecord {
    ExperimentRecord {
        experiment: experiment.to_string(),
        params: serde_json::to_value(params).expect("plain parameters"),
        seed: opts.seed,
        trials,
        outcomes,
        summary,
    }
}

fn one() -> f64 {
    1.0
}

fn rational_one() -> Rational {
    Rational::one()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoissonParams {
    pub pattern: String,
    #[serde(default = "one")]
    pub c: f64,
    pub n: usize,
    pub trials: usize,
}

/// Induced-copy counts of a strictly balanced pattern at `p = c·n^{−v/e}`,
/// compared with `Poisson(c^e / aut)`.
pub fn run_poisson_experiment(params: &PoissonParams, opts: &RunOptions) -> Result<ExperimentRecord, ExperimentError> {
    let (g, inv_rho) = balanced_pattern(&params.pattern)?;
    check(params.c >= 0.0, "c must be non-negative")?;
    check(params.n >= 1 && params.trials >= 1, "n and trials must be positive")?;
    let p = EdgeProbability::Scaled { c: params.c, alpha: inv_rho }.at(params.n);
    let lambda = params.c.powi(g.edge_count() as i32) / aut_f64(&g);
    let pool = opts.pool();
    let counts = run_cell(&pool, opts, 0, params.trials, |rng| count_induced(&sample_gnp_with(params.n, p, rng), &g));
    let s = summarize_counts(&counts);
    let tv = poisson_tv_distance(&counts, lambda);
    let expected = expected_induced_copies(&g, params.n, p);
    let summary = json!({
        "p": p,
        "lambda": lambda,
        "expected_copies": expected,
        "mean": s.mean,
        "variance": s.variance,
        "histogram": s.histogram,
        "tv_distance": tv,
        "table": [{
            "n": params.n, "p": p, "lambda": lambda, "expected_copies": expected,
            "mean": s.mean, "variance": s.variance, "tv_distance": tv,
        }],
    });
    Ok(record("poisson", params, opts, params.trials, counts.into_iter().map(Value::from).collect(), summary))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ThresholdParams {
    pub pattern: String,
    pub alphas: Vec<Rational>,
    pub ns: Vec<usize>,
    pub trials: usize,
}

/// Appearance frequency of a strictly balanced pattern at `p = n^{−α}` over
/// an `(α, n)` grid.
pub fn run_threshold_experiment(
    params: &ThresholdParams,
    opts: &RunOptions,
) -> Result<ExperimentRecord, ExperimentError> {
    let (g, inv_rho) = balanced_pattern(&params.pattern)?;
    check(!params.alphas.is_empty() && !params.ns.is_empty(), "empty grid")?;
    check(params.alphas.iter().all(|a| !a.is_negative()), "alphas must be non-negative")?;
    check(params.ns.iter().all(|&n| n >= 1) && params.trials >= 1, "n and trials must be positive")?;
    let pool = opts.pool();
    let mut outcomes = Vec::new();
    let mut table = Vec::new();
    let mut freq = vec![vec![0.0; params.ns.len()]; params.alphas.len()];
    for (ai, &alpha) in params.alphas.iter().enumerate() {
        for (ni, &n) in params.ns.iter().enumerate() {
            let p = EdgeProbability::power(alpha).at(n);
            let cell = (ai * params.ns.len() + ni) as u64;
            let hits =
                run_cell(&pool, opts, cell, params.trials, |rng| contains_induced(&sample_gnp_with(n, p, rng), &g));
            freq[ai][ni] = frequency(&hits);
            table.push(json!({
                "alpha": alpha, "n": n, "p": p, "frequency": freq[ai][ni],
                "expected_copies": expected_induced_copies(&g, n, p),
            }));
            outcomes.push(json!({ "alpha": alpha, "n": n, "hits": hits }));
        }
    }
    // Frequencies should not increase with α at a fixed n.
    let mut by_alpha: Vec<usize> = (0..params.alphas.len()).collect();
    by_alpha.sort_by_key(|&i| params.alphas[i]);
    let monotone = (0..params.ns.len()).all(|ni| by_alpha.windows(2).all(|w| freq[w[0]][ni] >= freq[w[1]][ni]));
    let summary = json!({ "threshold_alpha": inv_rho, "monotone_in_alpha": monotone, "table": table });
    Ok(record("threshold", params, opts, params.trials, outcomes, summary))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionParams {
    pub r: usize,
    pub alpha: Rational,
    pub ns: Vec<usize>,
    pub trials: usize,
}

/// Frequency of the full level-`r` extension property in `G(n, n^{−α})`.
pub fn run_extension_property_experiment(
    params: &ExtensionParams,
    opts: &RunOptions,
) -> Result<ExperimentRecord, ExperimentError> {
    check((1..=3).contains(&params.r), "r must lie in 1..=3")?;
    check(params.alpha.is_positive(), "alpha must be positive")?;
    check(!params.ns.is_empty() && params.ns.iter().all(|&n| n > params.r), "every n must exceed r")?;
    check(params.trials >= 1, "trials must be positive")?;
    let pool = opts.pool();
    let mut outcomes = Vec::new();
    let mut table = Vec::new();
    for (ni, &n) in params.ns.iter().enumerate() {
        let p = EdgeProbability::power(params.alpha).at(n);
        let holds = run_cell(&pool, opts, ni as u64, params.trials, |rng| {
            has_full_extension_property(&sample_gnp_with(n, p, rng), params.r).is_none()
        });
        table.push(json!({
            "n": n, "p": p, "frequency": frequency(&holds),
            // Expected witnesses for the demand "adjacent to all r".
            "common_neighbour_mean": (n - params.r) as f64 * p.powi(params.r as i32),
        }));
        outcomes.push(json!({ "n": n, "holds": holds }));
    }
    let summary = json!({ "below_reciprocal": params.alpha < Rational::new(1, params.r as i128), "table": table });
    Ok(record("extension", params, opts, params.trials, outcomes, summary))
}

/// A rooted pair given by name (`pendant`, `isolated` or a pair-valued
/// construction id) or inline as pair JSON.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PairSpec {
    Named(String),
    Inline(Value),
}

impl PairSpec {
    pub fn resolve(&self) -> Result<RootedPair, ExperimentError> {
        match self {
            PairSpec::Inline(v) => Ok(RootedPair::from_json_str(&v.to_string())?),
            PairSpec::Named(name) => match name.as_str() {
                "pendant" => Ok(RootedPair::new(PatternGraph::complete(2)?, 1)?),
                "isolated" => Ok(RootedPair::new(PatternGraph::empty(2)?, 1)?),
                other => {
                    let c = build(&other.parse()?)?;
                    c.pair().cloned().ok_or_else(|| ExperimentError::InvalidParams(format!("{other} is not a pair")))
                }
            },
        }
    }
}

/// How root tuples are chosen in each sampled host.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RootSampling {
    /// One uniformly random tuple of distinct vertices; its extensions are counted.
    #[default]
    Uniform,
    /// Tuples spanning an induced copy of the root graph; each is tested for
    /// at least one extension.
    Induced,
}

fn default_max_root_tuples() -> usize {
    2000
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SafeExtParams {
    pub pair: PairSpec,
    pub alpha: Rational,
    pub ns: Vec<usize>,
    pub trials: usize,
    #[serde(default)]
    pub roots: RootSampling,
    /// Induced sampling: root tuples tested per host, drawn at random from
    /// the enumerated copies.
    #[serde(default = "default_max_root_tuples")]
    pub max_root_tuples: usize,
}

/// Enumerated root tuples per host before subsampling.
const ROOT_ENUMERATION_LIMIT: usize = 200_000;

/// Extension counts of an α-safe pair in `G(n, n^{−α})`, with the log-log
/// slope of the mean count against `n` compared to `f_α(G, H)`.
pub fn run_safe_extension_experiment(
    params: &SafeExtParams,
    opts: &RunOptions,
) -> Result<ExperimentRecord, ExperimentError> {
    let pair = params.pair.resolve()?;
    let verdict = is_alpha_safe(&pair, params.alpha)?;
    if !verdict.safe {
        return Err(ExperimentError::Unsafe { alpha: params.alpha, threshold: safety_threshold(&pair)? });
    }
    check(!params.ns.is_empty() && params.ns.iter().all(|&n| n >= pair.g().n()), "every n must fit the pair")?;
    check(params.trials >= 1, "trials must be positive")?;
    let all: Vec<usize> = (0..pair.g().n()).collect();
    let f_alpha = deficiency(&pair, &all, params.alpha)?;
    let k = pair.root_count();
    let h = pair.h();
    let pool = opts.pool();
    let mut outcomes = Vec::new();
    let mut table = Vec::new();
    let mut log_n = Vec::new();
    let mut log_mean = Vec::new();
    for (ni, &n) in params.ns.iter().enumerate() {
        let p = EdgeProbability::power(params.alpha).at(n);
        match params.roots {
            RootSampling::Uniform => {
                let counts = run_cell(&pool, opts, ni as u64, params.trials, |rng| {
                    let host = sample_gnp_with(n, p, rng);
                    let roots = rand::seq::index::sample(rng, n, k).into_vec();
                    count_strict_extensions(&host, &pair, &roots).expect("valid root image")
                });
                let s = summarize_counts(&counts);
                if s.mean > 0.0 {
                    log_n.push((n as f64).ln());
                    log_mean.push(s.mean.ln());
                }
                table.push(json!({
                    "n": n, "p": p, "mean": s.mean, "variance": s.variance,
                    "fraction_extended": counts.iter().filter(|&&c| c > 0).count() as f64 / counts.len() as f64,
                }));
                outcomes.push(json!({ "n": n, "counts": counts }));
            }
            RootSampling::Induced => {
                let results = run_cell(&pool, opts, ni as u64, params.trials, |rng| {
                    induced_trial(&sample_gnp_with(n, p, rng), &pair, &h, params.max_root_tuples, rng)
                });
                let tuples: u64 = results.iter().map(|r| r.0).sum();
                let extended: u64 = results.iter().map(|r| r.1).sum();
                let all_ok = results.iter().filter(|r| r.0 == r.1).count();
                let nonempty = results.iter().filter(|r| r.0 > 0).count();
                table.push(json!({
                    "n": n, "p": p,
                    "frequency_all_extended": all_ok as f64 / results.len() as f64,
                    "fraction_with_tuples": nonempty as f64 / results.len() as f64,
                    "tuples_tested": tuples,
                    "fraction_tuples_extended": if tuples == 0 { 1.0 } else { extended as f64 / tuples as f64 },
                }));
                outcomes.push(json!({
                    "n": n,
                    "tested": results.iter().map(|r| r.0).collect::<Vec<_>>(),
                    "extended": results.iter().map(|r| r.1).collect::<Vec<_>>(),
                }));
            }
        }
    }
    let slope = (log_n.len() >= 2).then(|| ols_slope(&log_n, &log_mean));
    let summary = json!({ "f_alpha": f_alpha, "f_alpha_value": f_alpha.to_f64(), "slope": slope, "table": table });
    Ok(record("safe-ext", params, opts, params.trials, outcomes, summary))
}

/// `(tuples tested, tuples with an extension)` for one host.
fn induced_trial(host: &HostGraph, pair: &RootedPair, h: &PatternGraph, max: usize, rng: &mut impl Rng) -> (u64, u64) {
    let mut tuples = induced_embeddings(host, h, ROOT_ENUMERATION_LIMIT);
    if tuples.len() > max {
        tuples.shuffle(rng);
        tuples.truncate(max);
    }
    let extended =
        tuples.iter().filter(|t| find_strict_extension(host, pair, t).expect("valid root image").is_some()).count();
    (tuples.len() as u64, extended as u64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NonconvParams {
    pub pattern: String,
    pub ns: Vec<usize>,
    pub trials: usize,
    /// `p = n^{−scale·v/e}`; `1` sits exactly at the threshold.
    #[serde(default = "rational_one")]
    pub scale: Rational,
}

/// Probability of containing a strictly balanced pattern at its threshold
/// `p = n^{−v/e}`, which tends to `1 − e^{−1/aut}` rather than 0 or 1.
pub fn run_nonconvergence_demo(params: &NonconvParams, opts: &RunOptions) -> Result<ExperimentRecord, ExperimentError> {
    let (g, inv_rho) = balanced_pattern(&params.pattern)?;
    check(params.scale.is_positive(), "scale must be positive")?;
    check(
        !params.ns.is_empty() && params.ns.iter().all(|&n| n >= 1) && params.trials >= 1,
        "n and trials must be positive",
    )?;
    let target = match params.scale.cmp(&Rational::one()) {
        std::cmp::Ordering::Equal => 1.0 - (-1.0 / aut_f64(&g)).exp(),
        std::cmp::Ordering::Greater => 0.0,
        std::cmp::Ordering::Less => 1.0,
    };
    let pool = opts.pool();
    let mut outcomes = Vec::new();
    let mut table = Vec::new();
    let mut freqs = Vec::new();
    for (ni, &n) in params.ns.iter().enumerate() {
        let p = EdgeProbability::power(params.scale * inv_rho).at(n);
        let hits =
            run_cell(&pool, opts, ni as u64, params.trials, |rng| contains_induced(&sample_gnp_with(n, p, rng), &g));
        let f = frequency(&hits);
        freqs.push(f);
        table.push(json!({ "n": n, "p": p, "frequency": f, "target": target, "deviation": (f - target).abs() }));
        outcomes.push(json!({ "n": n, "hits": hits }));
    }
    let max = freqs.iter().copied().fold(f64::MIN, f64::max);
    let min = freqs.iter().copied().fold(f64::MAX, f64::min);
    let max_dev = freqs.iter().map(|f| (f - target).abs()).fold(0.0, f64::max);
    let summary = json!({ "target": target, "flatness": max - min, "max_deviation": max_dev, "table": table });
    Ok(record("nonconv", params, opts, params.trials, outcomes, summary))
}

fn parse_params<P: DeserializeOwned>(params: &Value) -> Result<P, ExperimentError> {
    serde_json::from_value(params.clone()).map_err(|e| ExperimentError::InvalidParams(e.to_string()))
}

/// Runs the experiment named `poisson`, `threshold`, `extension`, `safe-ext`
/// or `nonconv` with JSON parameters.
pub fn run_experiment(name: &str, params: &Value, opts: &RunOptions) -> Result<ExperimentRecord, ExperimentError> {
    match name {
        "poisson" => run_poisson_experiment(&parse_params(params)?, opts),
        "threshold" => run_threshold_experiment(&parse_params(params)?, opts),
        "extension" => run_extension_property_experiment(&parse_params(params)?, opts),
        "safe-ext" => run_safe_extension_experiment(&parse_params(params)?, opts),
        "nonconv" => run_nonconvergence_demo(&parse_params(params)?, opts),
        other => Err(ExperimentError::UnknownExperiment(other.to_string())),
    }
}
