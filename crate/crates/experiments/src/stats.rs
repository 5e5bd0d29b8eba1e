//! Summary statistics for trial outcomes.

use serde::Serialize;
use statrs::distribution::{Discrete, Poisson};
use statrs::statistics::Statistics;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CountSummary {
    pub mean: f64,
    pub variance: f64,
    /// `histogram[j]` = number of trials with count `j`.
    pub histogram: Vec<u64>,
}

pub fn summarize_counts(counts: &[u64]) -> CountSummary {
    let xs: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
    let max = counts.iter().copied().max().unwrap_or(0) as usize;
    let mut histogram = vec![0u64; max + 1];
    for &c in counts {
        histogram[c as usize] += 1;
    }
    let variance = if xs.len() > 1 { xs.as_slice().variance() } else { 0.0 };
    CountSummary { mean: xs.as_slice().mean(), variance, histogram }
}

/// Total-variation distance between the empirical distribution of `counts`
/// and `Poisson(lambda)`; mass beyond the largest observed count is included.
pub fn poisson_tv_distance(counts: &[u64], lambda: f64) -> f64 {
    let summary = summarize_counts(counts);
    let trials = counts.len() as f64;
    if lambda <= 0.0 {
        // Point mass at zero.
        return 1.0 - summary.histogram[0] as f64 / trials;
    }
    let poi = Poisson::new(lambda).expect("positive rate");
    let mut covered = 0.0;
    let mut diff = 0.0;
    for (j, &h) in summary.histogram.iter().enumerate() {
        let q = poi.pmf(j as u64);
        covered += q;
        diff += (h as f64 / trials - q).abs();
    }
    0.5 * (diff + (1.0 - covered).max(0.0))
}

/// Least-squares slope of `ys` against `xs`.
pub fn ols_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let mx = xs.mean();
    let my = ys.mean();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}
