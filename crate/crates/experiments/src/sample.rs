//! Sampling `G(n, p)`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Geometric};
use serde::{Deserialize, Serialize};
use zol_core::{HostGraph, Rational};

/// Edge probability, either literal or `c · n^{−α}` with exact `α`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EdgeProbability {
    Literal(f64),
    Scaled { c: f64, alpha: Rational },
}

impl EdgeProbability {
    pub fn power(alpha: Rational) -> Self {
        EdgeProbability::Scaled { c: 1.0, alpha }
    }

    /// The probability at `n` vertices, clamped to `[0, 1]`.
    pub fn at(&self, n: usize) -> f64 {
        let p = match *self {
            EdgeProbability::Literal(p) => p,
            EdgeProbability::Scaled { c, alpha } => c * (n as f64).powf(-alpha.to_f64()),
        };
        p.clamp(0.0, 1.0)
    }
}

/// Below this probability pairs are skipped geometrically instead of being
/// tested one by one.
const SKIP_BELOW: f64 = 0.25;

/// Each of the `C(n, 2)` pairs independently with probability `p`; sparse
/// graphs are generated in time proportional to their edge count by jumping
/// over absent pairs with geometric gaps.
pub fn sample_gnp_with(n: usize, p: f64, rng: &mut impl Rng) -> HostGraph {
    assert!((0.0..=1.0).contains(&p), "edge probability {p} outside [0, 1]");
    let mut edges = Vec::new();
    if p >= SKIP_BELOW {
        for v in 1..n {
            for w in 0..v {
                if p >= 1.0 || rng.gen_bool(p) {
                    edges.push((w, v));
                }
            }
        }
    } else if p > 0.0 {
        // Pairs (w, v) with w < v in the order (0,1), (0,2), (1,2), (0,3), ...
        let gap = Geometric::new(p).expect("0 < p < 1");
        let (mut v, mut w) = (1usize, 0usize);
        loop {
            let skip = gap.sample(rng);
            let mut next = w as u64 + skip;
            while v < n && next >= v as u64 {
                next -= v as u64;
                v += 1;
            }
            if v >= n {
                break;
            }
            w = next as usize;
            edges.push((w, v));
            w += 1;
            if w == v {
                w = 0;
                v += 1;
            }
        }
    }
    HostGraph::from_edges(n, edges).expect("sampled pairs are valid")
}

pub fn sample_gnp(n: usize, p: f64, seed: u64) -> HostGraph {
    sample_gnp_with(n, p, &mut ChaCha8Rng::seed_from_u64(seed))
}
