//! Expected numbers of induced copies in `G(n, p)`.

use serde::Serialize;
use zol_core::graph::{automorphism_count, Bits};
use zol_core::PatternGraph;

use crate::ExperimentError;

/// Largest pattern accepted by [`phi_min_expected`].
pub const PHI_MIN_MAX_VERTICES: usize = 16;

fn aut_f64(g: &PatternGraph) -> f64 {
    automorphism_count(g).to_string().parse().expect("decimal integer")
}

/// `C(n, v) · v!/aut · p^e · (1 − p)^{C(v,2) − e}`, i.e. the falling factorial
/// `n (n−1) ⋯ (n−v+1)` over the automorphism count, times the probability of
/// the exact induced edge set.
pub fn expected_induced_copies(pattern: &PatternGraph, n: usize, p: f64) -> f64 {
    let v = pattern.n();
    if v > n {
        return 0.0;
    }
    let e = pattern.edge_count();
    let non_edges = v * (v - 1) / 2 - e;
    let falling: f64 = (0..v).map(|i| (n - i) as f64).product();
    falling / aut_f64(pattern) * p.powi(e as i32) * (1.0 - p).powi(non_edges as i32)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PhiMin {
    pub value: f64,
    /// Vertices of `g` inducing the minimising subgraph.
    pub vertices: Vec<usize>,
}

/// `min E[N_H]` over induced subgraphs `H` of `g` with at least one edge,
/// with a minimiser.
pub fn phi_min_expected(g: &PatternGraph, n: usize, p: f64) -> Result<PhiMin, ExperimentError> {
    if g.edge_count() == 0 {
        return Err(ExperimentError::EdgelessPattern);
    }
    if g.n() > PHI_MIN_MAX_VERTICES {
        return Err(ExperimentError::PatternTooLarge { n: g.n(), cap: PHI_MIN_MAX_VERTICES });
    }
    let mut best: Option<PhiMin> = None;
    for mask in 1u64..1 << g.n() {
        if g.edges_within(mask) == 0 {
            continue;
        }
        let sub = g.induced(mask).expect("subset of a valid graph");
        let value = expected_induced_copies(&sub, n, p);
        if best.as_ref().is_none_or(|b| value < b.value) {
            best = Some(PhiMin { value, vertices: Bits(mask).collect() });
        }
    }
    Ok(best.expect("g has an edge"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k2 = PatternGraph::complete(2).unwrap();
        assert!((expected_induced_copies(&k2, 4, 0.5) - 3.0).abs() < 1e-12);
        let k3 = PatternGraph::complete(3).unwrap();
        let e = expected_induced_copies(&k3, 300, 1.0 / 300.0);
        assert!((e - 300.0 * 299.0 * 298.0 / 6.0 / 300f64.powi(3)).abs() < 1e-12);
        assert!((e - 0.165).abs() < 0.001);
        let c4 = PatternGraph::cycle(4).unwrap();
        let n = 1_000_000;
        assert!((expected_induced_copies(&c4, n, 1.0 / n as f64) - 0.125).abs() < 1e-5);
    }

    #[test]
    fn phi_min_of_an_edge_is_its_own_expectation() {
        let k2 = PatternGraph::complete(2).unwrap();
        let m = phi_min_expected(&k2, 100, 0.1).unwrap();
        assert_eq!(m.vertices, vec![0, 1]);
        assert!((m.value - expected_induced_copies(&k2, 100, 0.1)).abs() < 1e-12);
        assert_eq!(phi_min_expected(&PatternGraph::empty(3).unwrap(), 10, 0.5), Err(ExperimentError::EdgelessPattern));
    }
}
