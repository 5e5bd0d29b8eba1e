//! α-safety and exact safety thresholds, all in exact arithmetic.
//!
//! Two independent searches are used: the threshold comes from maximizing
//! `e(S, H) / v(S, H)` (a weighted densest-subgraph problem on the non-root
//! vertices, weight = number of root neighbours), while the safety decision
//! minimizes `f_α(S, H)` directly. Their agreement is the threshold contract
//! `is_alpha_safe(p, α) ⟺ α < threshold`.

use std::fmt;

use serde::Serialize;

use super::{ExtensionError, RootedPair};
use crate::graph::{densest_weighted, Bits};
use crate::rational::Rational;

/// Default cap on non-root vertices for the exhaustive safety searches.
pub const DEFAULT_FREE_VERTEX_CAP: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SafetyOptions {
    pub max_free_vertices: usize,
}

impl Default for SafetyOptions {
    fn default() -> Self {
        SafetyOptions { max_free_vertices: DEFAULT_FREE_VERTEX_CAP }
    }
}

/// Supremum of the α for which a pair is α-safe.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SafetyThreshold {
    Value(Rational),
    /// No intermediate `S` adds an edge: safe for every α.
    Unbounded,
}

impl fmt::Display for SafetyThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SafetyThreshold::Value(r) => write!(f, "{r}"),
            SafetyThreshold::Unbounded => f.write_str("unbounded"),
        }
    }
}

impl SafetyThreshold {
    /// Whether `alpha` lies strictly below the threshold.
    pub fn admits(&self, alpha: Rational) -> bool {
        match self {
            SafetyThreshold::Value(t) => alpha < *t,
            SafetyThreshold::Unbounded => true,
        }
    }
}

/// Outcome of [`is_alpha_safe`]: the minimum of `f_α(S, H)` over `H ⊊ S ⊆ G`
/// and one minimizing `S` (its non-root vertices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SafetyVerdict {
    pub safe: bool,
    pub min_deficiency: Rational,
    pub witness: Vec<usize>,
}

fn check(p: &RootedPair, opts: SafetyOptions) -> Result<(), ExtensionError> {
    let free = p.free_count();
    if free == 0 {
        return Err(ExtensionError::NoExtension);
    }
    if free > opts.max_free_vertices || free > 64 {
        return Err(ExtensionError::TooLarge { free, cap: opts.max_free_vertices });
    }
    Ok(())
}

pub fn safety_threshold(p: &RootedPair) -> Result<SafetyThreshold, ExtensionError> {
    safety_threshold_with(p, SafetyOptions::default())
}

/// `min v(S,H)/e(S,H)` over extensions with `e(S,H) >= 1`.
pub fn safety_threshold_with(p: &RootedPair, opts: SafetyOptions) -> Result<SafetyThreshold, ExtensionError> {
    check(p, opts)?;
    let (adj, w) = p.free_structure();
    let best = densest_weighted(&adj, &w, crate::graph::full_mask(p.free_count())).expect("nonempty");
    if best.num == 0 {
        Ok(SafetyThreshold::Unbounded)
    } else {
        Ok(SafetyThreshold::Value(Rational::new(best.den as i128, best.num as i128)))
    }
}

pub fn is_alpha_safe(p: &RootedPair, alpha: Rational) -> Result<SafetyVerdict, ExtensionError> {
    is_alpha_safe_with(p, alpha, SafetyOptions::default())
}

/// Decides `f_α(S, H) > 0` for every `H ⊊ S ⊆ G` by branch and bound on the
/// minimum deficiency.
pub fn is_alpha_safe_with(
    p: &RootedPair,
    alpha: Rational,
    opts: SafetyOptions,
) -> Result<SafetyVerdict, ExtensionError> {
    if !alpha.is_positive() {
        return Err(ExtensionError::NonPositiveAlpha(alpha));
    }
    check(p, opts)?;
    let (adj, w) = p.free_structure();
    let mut s =
        MinSearch { adj: &adj, w: &w, p: alpha.numer() as i64, q: alpha.denom() as i64, best: i64::MAX, best_set: 0 };
    let all = crate::graph::full_mask(p.free_count());
    for u in Bits(all) {
        s.offer(1 << u);
    }
    s.offer(all);
    s.branch(0, all);
    let k = p.root_count();
    Ok(SafetyVerdict {
        safe: s.best > 0,
        min_deficiency: Rational::new(s.best as i128, s.q as i128),
        witness: Bits(s.best_set).map(|i| i + k).collect(),
    })
}

/// Minimizes `D(T) = q|T| − p(w(T) + e(T))` over nonempty `T`.
///
/// A minimizer with at least two vertices has `p·(w(u) + deg_T(u)) >= q` for
/// each of its vertices (dropping `u` would not increase `D`); singletons are
/// evaluated up front so the search may assume that rule.
struct MinSearch<'a> {
    adj: &'a [u64],
    w: &'a [u64],
    p: i64,
    q: i64,
    best: i64,
    best_set: u64,
}

impl MinSearch<'_> {
    fn d(&self, set: u64) -> i64 {
        let mut twice_e = 0i64;
        let mut w = 0i64;
        for v in Bits(set) {
            twice_e += (self.adj[v] & set).count_ones() as i64;
            w += self.w[v] as i64;
        }
        self.q * set.count_ones() as i64 - self.p * (w + twice_e / 2)
    }

    fn offer(&mut self, set: u64) {
        let d = self.d(set);
        if d < self.best {
            self.best = d;
            self.best_set = set;
        }
    }

    fn branch(&mut self, inc: u64, mut und: u64) {
        loop {
            let all = inc | und;
            let weak = |u: usize| self.p * (self.w[u] as i64 + (self.adj[u] & all).count_ones() as i64) < self.q;
            if Bits(inc).any(weak) {
                return;
            }
            let drop: u64 = Bits(und).filter(|&u| weak(u)).fold(0, |m, u| m | 1 << u);
            if drop == 0 {
                break;
            }
            und &= !drop;
        }
        if inc != 0 {
            self.offer(inc);
        }
        if und == 0 {
            return;
        }
        // 2·D(T) >= 2·D(I) + Σ_{u ∈ U} min(0, 2q − 2p(w(u) + d_I(u)) − p·d_U(u))
        let mut bound = 2 * self.d(inc);
        let mut pick = (i64::MAX, 0usize);
        for u in Bits(und) {
            let di = (self.adj[u] & inc).count_ones() as i64;
            let du = (self.adj[u] & und).count_ones() as i64;
            let gain = 2 * self.q - 2 * self.p * (self.w[u] as i64 + di) - self.p * du;
            if gain < 0 {
                bound += gain;
            }
            if gain < pick.0 {
                pick = (gain, u);
            }
        }
        if bound >= 2 * self.best {
            return;
        }
        let u = pick.1;
        self.branch(inc | 1 << u, und & !(1 << u));
        self.branch(inc, und & !(1 << u));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::PatternGraph;

    #[test]
    fn examples() {
        let pendant = RootedPair::new(PatternGraph::complete(2).unwrap(), 1).unwrap();
        assert!(is_alpha_safe(&pendant, Rational::new(1, 2)).unwrap().safe);
        assert_eq!(safety_threshold(&pendant).unwrap(), SafetyThreshold::Value(Rational::one()));
        assert!(!is_alpha_safe(&pendant, Rational::one()).unwrap().safe);

        let common = RootedPair::new(PatternGraph::from_edges(3, &[(0, 2), (1, 2)]).unwrap(), 2).unwrap();
        let v = is_alpha_safe(&common, Rational::new(2, 3)).unwrap();
        assert!(!v.safe);
        assert_eq!(v.min_deficiency, Rational::new(-1, 3));
        assert_eq!(v.witness, vec![2]);

        let isolated = RootedPair::new(PatternGraph::empty(2).unwrap(), 1).unwrap();
        assert_eq!(safety_threshold(&isolated).unwrap(), SafetyThreshold::Unbounded);

        let bare = RootedPair::new(PatternGraph::empty(1).unwrap(), 1).unwrap();
        assert_eq!(safety_threshold(&bare), Err(ExtensionError::NoExtension));
        assert!(is_alpha_safe(&pendant, Rational::zero()).is_err());
    }

    #[test]
    fn cap_is_enforced() {
        let g = PatternGraph::empty(10).unwrap();
        let p = RootedPair::new(g, 1).unwrap();
        let opts = SafetyOptions { max_free_vertices: 5 };
        assert_eq!(safety_threshold_with(&p, opts), Err(ExtensionError::TooLarge { free: 9, cap: 5 }));
    }
}
