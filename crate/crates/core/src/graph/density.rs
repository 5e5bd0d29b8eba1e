//! Density, maximal density and balance classification.
//!
//! Only induced subgraphs are searched: deleting edges from a vertex set never
//! raises its density, so the densest subgraph on any vertex set is the induced
//! one, and a proper subgraph of equal or larger density exists iff some proper
//! induced subgraph (or the full vertex set minus edges, which is strictly
//! sparser) has it.

use super::{Bits, PatternGraph};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BalanceClass {
    StrictlyBalanced,
    Balanced,
    Unbalanced,
}

impl BalanceClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            BalanceClass::StrictlyBalanced => "strictly-balanced",
            BalanceClass::Balanced => "balanced",
            BalanceClass::Unbalanced => "unbalanced",
        }
    }
}

impl std::fmt::Display for BalanceClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A maximizing vertex set together with its density.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensityWitness {
    pub value: Rational,
    pub vertices: Vec<usize>,
}

/// `e(g) / v(g)`.
pub fn density(g: &PatternGraph) -> Rational {
    Rational::new(g.edge_count() as i128, g.n() as i128)
}

/// Maximum of `e(g[S]) / |S|` over nonempty `S`, with one maximizer.
///
/// An edgeless graph has maximal density 0.
pub fn max_density(g: &PatternGraph) -> DensityWitness {
    let weight = vec![0u64; g.n()];
    let best = densest_weighted(g.adjacency(), &weight, g.vertex_mask()).expect("graph is nonempty");
    DensityWitness { value: best.ratio(), vertices: Bits(best.set).collect() }
}

pub fn classify_balance(g: &PatternGraph) -> BalanceClass {
    let rho = density(g);
    let weight = vec![0u64; g.n()];
    let all = g.vertex_mask();
    let best = densest_weighted(g.adjacency(), &weight, all).expect("graph is nonempty");
    if best.ratio() > rho {
        return BalanceClass::Unbalanced;
    }
    // Every proper nonempty subset avoids some vertex.
    for v in 0..g.n() {
        if let Some(sub) = densest_weighted(g.adjacency(), &weight, all & !(1 << v)) {
            if sub.ratio() >= rho {
                return BalanceClass::Balanced;
            }
        }
    }
    BalanceClass::StrictlyBalanced
}

/// Result of [`densest_weighted`]: the set `set` attains `num / den`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Densest {
    pub num: u64,
    pub den: u64,
    pub set: u64,
}

impl Densest {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.num as i128, self.den as i128)
    }
}

/// Maximizes `(w(T) + e(T)) / |T|` over nonempty `T ⊆ allowed`.
///
/// Branch and bound over include/exclude decisions. Two facts drive pruning:
/// every vertex `u` of an optimal `T` satisfies `w(u) + deg_T(u) >= ratio(T)`
/// (otherwise removing it helps), and some optimal `T` is connected (a
/// disconnected set is a mediant of its components).
pub(crate) fn densest_weighted(adj: &[u64], weight: &[u64], allowed: u64) -> Option<Densest> {
    if allowed == 0 {
        return None;
    }
    let mut s = Search { adj, weight, best: Densest { num: 0, den: 1, set: 0 } };
    s.peel(allowed);
    s.branch(0, allowed);
    Some(s.best)
}

struct Search<'a> {
    adj: &'a [u64],
    weight: &'a [u64],
    best: Densest,
}

impl Search<'_> {
    #[inline]
    fn value(&self, set: u64) -> u64 {
        let mut twice_e = 0u64;
        let mut w = 0u64;
        for v in Bits(set) {
            twice_e += (self.adj[v] & set).count_ones() as u64;
            w += self.weight[v];
        }
        w + twice_e / 2
    }

    #[inline]
    fn offer(&mut self, set: u64) {
        let num = self.value(set);
        let den = set.count_ones() as u64;
        if self.best.set == 0 || num * self.best.den > self.best.num * den {
            self.best = Densest { num, den, set };
        }
    }

    /// `contribution <= current best ratio`
    #[inline]
    fn weak(&self, c: u64) -> bool {
        c * self.best.den <= self.best.num
    }

    /// Greedy peeling incumbent: repeatedly drop a vertex of least contribution.
    fn peel(&mut self, allowed: u64) {
        let mut cur = allowed;
        while cur != 0 {
            self.offer(cur);
            let v = Bits(cur).min_by_key(|&v| self.weight[v] + (self.adj[v] & cur).count_ones() as u64).unwrap();
            cur &= !(1 << v);
        }
    }

    fn branch(&mut self, inc: u64, mut und: u64) {
        loop {
            let all = inc | und;
            for v in Bits(inc) {
                if self.weak(self.weight[v] + (self.adj[v] & all).count_ones() as u64) {
                    return;
                }
            }
            let mut drop = 0;
            for u in Bits(und) {
                if self.weak(self.weight[u] + (self.adj[u] & all).count_ones() as u64) {
                    drop |= 1 << u;
                }
            }
            if drop == 0 {
                break;
            }
            und &= !drop;
        }
        if inc != 0 {
            let comp = component(self.adj, inc.trailing_zeros() as usize, inc | und);
            if inc & !comp != 0 {
                return;
            }
            und &= comp;
            self.offer(inc);
        }
        if und == 0 {
            return;
        }
        // 2q·(value(T) - r|T|) <= 2q·val(I) - 2p|I| + Σ_u max(0, 2q(w(u)+d_I(u)) + q·d_U(u) - 2p)
        let (p, q) = (self.best.num as i64, self.best.den as i64);
        let mut bound = 2 * q * self.value(inc) as i64 - 2 * p * inc.count_ones() as i64;
        let mut pick = (i64::MIN, 0usize);
        for u in Bits(und) {
            let di = (self.adj[u] & inc).count_ones() as i64;
            let du = (self.adj[u] & und).count_ones() as i64;
            let gain = 2 * q * (self.weight[u] as i64 + di) + q * du - 2 * p;
            if gain > 0 {
                bound += gain;
            }
            let key = 2 * (self.weight[u] as i64 + di) + du;
            if key > pick.0 {
                pick = (key, u);
            }
        }
        if bound <= 0 {
            return;
        }
        let u = pick.1;
        self.branch(inc | 1 << u, und & !(1 << u));
        self.branch(inc, und & !(1 << u));
    }
}

/// Vertices reachable from `start` inside `within`.
fn component(adj: &[u64], start: usize, within: u64) -> u64 {
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let mut next = 0;
        for v in Bits(frontier) {
            next |= adj[v];
        }
        next &= within & !seen;
        seen |= next;
        frontier = next;
    }
    seen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute(g: &PatternGraph) -> Rational {
        (1..=g.vertex_mask()).map(|m| Rational::new(g.edges_within(m) as i128, m.count_ones() as i128)).max().unwrap()
    }

    #[test]
    fn examples() {
        let k3 = PatternGraph::complete(3).unwrap();
        assert_eq!(density(&k3), Rational::from_int(1));
        assert_eq!(density(&PatternGraph::complete(2).unwrap()), Rational::new(1, 2));
        assert_eq!(density(&PatternGraph::empty(1).unwrap()), Rational::zero());

        let mut k4p = PatternGraph::complete(4).unwrap().disjoint_union(&PatternGraph::empty(1).unwrap()).unwrap();
        k4p.add_edge(3, 4).unwrap();
        let w = max_density(&k4p);
        assert_eq!(w.value, Rational::new(3, 2));
        assert_eq!(w.vertices, vec![0, 1, 2, 3]);

        let c4 = PatternGraph::cycle(4).unwrap();
        assert_eq!(max_density(&c4), DensityWitness { value: Rational::one(), vertices: vec![0, 1, 2, 3] });
        assert_eq!(classify_balance(&c4), BalanceClass::StrictlyBalanced);

        let k3_edge = k3.disjoint_union(&PatternGraph::complete(2).unwrap()).unwrap();
        assert_eq!(classify_balance(&k3_edge), BalanceClass::Unbalanced);

        let bowtie = PatternGraph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (0, 4)]).unwrap();
        assert_eq!(classify_balance(&bowtie), BalanceClass::StrictlyBalanced);

        let two_k3 = k3.disjoint_union(&k3).unwrap();
        assert_eq!(classify_balance(&two_k3), BalanceClass::Balanced);
    }

    #[test]
    fn edgeless_graph_has_zero_maxden() {
        let g = PatternGraph::empty(4).unwrap();
        assert_eq!(max_density(&g).value, Rational::zero());
        assert_eq!(classify_balance(&g), BalanceClass::Balanced);
        assert_eq!(classify_balance(&PatternGraph::empty(1).unwrap()), BalanceClass::StrictlyBalanced);
    }

    #[test]
    fn weighted_matches_enumeration() {
        // w(T) + e(T) over |T| with small weights on a 6-vertex graph.
        let g = PatternGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (0, 5), (0, 3)]).unwrap();
        let weight = [2, 0, 1, 3, 0, 1];
        let got = densest_weighted(g.adjacency(), &weight, g.vertex_mask()).unwrap();
        let expect = (1u64..64)
            .map(|m| {
                let w: u64 = Bits(m).map(|v| weight[v]).sum();
                Rational::new((w + g.edges_within(m) as u64) as i128, m.count_ones() as i128)
            })
            .max()
            .unwrap();
        assert_eq!(got.ratio(), expect);
        assert_eq!(brute(&g), max_density(&g).value);
    }
}
