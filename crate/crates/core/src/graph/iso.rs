//! Induced embeddings, copy counting and automorphism group orders.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use super::{Bits, PatternGraph};

/// Backtracking search for induced embeddings of `pattern` into `host`.
///
/// `visit` receives each complete embedding (indexed by pattern vertex) and
/// returns `false` to stop the search.
struct Embedder<'a> {
    host: &'a PatternGraph,
    pattern: &'a PatternGraph,
    order: Vec<usize>,
    image: Vec<usize>,
}

impl<'a> Embedder<'a> {
    fn new(host: &'a PatternGraph, pattern: &'a PatternGraph, pinned: &[usize]) -> Self {
        // Pinned vertices first, then greedily the vertex with most placed neighbours.
        let mut order: Vec<usize> = pinned.to_vec();
        let mut placed: u64 = pinned.iter().fold(0, |m, &v| m | 1 << v);
        while order.len() < pattern.n() {
            let next = Bits(pattern.vertex_mask() & !placed)
                .max_by_key(|&v| ((pattern.adj_mask(v) & placed).count_ones(), pattern.adj_mask(v).count_ones()))
                .unwrap();
            order.push(next);
            placed |= 1 << next;
        }
        Embedder { host, pattern, order, image: vec![usize::MAX; pattern.n()] }
    }

    fn candidates(&self, depth: usize, used: u64) -> u64 {
        let p = self.order[depth];
        let mut mask = self.host.vertex_mask() & !used;
        for &q in &self.order[..depth] {
            let hq = self.host.adj_mask(self.image[q]);
            mask &= if self.pattern.has_edge(p, q) { hq } else { !hq };
        }
        mask
    }

    fn run(&mut self, depth: usize, used: u64, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.image);
        }
        let p = self.order[depth];
        let need = self.pattern.adj_mask(p).count_ones();
        for h in Bits(self.candidates(depth, used)) {
            if self.host.adj_mask(h).count_ones() < need {
                continue;
            }
            self.image[p] = h;
            if !self.run(depth + 1, used | 1 << h, visit) {
                return false;
            }
        }
        self.image[p] = usize::MAX;
        true
    }
}

/// Returns an injective map `m` (indexed by pattern vertex) such that
/// `pattern.has_edge(u, v) == host.has_edge(m[u], m[v])`, extending `pins`
/// (pairs `(pattern_vertex, host_vertex)`), or `None`.
pub fn find_induced_embedding(
    host: &PatternGraph,
    pattern: &PatternGraph,
    pins: &[(usize, usize)],
) -> Option<Vec<usize>> {
    if pattern.n() > host.n() {
        return None;
    }
    let mut found = None;
    search(host, pattern, pins, &mut |img| {
        found = Some(img.to_vec());
        false
    });
    found
}

/// Number of induced embeddings (injective maps) of `pattern` into `host`.
pub fn count_induced_embeddings(host: &PatternGraph, pattern: &PatternGraph) -> u128 {
    if pattern.n() > host.n() {
        return 0;
    }
    let mut count = 0u128;
    search(host, pattern, &[], &mut |_| {
        count += 1;
        true
    });
    count
}

/// Number of vertex subsets of `host` inducing a copy of `pattern`.
pub fn count_induced_copies(host: &PatternGraph, pattern: &PatternGraph) -> u128 {
    let emb = count_induced_embeddings(host, pattern);
    if emb == 0 {
        return 0;
    }
    let aut = automorphism_count(pattern).to_u128().expect("embeddings exist, so aut fits");
    emb / aut
}

/// Order of the automorphism group, as a product of orbit sizes along a
/// chain of pointwise stabilizers.
pub fn automorphism_count(g: &PatternGraph) -> BigUint {
    let mut total = BigUint::one();
    let mut fixed: Vec<(usize, usize)> = Vec::new();
    for v in 0..g.n() {
        let deg = g.adj_mask(v).count_ones();
        let mut orbit = 0u64;
        for w in 0..g.n() {
            if g.adj_mask(w).count_ones() != deg || fixed.iter().any(|&(f, _)| f == w) {
                continue;
            }
            let mut pins = fixed.clone();
            pins.push((v, w));
            if w == v || find_induced_embedding(g, g, &pins).is_some() {
                orbit += 1;
            }
        }
        total *= orbit;
        fixed.push((v, v));
    }
    total
}

fn search(
    host: &PatternGraph,
    pattern: &PatternGraph,
    pins: &[(usize, usize)],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) {
    // Validate pins: distinct images, in range, consistent adjacency.
    let mut used = 0u64;
    for (i, &(p, h)) in pins.iter().enumerate() {
        if p >= pattern.n() || h >= host.n() || used >> h & 1 == 1 {
            return;
        }
        if pins[..i].iter().any(|&(q, _)| q == p) {
            return;
        }
        used |= 1 << h;
    }
    for (i, &(p, h)) in pins.iter().enumerate() {
        for &(q, k) in &pins[..i] {
            if pattern.has_edge(p, q) != host.has_edge(h, k) {
                return;
            }
        }
    }
    let pinned: Vec<usize> = pins.iter().map(|&(p, _)| p).collect();
    let mut e = Embedder::new(host, pattern, &pinned);
    for &(p, h) in pins {
        e.image[p] = h;
    }
    let start = pins.len();
    e.run(start, used, visit);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let k3 = PatternGraph::complete(3).unwrap();
        let k4 = PatternGraph::complete(4).unwrap();
        let c4 = PatternGraph::cycle(4).unwrap();
        let c5 = PatternGraph::cycle(5).unwrap();
        let p3 = PatternGraph::path(3).unwrap();
        assert_eq!(count_induced_copies(&k4, &k3), 4);
        assert_eq!(count_induced_copies(&c5, &p3), 5);
        assert_eq!(count_induced_copies(&c4, &k3), 0);
        assert_eq!(count_induced_copies(&c5, &c5), 1);
        assert!(find_induced_embedding(&k4, &k3, &[]).is_some());
        assert!(find_induced_embedding(&c4, &k3, &[]).is_none());
        assert_eq!(automorphism_count(&k3), BigUint::from(6u32));
        assert_eq!(automorphism_count(&c4), BigUint::from(8u32));
        assert_eq!(automorphism_count(&PatternGraph::path(4).unwrap()), BigUint::from(2u32));
    }

    #[test]
    fn pins_are_respected() {
        let p3 = PatternGraph::path(3).unwrap();
        let c5 = PatternGraph::cycle(5).unwrap();
        let m = find_induced_embedding(&c5, &p3, &[(1, 3)]).unwrap();
        assert_eq!(m[1], 3);
        assert!(find_induced_embedding(&c5, &p3, &[(0, 0), (2, 1)]).is_none());
        assert!(find_induced_embedding(&c5, &p3, &[(0, 1), (2, 1)]).is_none());
    }

    #[test]
    fn huge_groups() {
        let k64 = PatternGraph::complete(64).unwrap();
        let fact: BigUint = (1u32..=64).map(BigUint::from).product();
        assert_eq!(automorphism_count(&k64), fact);
        assert_eq!(automorphism_count(&PatternGraph::empty(64).unwrap()), fact);
        assert_eq!(automorphism_count(&PatternGraph::cycle(64).unwrap()), BigUint::from(128u32));
    }
}
