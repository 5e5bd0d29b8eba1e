//! Induced copies of small patterns in large sparse hosts.
//!
//! `K2`, `K3` and `C4` have neighbourhood-intersection fast paths; any other
//! pattern (meant for at most five vertices) is counted by backtracking
//! along host adjacency lists and divided by its automorphism count.

use std::collections::HashMap;

use zol_core::graph::automorphism_count;
use zol_core::{HostGraph, PatternGraph};

/// Sorted-list intersection size.
fn common(a: &[u32], b: &[u32]) -> usize {
    let (mut i, mut j, mut c) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                c += 1;
                i += 1;
                j += 1;
            }
        }
    }
    c
}

fn count_triangles(host: &HostGraph) -> u64 {
    let mut total = 0u64;
    for u in 0..host.n() {
        let nu = host.neighbor_list(u);
        for &v in nu.iter().filter(|&&v| v as usize > u) {
            let nv = host.neighbor_list(v as usize);
            let above = |l: &[u32]| -> usize { l.partition_point(|&w| w <= v) };
            total += common(&nu[above(nu)..], &nv[above(nv)..]) as u64;
        }
    }
    total
}

/// Induced 4-cycles `u w v z`: for each non-adjacent pair `{u, v}`, the
/// non-adjacent pairs among its common neighbours. Each cycle is seen once
/// from each of its two diagonals.
fn count_induced_c4(host: &HostGraph) -> u64 {
    let mut middles: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
    for w in 0..host.n() {
        let nw = host.neighbor_list(w);
        for (i, &u) in nw.iter().enumerate() {
            for &v in &nw[i + 1..] {
                if !host.has_edge(u as usize, v as usize) {
                    middles.entry((u, v)).or_default().push(w as u32);
                }
            }
        }
    }
    let mut total = 0u64;
    for mids in middles.values() {
        for (i, &a) in mids.iter().enumerate() {
            for &b in &mids[i + 1..] {
                if !host.has_edge(a as usize, b as usize) {
                    total += 1;
                }
            }
        }
    }
    total / 2
}

/// Pattern vertices in an order where each vertex after the first of its
/// component has an earlier neighbour.
fn search_order(pattern: &PatternGraph) -> Vec<usize> {
    let mut order = Vec::with_capacity(pattern.n());
    let mut placed = 0u64;
    while order.len() < pattern.n() {
        let next = (0..pattern.n())
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((pattern.adj_mask(v) & placed).count_ones(), pattern.adj_mask(v).count_ones()))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    order
}

/// Visits induced embeddings (indexed by pattern vertex) until `visit`
/// returns `false`.
fn embeddings(host: &HostGraph, pattern: &PatternGraph, visit: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(
        host: &HostGraph,
        pattern: &PatternGraph,
        order: &[usize],
        depth: usize,
        image: &mut Vec<usize>,
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if depth == order.len() {
            return visit(image);
        }
        let v = order[depth];
        let earlier = &order[..depth];
        let anchor = earlier
            .iter()
            .copied()
            .filter(|&u| pattern.has_edge(u, v))
            .min_by_key(|&u| host.neighbor_list(image[u]).len());
        let fits = |h: usize, image: &[usize]| {
            earlier.iter().all(|&u| image[u] != h && pattern.has_edge(u, v) == host.has_edge(image[u], h))
        };
        let cands: Box<dyn Iterator<Item = usize>> = match anchor {
            Some(u) => {
                Box::new(host.neighbor_list(image[u]).iter().map(|&h| h as usize).collect::<Vec<_>>().into_iter())
            }
            None => Box::new(0..host.n()),
        };
        for h in cands {
            if fits(h, image) {
                image[v] = h;
                if !rec(host, pattern, order, depth + 1, image, visit) {
                    return false;
                }
            }
        }
        image[v] = usize::MAX;
        true
    }
    let order = search_order(pattern);
    let mut image = vec![usize::MAX; pattern.n()];
    rec(host, pattern, &order, 0, &mut image, visit);
}

fn is_complete(p: &PatternGraph) -> bool {
    p.edge_count() == p.n() * (p.n() - 1) / 2
}

fn is_c4(p: &PatternGraph) -> bool {
    p.n() == 4 && p.edge_count() == 4 && (0..4).all(|v| p.adj_mask(v).count_ones() == 2)
}

/// Number of vertex sets of `host` inducing a copy of `pattern`.
pub fn count_induced(host: &HostGraph, pattern: &PatternGraph) -> u64 {
    if pattern.n() > host.n() {
        return 0;
    }
    match pattern.n() {
        1 => return host.n() as u64,
        2 if is_complete(pattern) => return host.edge_count() as u64,
        3 if is_complete(pattern) => return count_triangles(host),
        4 if is_c4(pattern) => return count_induced_c4(host),
        _ => {}
    }
    let mut emb = 0u64;
    embeddings(host, pattern, &mut |_| {
        emb += 1;
        true
    });
    let aut: u64 = automorphism_count(pattern).try_into().expect("small pattern");
    emb / aut
}

/// Whether `host` has an induced copy of `pattern` (stops at the first).
pub fn contains_induced(host: &HostGraph, pattern: &PatternGraph) -> bool {
    if pattern.n() > host.n() {
        return false;
    }
    let mut found = false;
    embeddings(host, pattern, &mut |_| {
        found = true;
        false
    });
    found
}

/// Every induced embedding of `pattern` (as vertex images), up to `limit`.
pub fn induced_embeddings(host: &HostGraph, pattern: &PatternGraph, limit: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if pattern.n() > host.n() || limit == 0 {
        return out;
    }
    embeddings(host, pattern, &mut |img| {
        out.push(img.to_vec());
        out.len() < limit
    });
    out
}

/// Reference count: test every vertex subset of the pattern's size.
pub fn count_induced_brute(host: &HostGraph, pattern: &PatternGraph) -> u64 {
    let k = pattern.n();
    let n = host.n();
    if k > n {
        return 0;
    }
    let mut subset: Vec<usize> = (0..k).collect();
    let mut total = 0;
    loop {
        let sub = PatternGraph::from_edges(
            k,
            &(0..k)
                .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
                .filter(|&(i, j)| host.has_edge(subset[i], subset[j]))
                .collect::<Vec<_>>(),
        )
        .expect("small subgraph");
        if zol_core::graph::find_induced_embedding(&sub, pattern, &[]).is_some() {
            total += 1;
        }
        // Next k-subset in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else { break };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    fn host(g: &PatternGraph) -> HostGraph {
        HostGraph::from_pattern(g)
    }

    #[test]
    fn small_examples() {
        let k4 = PatternGraph::complete(4).unwrap();
        let k3 = PatternGraph::complete(3).unwrap();
        let c4 = PatternGraph::cycle(4).unwrap();
        assert_eq!(count_induced(&host(&k4), &k3), 4);
        assert_eq!(count_induced(&host(&k4), &c4), 0);
        assert_eq!(count_induced(&host(&c4), &c4), 1);
        assert_eq!(count_induced(&host(&PatternGraph::cycle(5).unwrap()), &PatternGraph::path(3).unwrap()), 5);
        assert!(contains_induced(&host(&k4), &k3));
        assert!(!contains_induced(&host(&c4), &k3));
        assert_eq!(induced_embeddings(&host(&k4), &k3, 100).len(), 24);
        assert_eq!(induced_embeddings(&host(&k4), &k3, 5).len(), 5);
    }
}
