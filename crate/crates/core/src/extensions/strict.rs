//! Strict `(G, H)`-extensions over a fixed image of the roots.
//!
//! The new vertices must realize exactly the edges and non-edges that `G`
//! prescribes between new–new and new–root pairs. Edges among the roots
//! belong to `H` and are not checked.

use std::collections::HashSet;

use super::{ExtensionError, RootedPair};
use crate::graph::GraphView;

fn validate<G: GraphView>(host: &G, p: &RootedPair, root_image: &[usize]) -> Result<(), ExtensionError> {
    if root_image.len() != p.root_count() {
        return Err(ExtensionError::RootImageLength { got: root_image.len(), want: p.root_count() });
    }
    for (i, &r) in root_image.iter().enumerate() {
        if r >= host.order() || root_image[..i].contains(&r) {
            return Err(ExtensionError::BadRootImage(r));
        }
    }
    Ok(())
}

struct Search<'a, G: GraphView> {
    host: &'a G,
    p: &'a RootedPair,
    /// Non-root vertices of `p.g()` in placement order.
    order: Vec<usize>,
    /// Image of every vertex of `p.g()` (roots prefilled).
    image: Vec<usize>,
}

impl<G: GraphView> Search<'_, G> {
    fn fits(&self, v: usize, h: usize, placed: &[usize]) -> bool {
        let g = self.p.g();
        if self.image[..self.p.root_count()].contains(&h) {
            return false;
        }
        for r in 0..self.p.root_count() {
            if g.has_edge(v, r) != self.host.adjacent(h, self.image[r]) {
                return false;
            }
        }
        for &u in placed {
            let hu = self.image[u];
            if hu == h || g.has_edge(v, u) != self.host.adjacent(h, hu) {
                return false;
            }
        }
        true
    }

    fn run(&mut self, depth: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        if depth == self.order.len() {
            return visit(&self.image[self.p.root_count()..]);
        }
        let v = self.order[depth];
        let g = self.p.g();
        // Candidates: neighbours of the lowest-degree placed neighbour, if any.
        let anchor = (0..self.p.root_count())
            .chain(self.order[..depth].iter().copied())
            .filter(|&u| g.has_edge(v, u))
            .min_by_key(|&u| self.host.degree(self.image[u]));
        let placed: Vec<usize> = self.order[..depth].to_vec();
        let cands: Vec<usize> = match anchor {
            Some(u) => self.host.neighbors(self.image[u]).collect(),
            None => (0..self.host.order()).collect(),
        };
        for h in cands {
            if self.fits(v, h, &placed) {
                self.image[v] = h;
                if !self.run(depth + 1, visit) {
                    return false;
                }
            }
        }
        self.image[v] = usize::MAX;
        true
    }
}

/// Calls `visit` with the image of the non-root vertices (in vertex order of
/// `p.g()`) for every strict extension; `visit` returns `false` to stop.
pub fn for_each_strict_extension<G: GraphView>(
    host: &G,
    p: &RootedPair,
    root_image: &[usize],
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> Result<(), ExtensionError> {
    validate(host, p, root_image)?;
    let g = p.g();
    let k = p.root_count();
    // Place vertices with many already-placed neighbours first.
    let mut order = Vec::new();
    let mut placed: u64 = p.root_mask();
    while order.len() < p.free_count() {
        let next = (k..g.n())
            .filter(|&v| placed >> v & 1 == 0)
            .max_by_key(|&v| ((g.adj_mask(v) & placed).count_ones(), g.adj_mask(v).count_ones()))
            .unwrap();
        order.push(next);
        placed |= 1 << next;
    }
    let mut image = vec![usize::MAX; g.n()];
    image[..k].copy_from_slice(root_image);
    let mut s = Search { host, p, order, image };
    s.run(0, visit);
    Ok(())
}

/// One strict extension over `root_image`, or `None`.
pub fn find_strict_extension<G: GraphView>(
    host: &G,
    p: &RootedPair,
    root_image: &[usize],
) -> Result<Option<Vec<usize>>, ExtensionError> {
    let mut found = None;
    for_each_strict_extension(host, p, root_image, &mut |img| {
        found = Some(img.to_vec());
        false
    })?;
    Ok(found)
}

/// Number of vertex sets `W` admitting an enumeration that forms a strict
/// extension (sets, not ordered tuples).
pub fn count_strict_extensions<G: GraphView>(
    host: &G,
    p: &RootedPair,
    root_image: &[usize],
) -> Result<u64, ExtensionError> {
    let mut sets: HashSet<Vec<usize>> = HashSet::new();
    for_each_strict_extension(host, p, root_image, &mut |img| {
        let mut s = img.to_vec();
        s.sort_unstable();
        sets.insert(s);
        true
    })?;
    Ok(sets.len() as u64)
}
