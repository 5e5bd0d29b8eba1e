//! The full level-r extension property: every demand "adjacent to x_1..x_a,
//! non-adjacent to y_1..y_b" with `a + b <= r` over distinct vertices has a
//! witness distinct from all of them.
//!
//! For a fixed `X` the candidate witnesses are the common neighbourhood `C`
//! of `X`. A demand fails iff some `Y` of at most `r - a` vertices outside `X`
//! covers `C` with closed neighbourhoods; the cover is searched by branching
//! on the vertices able to cover the first uncovered candidate.

use serde::Serialize;

use crate::graph::HostGraph;

/// A demand without a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FailingDemand {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
}

/// Returns the first failing demand found, or `None` if the property holds.
pub fn has_full_extension_property(host: &HostGraph, r: usize) -> Option<FailingDemand> {
    let n = host.n();
    let max_closed = (0..n).map(|v| host.neighbor_list(v).len() + 1).max().unwrap_or(0);
    for a in 0..=r.min(n) {
        let b = r - a;
        let mut xs = Vec::with_capacity(a);
        if let Some(f) = over_subsets(host, a, 0, &mut xs, b, max_closed) {
            return Some(f);
        }
    }
    None
}

fn over_subsets(
    host: &HostGraph,
    a: usize,
    from: usize,
    xs: &mut Vec<usize>,
    b: usize,
    max_closed: usize,
) -> Option<FailingDemand> {
    if xs.len() == a {
        let cands: Vec<u32> = if a == 0 { (0..host.n() as u32).collect() } else { common_neighbours(host, xs) };
        if cands.len() > b * max_closed {
            return None;
        }
        let mut ys = Vec::new();
        return if cover(host, &cands, b, xs, &mut ys) { Some(FailingDemand { xs: xs.clone(), ys }) } else { None };
    }
    for x in from..host.n() {
        xs.push(x);
        let f = over_subsets(host, a, x + 1, xs, b, max_closed);
        xs.pop();
        if f.is_some() {
            return f;
        }
    }
    None
}

fn common_neighbours(host: &HostGraph, xs: &[usize]) -> Vec<u32> {
    let mut acc: Vec<u32> = host.neighbor_list(xs[0]).to_vec();
    for &x in &xs[1..] {
        let other = host.neighbor_list(x);
        let mut j = 0;
        acc.retain(|&v| {
            while j < other.len() && other[j] < v {
                j += 1;
            }
            j < other.len() && other[j] == v
        });
        if acc.is_empty() {
            break;
        }
    }
    acc
}

/// Whether at most `budget` further vertices outside `xs ∪ ys` cover `cands`
/// with their closed neighbourhoods; on success `ys` holds the cover.
fn cover(host: &HostGraph, cands: &[u32], budget: usize, xs: &[usize], ys: &mut Vec<usize>) -> bool {
    let Some(&c0) = cands.first() else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    let c0 = c0 as usize;
    let closed = std::iter::once(c0).chain(host.neighbor_list(c0).iter().map(|&v| v as usize));
    for y in closed {
        if xs.contains(&y) || ys.contains(&y) {
            continue;
        }
        let rest: Vec<u32> =
            cands.iter().copied().filter(|&c| c as usize != y && !host.has_edge(c as usize, y)).collect();
        ys.push(y);
        if cover(host, &rest, budget - 1, xs, ys) {
            return true;
        }
        ys.pop();
    }
    false
}

/// Reference check over all demands and all candidate witnesses.
pub fn has_full_extension_property_naive(host: &HostGraph, r: usize) -> Option<FailingDemand> {
    fn rec(host: &HostGraph, r: usize, xs: &mut Vec<usize>, ys: &mut Vec<usize>) -> Option<FailingDemand> {
        let n = host.n();
        let witnessed = (0..n).any(|w| {
            !xs.contains(&w)
                && !ys.contains(&w)
                && xs.iter().all(|&x| host.has_edge(w, x))
                && ys.iter().all(|&y| !host.has_edge(w, y))
        });
        if !witnessed {
            return Some(FailingDemand { xs: xs.clone(), ys: ys.clone() });
        }
        if xs.len() + ys.len() == r {
            return None;
        }
        // Extend xs (increasing, and only while ys is empty) or ys (increasing).
        for v in 0..n {
            if xs.contains(&v) || ys.contains(&v) {
                continue;
            }
            if ys.is_empty() && xs.last().is_none_or(|&l| v > l) {
                xs.push(v);
                let f = rec(host, r, xs, ys);
                xs.pop();
                if f.is_some() {
                    return f;
                }
            }
            if ys.last().is_none_or(|&l| v > l) {
                ys.push(v);
                let f = rec(host, r, xs, ys);
                ys.pop();
                if f.is_some() {
                    return f;
                }
            }
        }
        None
    }
    rec(host, r, &mut Vec::new(), &mut Vec::new())
}
