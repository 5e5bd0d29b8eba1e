//! Generators shared by the integration tests.

#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use zol_core::logic::{Atom, Formula, Sentence};
use zol_core::PatternGraph;

pub fn graph_from_bits(n: usize, bits: &[bool]) -> PatternGraph {
    let mut edges = Vec::new();
    let mut i = 0;
    for u in 0..n {
        for v in u + 1..n {
            if bits[i] {
                edges.push((u, v));
            }
            i += 1;
        }
    }
    PatternGraph::from_edges(n, &edges).unwrap()
}

/// Uniform random graph with `lo..=hi` vertices.
pub fn arb_graph(lo: usize, hi: usize) -> impl Strategy<Value = PatternGraph> {
    (lo..=hi).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |b| graph_from_bits(n, &b))
    })
}

pub fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> PatternGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    PatternGraph::from_edges(n, &edges).unwrap()
}

/// Random closed existential formula of quantifier depth at most `depth`.
/// Conjunctions never directly contain conjunctions (likewise for
/// disjunctions), so printing and parsing give back the same tree.
pub fn random_sentence(rng: &mut ChaCha8Rng, depth: usize) -> Sentence {
    let mut budget = 12;
    let mut fresh = 0;
    let f = gen(rng, depth.max(1), &mut Vec::new(), &mut fresh, &mut budget, None);
    Sentence::new(f).unwrap()
}

#[derive(Clone, Copy, PartialEq)]
enum Conn {
    And,
    Or,
}

fn gen(
    rng: &mut ChaCha8Rng,
    depth: usize,
    scope: &mut Vec<String>,
    fresh: &mut usize,
    budget: &mut usize,
    parent: Option<Conn>,
) -> Formula {
    *budget = budget.saturating_sub(1);
    if scope.is_empty() || (depth > 0 && *budget > 0 && rng.gen_bool(0.35)) {
        let v = format!("v{fresh}");
        *fresh += 1;
        scope.push(v.clone());
        let body = gen(rng, depth - 1, scope, fresh, budget, None);
        scope.pop();
        return Formula::exists(&v, body);
    }
    if *budget > 0 && rng.gen_bool(0.45) {
        let conn = if parent != Some(Conn::And) && (parent == Some(Conn::Or) || rng.gen_bool(0.6)) {
            Conn::And
        } else {
            Conn::Or
        };
        let n = rng.gen_range(2..=3);
        let parts = (0..n).map(|_| gen(rng, depth, scope, fresh, budget, Some(conn))).collect();
        return match conn {
            Conn::And => Formula::And(parts),
            Conn::Or => Formula::Or(parts),
        };
    }
    let a = &scope[rng.gen_range(0..scope.len())];
    let b = &scope[rng.gen_range(0..scope.len())];
    let atom = if rng.gen_bool(0.6) { Atom::adj(a, b) } else { Atom::eq(a, b) };
    if rng.gen_bool(0.4) {
        Formula::Not(atom)
    } else {
        Formula::Atom(atom)
    }
}
