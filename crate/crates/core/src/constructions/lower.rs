//! The layered rooted pairs behind Duplicator's general-k strategy and the
//! all-distinct witness graph of φ_k.

use super::{ConstructionError, ConstructionId, ConstructionObject, Labeled, NamedConstruction};
use crate::extensions::{AdjacencyPattern, RootedPair};
use crate::logic::{first_level_name, ground_name, root_name, second_level_name, universal_name};

/// Required adjacency-pattern length for each lemma's root-facing vertex.
pub(crate) fn pattern_length(lemma: usize, k: usize) -> Result<usize, ConstructionError> {
    if k < 5 {
        return Err(ConstructionError::KOutOfRange { k, min: 5, max: usize::MAX });
    }
    match lemma {
        1 => Ok(k - 4),
        2 => Ok(k - 2),
        3 => Ok(k - 3),
        _ => Err(ConstructionError::BadLemma(lemma)),
    }
}

/// Number of non-root vertices of each lemma's pair.
pub fn lower_pair_non_roots(lemma: usize, k: usize) -> Result<usize, ConstructionError> {
    pattern_length(lemma, k)?;
    Ok(match lemma {
        1 => 4 + 3 * (k - 2) + (k - 2) * (k - 2),
        2 => 1 + (k - 2),
        _ => 3 + 3 * (k - 2) + (k - 2) * (k - 2),
    })
}

/// `e(G, H)` of each lemma's pair when the root pattern has weight `w`.
fn lower_pair_edges(lemma: usize, k: usize, w: usize) -> usize {
    let m = k - 2;
    match lemma {
        1 => w + (k - 3) + m + m * (k - 3) + (k - 1) + m * m + m * (k - 1) + m * m * m,
        2 => w + 1 + m * m,
        _ => w + m + (k - 3) * (k - 3) + (k - 3) + (k - 1) + (k - 3) * m + m + m * (k - 1) + m * (k - 3) * m + m * m,
    }
}

fn y(i: usize) -> String {
    format!("y_{i}")
}

fn names(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

/// Layered pair for `lemma ∈ {1, 2, 3}` at `k ≥ 5`; `pattern` gives the
/// adjacency of the first new vertex to the roots.
///
/// * lemma 1: roots `a_1..a_{k-4}` (a clique); new `a_{k-3}` (pattern,
///   length k−4), `a_{k-2}`, `a_{k-1}`, `a_{k-1,j}`, `a_k`, `a_k^i`,
///   `a_k^{k-1,j}`, `a_{k,i}^{k-1,j}` for `i, j ∈ [k-2]`.
/// * lemma 2: roots `y_1..y_{k-2}, a_{k-1}, a_k`; new `b_{k-1}` (pattern,
///   length k−2, weight ≤ k−4) and `b_k^i`, `i ∈ [k-2]`.
/// * lemma 3: roots `y_1..y_{k-3}`; new `c_{k-2}` (pattern, length k−3,
///   weight ≤ k−4) and the `c` family of layers k−1 and k.
///
/// Vertex names use `_` for subscripts and `__` before superscripts, e.g.
/// `a_5_3__4_1` is `a_{5,3}^{4,1}`.
pub fn build_lower_pair(lemma: usize, k: usize, pattern: &AdjacencyPattern) -> Result<RootedPair, ConstructionError> {
    let want = pattern_length(lemma, k)?;
    if pattern.len() != want {
        return Err(ConstructionError::PatternLength { got: pattern.len(), want });
    }
    if lemma != 1 && pattern.weight() > k - 4 {
        return Err(ConstructionError::PatternWeight { weight: pattern.weight(), max: k - 4 });
    }
    let (l, roots) = match lemma {
        1 => lemma1(k, pattern),
        2 => lemma2(k, pattern),
        _ => lemma3(k, pattern),
    };
    Ok(RootedPair::new(l.finish()?, roots)?)
}

fn lemma1(k: usize, e: &AdjacencyPattern) -> (Labeled, usize) {
    let mut l = Labeled::default();
    let a: Vec<String> = (0..=k).map(|i| format!("a_{i}")).collect();
    for i in 1..=k - 4 {
        l.vertex(&a[i]);
        for j in 1..i {
            l.edge(&a[i], &a[j]);
        }
    }
    let first = |n: usize| -> Vec<String> { (1..=n).map(|i| a[i].clone()).collect() };
    let without =
        |n: usize, skip: usize| -> Vec<String> { (1..=n).filter(|&i| i != skip).map(|i| a[i].clone()).collect() };

    let pat: Vec<String> = (1..=k - 4).filter(|&i| e.get(i - 1)).map(|i| a[i].clone()).collect();
    l.join(&a[k - 3], &names(&pat));
    l.join(&a[k - 2], &names(&first(k - 3)));
    l.join(&a[k - 1], &names(&first(k - 2)));
    let a_k1 = |j: usize| format!("a_{}_{j}", k - 1);
    for j in 1..=k - 2 {
        l.join(&a_k1(j), &names(&without(k - 2, j)));
    }
    l.join(&a[k], &names(&first(k - 1)));
    for i in 1..=k - 2 {
        l.join(&format!("a_{k}__{i}"), &names(&without(k - 1, i)));
    }
    for j in 1..=k - 2 {
        let mut nb = first(k - 2);
        nb.push(a_k1(j));
        l.join(&format!("a_{k}__{}_{j}", k - 1), &names(&nb));
    }
    for i in 1..=k - 2 {
        for j in 1..=k - 2 {
            let mut nb = without(k - 2, i);
            nb.push(a_k1(j));
            l.join(&format!("a_{k}_{i}__{}_{j}", k - 1), &names(&nb));
        }
    }
    (l, k - 4)
}

fn lemma2(k: usize, e: &AdjacencyPattern) -> (Labeled, usize) {
    let mut l = Labeled::default();
    let ys: Vec<String> = (1..=k - 2).map(y).collect();
    for v in &ys {
        l.vertex(v);
    }
    // Root adjacencies inherited from earlier rounds: y_{k-2} plays
    // a_{k-2}, adjacent to y_1..y_{k-3}; a_{k-1} and a_k see every y_i and
    // each other. They do not affect safety.
    for i in 0..k - 3 {
        l.edge(&ys[k - 3], &ys[i]);
    }
    let (ak1, ak) = (format!("a_{}", k - 1), format!("a_{k}"));
    l.join(&ak1, &names(&ys));
    let mut nb = ys.clone();
    nb.push(ak1.clone());
    l.join(&ak, &names(&nb));

    let bk1 = format!("b_{}", k - 1);
    let mut nb: Vec<String> = (0..k - 2).filter(|&i| e.get(i)).map(|i| ys[i].clone()).collect();
    nb.push(ak1);
    l.join(&bk1, &names(&nb));
    for i in 1..=k - 2 {
        let mut nb: Vec<String> = (1..=k - 2).filter(|&t| t != i).map(y).collect();
        nb.push(bk1.clone());
        l.join(&format!("b_{k}__{i}"), &names(&nb));
    }
    (l, k)
}

fn lemma3(k: usize, e: &AdjacencyPattern) -> (Labeled, usize) {
    let mut l = Labeled::default();
    let ys: Vec<String> = (1..=k - 3).map(y).collect();
    for v in &ys {
        l.vertex(v);
    }
    let without = |skip: usize| -> Vec<String> { (1..=k - 3).filter(|&t| t != skip).map(y).collect() };
    let with = |mut v: Vec<String>, extra: &[&String]| {
        v.extend(extra.iter().map(|s| (*s).clone()));
        v
    };

    let c2 = format!("c_{}", k - 2);
    let c1 = format!("c_{}", k - 1);
    let c0 = format!("c_{k}");
    let c1j = |j: usize| format!("c_{}_{j}", k - 1);

    let pat: Vec<String> = (0..k - 3).filter(|&i| e.get(i)).map(|i| ys[i].clone()).collect();
    l.join(&c2, &names(&pat));
    l.join(&c1, &names(&with(ys.clone(), &[&c2])));
    for j in 1..=k - 3 {
        l.join(&c1j(j), &names(&with(without(j), &[&c2])));
    }
    l.join(&c1j(k - 2), &names(&ys));
    l.join(&c0, &names(&with(ys.clone(), &[&c2, &c1])));
    for i in 1..=k - 3 {
        l.join(&format!("c_{k}__{i}"), &names(&with(without(i), &[&c2, &c1])));
    }
    l.join(&format!("c_{k}__{}", k - 2), &names(&with(ys.clone(), &[&c1])));
    for j in 1..=k - 2 {
        l.join(&format!("c_{k}__{}_{j}", k - 1), &names(&with(ys.clone(), &[&c2, &c1j(j)])));
    }
    for j in 1..=k - 2 {
        for i in 1..=k - 3 {
            l.join(&format!("c_{k}_{i}__{}_{j}", k - 1), &names(&with(without(i), &[&c2, &c1j(j)])));
        }
        l.join(&format!("c_{k}_{}__{}_{j}", k - 2, k - 1), &names(&with(ys.clone(), &[&c1j(j)])));
    }
    (l, k - 3)
}

pub(crate) fn lower_pair_construction(
    lemma: usize,
    k: usize,
    pattern: &AdjacencyPattern,
) -> Result<NamedConstruction, ConstructionError> {
    let p = build_lower_pair(lemma, k, pattern)?;
    let expected = (lower_pair_non_roots(lemma, k)?, lower_pair_edges(lemma, k, pattern.weight()));
    Ok(NamedConstruction {
        id: ConstructionId::LowerPair { lemma, k, pattern: pattern.clone() },
        object: ConstructionObject::Pair(p),
        expected: Some(expected),
        notes: format!("layered pair {lemma} at k = {k}, root pattern {pattern}"),
    })
}

/// Vertex names of the all-distinct φ_k witness, in builder order.
pub fn phi_k_witness_order(k: usize) -> Vec<String> {
    let r = k - 3;
    let mut out: Vec<String> = (1..=r).map(root_name).collect();
    for i in 1..=r {
        for j in i + 1..=r {
            out.push(ground_name(i, j));
            for l in 1..=r {
                out.push(first_level_name(i, j, l));
                out.extend((1..=r).map(|m| second_level_name(i, j, l, m)));
                out.push(universal_name(i, j, l));
            }
        }
    }
    out
}

/// The member of Σ_k in which all witnesses are distinct: a clique on the
/// k−3 roots plus every ground, first-level, second-level and universal
/// vertex with exactly its prescribed adjacencies. Second-level vertices
/// are pairwise non-adjacent. Supported for `5 <= k <= 6`.
pub fn build_phi_k_witness(k: usize) -> Result<NamedConstruction, ConstructionError> {
    if !(5..=6).contains(&k) {
        return Err(ConstructionError::KOutOfRange { k, min: 5, max: 6 });
    }
    let r = k - 3;
    let roots: Vec<String> = (1..=r).map(root_name).collect();
    let except = |skip: &[usize]| -> Vec<String> {
        (1..=r).filter(|t| !skip.contains(t)).map(|t| roots[t - 1].clone()).collect()
    };
    let mut l = Labeled::default();
    for (i, v) in roots.iter().enumerate() {
        l.join(v, &names(&roots[..i]));
    }
    for i in 1..=r {
        for j in i + 1..=r {
            let g = ground_name(i, j);
            l.join(&g, &names(&except(&[i, j])));
            for t in 1..=r {
                let f = first_level_name(i, j, t);
                let mut nb = except(&[t]);
                nb.push(g.clone());
                l.join(&f, &names(&nb));
                for m in 1..=r {
                    let mut nb = except(&[m]);
                    nb.extend([g.clone(), f.clone()]);
                    l.join(&second_level_name(i, j, t, m), &names(&nb));
                }
                let mut nb = roots.clone();
                nb.extend([g.clone(), f.clone()]);
                l.join(&universal_name(i, j, t), &names(&nb));
            }
        }
    }
    let c = r * (r - 1) / 2;
    let v = r + c + r * c + r * r * c + r * c;
    // Root clique, ground→roots, first-level→roots+ground,
    // second-level→roots+ground+first, universal→roots+ground+first.
    let e = c + (r - 2) * c + r * (r * c) + (r + 1) * (r * r * c) + (r + 2) * (r * c);
    let g = l.finish()?;
    Ok(NamedConstruction {
        id: ConstructionId::PhiKWitness(k),
        object: ConstructionObject::Graph(g),
        expected: Some((v, e)),
        notes: format!("all-distinct witness of phi_{k}; second-level vertices pairwise non-adjacent"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{build_phi_k, evaluate};

    #[test]
    fn non_root_counts() {
        for lemma in 1..=3 {
            for k in 5..=6 {
                let len = pattern_length(lemma, k).unwrap();
                let p = build_lower_pair(lemma, k, &AdjacencyPattern::zeros(len)).unwrap();
                assert_eq!(p.free_count(), lower_pair_non_roots(lemma, k).unwrap(), "lemma {lemma} k {k}");
            }
        }
        assert_eq!(lower_pair_non_roots(1, 5).unwrap(), 22);
        assert_eq!(lower_pair_non_roots(2, 5).unwrap(), 4);
        assert_eq!(lower_pair_non_roots(3, 5).unwrap(), 21);
        assert_eq!(lower_pair_non_roots(3, 6).unwrap(), 31);
    }

    #[test]
    fn edge_counts_match_inventory() {
        for lemma in 1..=3 {
            for k in 5..=7 {
                for pat in AdjacencyPattern::all(pattern_length(lemma, k).unwrap()) {
                    if lemma != 1 && pat.weight() > k - 4 {
                        continue;
                    }
                    let c = lower_pair_construction(lemma, k, &pat).unwrap();
                    assert!(c.matches_expected(), "lemma {lemma} k {k} {pat}: {:?} vs {:?}", c.counts(), c.expected);
                }
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(matches!(
            build_lower_pair(1, 4, &AdjacencyPattern::zeros(0)),
            Err(ConstructionError::KOutOfRange { .. })
        ));
        assert_eq!(
            build_lower_pair(1, 5, &AdjacencyPattern::zeros(2)),
            Err(ConstructionError::PatternLength { got: 2, want: 1 })
        );
        assert_eq!(
            build_lower_pair(2, 5, &AdjacencyPattern(vec![true, true, false])),
            Err(ConstructionError::PatternWeight { weight: 2, max: 1 })
        );
        assert_eq!(build_lower_pair(4, 5, &AdjacencyPattern::zeros(1)), Err(ConstructionError::BadLemma(4)));
    }

    #[test]
    fn lemma2_vertices_bring_expected_edges() {
        // b_{k-1} brings |e| + 1 edges, each b_k^i brings k − 2.
        let p = build_lower_pair(2, 5, &AdjacencyPattern(vec![true, false, false])).unwrap();
        assert_eq!(p.extension_edges(), 2 + 3 * 3);
    }

    #[test]
    fn witness_sizes() {
        let w5 = build_phi_k_witness(5).unwrap();
        assert_eq!(w5.counts().0, 11);
        assert!(w5.matches_expected());
        let w6 = build_phi_k_witness(6).unwrap();
        assert_eq!(w6.counts().0, 51);
        assert_eq!(phi_k_witness_order(6), w6.graph().labels().unwrap());
        assert!(build_phi_k_witness(7).is_err());
    }

    #[test]
    fn witness_models_phi_k() {
        let w = build_phi_k_witness(5).unwrap();
        assert!(evaluate(w.graph(), &build_phi_k(5).unwrap()).unwrap());
    }
}
