//! The depth-4 objects: the base graph H, the thirteen H_0 cases, G_0 with its
//! two insertion sequences, the companion pairs used by Duplicator, and the
//! density-region coefficients.

use serde::Serialize;

use super::{ConstructionError, ConstructionId, ConstructionObject, Labeled, NamedConstruction};
use crate::extensions::RootedPair;
use crate::graph::{graph6_decode, PatternGraph};

/// Vertices of H and, for each, its neighbours among earlier vertices.
const BASE_H: [(&str, &[&str]); 10] = [
    ("x", &[]),
    ("a", &["x"]),
    ("b", &[]),
    ("a_1_1", &["x", "a"]),
    ("a_1_0", &["x"]),
    ("a_1_1__1_1", &["x", "a", "a_1_1"]),
    ("ap_1_1", &["x", "a"]),
    ("a_1_0__1_0", &["x", "a_1_0"]),
    ("b_0_1", &["b"]),
    ("b_0_1__0_1", &["b", "b_0_1"]),
];

fn base_h_builder() -> Labeled {
    let mut l = Labeled::default();
    for (v, nbrs) in BASE_H {
        l.join(v, nbrs);
    }
    l
}

/// The 10-vertex, 14-edge graph forced by the literals of φ that do not
/// involve `a_0_1`, its witnesses, or the `b`-side level-2 vertices beyond
/// `b_0_1__0_1`.
pub fn build_base_h() -> NamedConstruction {
    NamedConstruction {
        id: ConstructionId::BaseH,
        object: ConstructionObject::Graph(base_h_builder().finish().expect("static graph")),
        expected: Some((10, 14)),
        notes: "x, a, b with x~a, b!~x, plus a_1_1, a_1_0, a_1_1__1_1, ap_1_1, a_1_0__1_0, b_0_1, b_0_1__0_1".into(),
    }
}

/// How `a_0_1` and `a_0_1__0_1` are realised in one H_0 case: `None` means a
/// new vertex, `Some(v)` an identification with the existing vertex `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseSpec {
    pub case: usize,
    pub a01: Option<&'static str>,
    pub a01_01: Option<&'static str>,
    /// Edges added to H after the identifications, by final vertex name.
    pub added: &'static [(&'static str, &'static str)],
    pub expected: (usize, usize),
}

const A01: &str = "a_0_1";
const A0101: &str = "a_0_1__0_1";

const CASES: [CaseSpec; 13] = [
    CaseSpec { case: 1, a01: None, a01_01: None, added: &[(A01, "a"), (A0101, "a"), (A0101, A01)], expected: (12, 17) },
    CaseSpec {
        case: 2,
        a01: Some("b"),
        a01_01: None,
        added: &[("a", "b"), ("b", A0101), (A0101, "a")],
        expected: (11, 17),
    },
    CaseSpec {
        case: 3,
        a01: Some("b"),
        a01_01: Some("b_0_1"),
        added: &[("a", "b"), ("a", "b_0_1")],
        expected: (10, 16),
    },
    CaseSpec {
        case: 4,
        a01: Some("b"),
        a01_01: Some("b_0_1__0_1"),
        added: &[("a", "b"), ("a", "b_0_1__0_1")],
        expected: (10, 16),
    },
    CaseSpec {
        case: 5,
        a01: Some("b_0_1"),
        a01_01: None,
        added: &[("a", "b_0_1"), ("b_0_1", A0101), (A0101, "a")],
        expected: (11, 17),
    },
    CaseSpec {
        case: 6,
        a01: Some("b_0_1"),
        a01_01: Some("b"),
        added: &[("a", "b"), ("a", "b_0_1")],
        expected: (10, 16),
    },
    CaseSpec {
        case: 7,
        a01: Some("b_0_1"),
        a01_01: Some("b_0_1__0_1"),
        added: &[("a", "b_0_1"), ("a", "b_0_1__0_1")],
        expected: (10, 16),
    },
    CaseSpec {
        case: 8,
        a01: None,
        a01_01: Some("b"),
        added: &[("a", "b"), ("a", A01), (A01, "b")],
        expected: (11, 17),
    },
    CaseSpec {
        case: 9,
        a01: None,
        a01_01: Some("b_0_1"),
        added: &[(A01, "a"), (A01, "b_0_1"), ("a", "b_0_1")],
        expected: (11, 17),
    },
    CaseSpec {
        case: 10,
        a01: None,
        a01_01: Some("b_0_1__0_1"),
        added: &[("b_0_1__0_1", "a"), ("b_0_1__0_1", A01), (A01, "a")],
        expected: (11, 17),
    },
    CaseSpec {
        case: 11,
        a01: Some("b_0_1__0_1"),
        a01_01: None,
        added: &[("a", "b_0_1__0_1"), ("a", A0101), (A0101, "b_0_1__0_1")],
        expected: (11, 17),
    },
    CaseSpec {
        case: 12,
        a01: Some("b_0_1__0_1"),
        a01_01: Some("b"),
        added: &[("a", "b_0_1__0_1"), ("a", "b")],
        expected: (10, 16),
    },
    CaseSpec {
        case: 13,
        a01: Some("b_0_1__0_1"),
        a01_01: Some("b_0_1"),
        added: &[("a", "b_0_1__0_1"), ("a", "b_0_1")],
        expected: (10, 16),
    },
];

pub fn case_h0_spec(case: usize) -> Result<CaseSpec, ConstructionError> {
    CASES.get(case.wrapping_sub(1)).copied().ok_or(ConstructionError::CaseOutOfRange(case))
}

/// H_0 for one of the thirteen ways of placing `a_0_1` and `a_0_1__0_1`
/// relative to H. Identified vertices keep their H label.
pub fn build_case_h0(case: usize) -> Result<NamedConstruction, ConstructionError> {
    let spec = case_h0_spec(case)?;
    let mut l = base_h_builder();
    for (role, realised) in [(A01, spec.a01), (A0101, spec.a01_01)] {
        if realised.is_none() {
            l.vertex(role);
        }
    }
    for &(u, v) in spec.added {
        l.edge(u, v);
    }
    let describe = |role: &str, r: Option<&str>| match r {
        None => format!("{role} new"),
        Some(v) => format!("{role} = {v}"),
    };
    Ok(NamedConstruction {
        id: ConstructionId::CaseH0(case),
        object: ConstructionObject::Graph(l.finish()?),
        expected: Some(spec.expected),
        notes: format!("{}, {}", describe(A01, spec.a01), describe(A0101, spec.a01_01)),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum G0Part {
    A,
    B,
}

struct Step {
    step: usize,
    brings: usize,
    vertices: &'static [(&'static str, &'static [&'static str])],
}

/// Insertion sequence of the `a` part, after `x` at step 0.
const A_PART: [Step; 5] = [
    Step { step: 1, brings: 1, vertices: &[("a", &["x"])] },
    Step { step: 2, brings: 2, vertices: &[("ap_1_1", &["x", "a"]), ("a_1_1", &["x", "a"])] },
    Step { step: 3, brings: 2, vertices: &[("a_1_0", &["x", "a_1_1"]), ("a_0_1", &["a", "a_1_1"])] },
    Step {
        step: 4,
        brings: 2,
        vertices: &[
            ("a_1_0__1_0", &["x", "a_1_0"]),
            ("a_0_1__0_1", &["a", "a_0_1"]),
            ("a_1_0__0_1", &["a", "a_1_0"]),
            ("a_0_1__1_0", &["x", "a_0_1"]),
        ],
    },
    Step { step: 5, brings: 3, vertices: &[("a_1_1__1_1", &["x", "a", "a_1_1"])] },
];

/// Insertion sequence of the `b` part, after `x` at step 0.
const B_PART: [Step; 5] = [
    Step { step: 1, brings: 1, vertices: &[("b_1_1", &["x"])] },
    Step { step: 2, brings: 2, vertices: &[("b_1_1__1_1", &["x", "b_1_1"]), ("b_1_0", &["x", "b_1_1"])] },
    Step { step: 3, brings: 2, vertices: &[("b", &["b_1_1", "b_1_1__1_1"]), ("b_1_0__1_0", &["x", "b_1_0"])] },
    Step {
        step: 4,
        brings: 2,
        vertices: &[("b_0_1", &["b", "b_1_1"]), ("bp_1_1", &["x", "b"]), ("b_1_0__0_1", &["b", "b_1_0"])],
    },
    Step { step: 5, brings: 2, vertices: &[("b_0_1__1_0", &["x", "b_0_1"]), ("b_0_1__0_1", &["b", "b_0_1"])] },
];

/// Golden graph6 string of G_0 in builder vertex order (x, the `a` part in
/// insertion order, then the `b` part in insertion order).
pub const G0_GRAPH6: &str = "T}dSQHG`E_O?_@_@??s?A?@I??_?BC??O??g";

fn g0_builder() -> Labeled {
    let mut l = Labeled::default();
    l.vertex("x");
    for part in [&A_PART, &B_PART] {
        for step in part.iter() {
            for (v, nbrs) in step.vertices {
                l.join(v, nbrs);
            }
        }
    }
    l
}

/// The 21-vertex, 39-edge graph G_0 (density 13/7), labelled.
pub fn build_g0() -> NamedConstruction {
    NamedConstruction {
        id: ConstructionId::G0,
        object: ConstructionObject::Graph(g0_builder().finish().expect("static graph")),
        expected: Some((21, 39)),
        notes: "two edge-disjoint parts sharing only x; a part 11 vertices / 20 edges, b part 11 vertices / 19 edges"
            .into(),
    }
}

/// G_0 decoded from the frozen golden string with the builder's labels.
pub fn g0_from_golden() -> PatternGraph {
    let names = g0_builder().finish().expect("static graph").labels().unwrap().to_vec();
    graph6_decode(G0_GRAPH6).expect("golden graph6").with_labels(names).expect("21 labels")
}

/// One vertex of an insertion sequence: how many edges it was stated to
/// bring and how many it brings in the built graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StepCheck {
    pub part: G0Part,
    pub step: usize,
    pub vertex: &'static str,
    pub stated: usize,
    pub brought: usize,
}

/// Replays both insertion sequences on `g` (which must carry G_0's labels),
/// counting for each vertex its neighbours among the earlier vertices of
/// the same part.
pub fn g0_step_report(g: &PatternGraph) -> Vec<StepCheck> {
    let mut out = Vec::new();
    for (part, steps) in [(G0Part::A, &A_PART), (G0Part::B, &B_PART)] {
        let mut earlier = 1u64 << g.vertex("x").expect("x present");
        for step in steps.iter() {
            for (v, _) in step.vertices {
                let id = g.vertex(v).expect("G_0 label present");
                let brought = (g.adj_mask(id) & earlier).count_ones() as usize;
                out.push(StepCheck { part, step: step.step, vertex: v, stated: step.brings, brought });
                earlier |= 1 << id;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Companion {
    /// `c, c__1_0, c__0_1` over roots `x, a, a_1_1, ap_1_1`.
    C,
    /// `d, d__1_0, d__0_1` over roots `x, b, b_1_1, bp_1_1`.
    D,
}

impl Companion {
    /// `(roots, new vertex names)`.
    pub fn names(self) -> ([&'static str; 4], [&'static str; 3]) {
        match self {
            Companion::C => (["x", "a", "a_1_1", "ap_1_1"], ["c", "c__1_0", "c__0_1"]),
            Companion::D => (["x", "b", "b_1_1", "bp_1_1"], ["d", "d__1_0", "d__0_1"]),
        }
    }
}

/// The pair adding `c` (adjacent to `a_1_1` only among the roots), `c__1_0`
/// (adjacent to `c` and `x`) and `c__0_1` (adjacent to `c` and `a`); the root
/// graph is the subgraph of G_0 they induce. `Companion::D` is the same over
/// `x, b, b_1_1, bp_1_1`.
pub fn build_k4_companion_pair(which: Companion) -> RootedPair {
    let g0 = build_g0();
    let g0 = g0.graph();
    let (roots, [c, c10, c01]) = which.names();
    let mut l = Labeled::default();
    for r in roots {
        l.vertex(r);
    }
    for (i, u) in roots.iter().enumerate() {
        for v in &roots[i + 1..] {
            if g0.has_edge(g0.vertex(u).unwrap(), g0.vertex(v).unwrap()) {
                l.edge(u, v);
            }
        }
    }
    let [x, s, s11, _] = roots;
    l.join(c, &[s11]);
    l.join(c10, &[c, x]);
    l.join(c01, &[c, s]);
    RootedPair::new(l.finish().expect("static graph"), 4).expect("four roots")
}

pub(crate) fn companion_construction(which: Companion) -> NamedConstruction {
    NamedConstruction {
        id: ConstructionId::Companion(which),
        object: ConstructionObject::Pair(build_k4_companion_pair(which)),
        expected: Some((3, 5)),
        notes: "companion vertices used by Duplicator in rounds 3 and 4".into(),
    }
}

/// `13·B − 7·A`: for integers `s, e ≥ 0`, the ratio `(A + 2s + e)/(B + s)`
/// is below `13/7` exactly when `s + 7e < 13·B − 7·A`.
pub fn region_threshold(a: i64, b: i64) -> i64 {
    13 * b - 7 * a
}

/// A density-region condition as stated in the case analysis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RegionInstance {
    pub locator: &'static str,
    pub a: i64,
    pub b: i64,
    pub stated: i64,
}

const REGION_INSTANCES: [RegionInstance; 8] = [
    RegionInstance { locator: "case 1, b_1_1 new, v_2 not old", a: 23, b: 13, stated: 8 },
    RegionInstance { locator: "case 1, b_1_1 new, v_2 old", a: 24, b: 13, stated: 1 },
    RegionInstance { locator: "case 1, b_1_1 in H_0", a: 22, b: 12, stated: 2 },
    RegionInstance { locator: "case 2, b_1_1 new", a: 22, b: 12, stated: 2 },
    RegionInstance { locator: "case 2, b_1_1 = a", a: 20, b: 11, stated: 3 },
    RegionInstance { locator: "case 2, b_1_1 in S_2", a: 20, b: 11, stated: 3 },
    RegionInstance { locator: "case 3, b_1_1 new", a: 20, b: 11, stated: 3 },
    RegionInstance { locator: "case 3, b_1_1 = a", a: 18, b: 10, stated: 4 },
];

/// Region conditions quoted from the case analysis, with their stated bound.
pub fn region_instances() -> &'static [RegionInstance] {
    &REGION_INSTANCES
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{classify_balance, density, BalanceClass};
    use crate::rational::Rational;

    #[test]
    fn base_h_counts() {
        let h = build_base_h();
        assert_eq!(h.counts(), (10, 14));
        assert_eq!(density(h.graph()), Rational::new(7, 5));
    }

    #[test]
    fn every_case_matches() {
        for c in 1..=13 {
            let h0 = build_case_h0(c).unwrap();
            assert!(h0.matches_expected(), "case {c}: {:?} vs {:?}", h0.counts(), h0.expected);
        }
        assert_eq!(build_case_h0(0), Err(ConstructionError::CaseOutOfRange(0)));
        assert_eq!(build_case_h0(14), Err(ConstructionError::CaseOutOfRange(14)));
    }

    /// The stated additions are exactly the adjacencies `a_0_1 ~ a` and
    /// `a_0_1__0_1 ~ a, a_0_1` that H lacks after the identifications.
    #[test]
    fn case_additions_are_the_forced_edges() {
        for c in 1..=13 {
            let spec = case_h0_spec(c).unwrap();
            let g = build_case_h0(c).unwrap();
            let g = g.graph();
            let p = g.vertex(spec.a01.unwrap_or(A01)).unwrap();
            let q = g.vertex(spec.a01_01.unwrap_or(A0101)).unwrap();
            let (a, x) = (g.vertex("a").unwrap(), g.vertex("x").unwrap());
            assert!(g.has_edge(p, a) && g.has_edge(q, a) && g.has_edge(p, q), "case {c}");
            assert!(!g.has_edge(p, x) && !g.has_edge(q, x), "case {c}");
            let forced = [(p, a), (q, a), (q, p)];
            let base = base_h_builder().finish().unwrap();
            let new_edges = g.edges().into_iter().filter(|&(u, v)| {
                let (lu, lv) = (g.label(u).unwrap(), g.label(v).unwrap());
                match (base.vertex(lu), base.vertex(lv)) {
                    (Some(bu), Some(bv)) => !base.has_edge(bu, bv),
                    _ => true,
                }
            });
            for (u, v) in new_edges {
                assert!(forced.iter().any(|&(s, t)| (s, t) == (u, v) || (s, t) == (v, u)), "case {c}: extra edge");
            }
        }
    }

    #[test]
    fn g0_counts_density_balance() {
        let g0 = build_g0();
        assert_eq!(g0.counts(), (21, 39));
        assert_eq!(density(g0.graph()), Rational::new(13, 7));
        assert_eq!(classify_balance(g0.graph()), BalanceClass::StrictlyBalanced);
    }

    #[test]
    fn g0_models_phi_but_base_h_does_not() {
        let phi = crate::logic::build_phi4();
        let stats = crate::logic::evaluate_with_budget(build_g0().graph(), &phi, 100_000_000).unwrap();
        assert!(stats.value);
        assert!(!crate::logic::evaluate(build_base_h().graph(), &phi).unwrap());
        for c in 1..=13 {
            assert!(!crate::logic::evaluate(build_case_h0(c).unwrap().graph(), &phi).unwrap(), "case {c}");
        }
    }

    #[test]
    fn g0_steps_reproduced() {
        let g0 = build_g0();
        let report = g0_step_report(g0.graph());
        assert_eq!(report.len(), 20);
        for r in &report {
            assert_eq!(r.brought, r.stated, "{r:?}");
        }
        let a_edges: usize = report.iter().filter(|r| r.part == G0Part::A).map(|r| r.brought).sum();
        let b_edges: usize = report.iter().filter(|r| r.part == G0Part::B).map(|r| r.brought).sum();
        assert_eq!((a_edges, b_edges), (20, 19));
    }

    #[test]
    fn g0_golden_string_regenerates() {
        assert_eq!(build_g0().graph().to_graph6(), G0_GRAPH6);
        assert_eq!(&g0_from_golden(), build_g0().graph());
    }

    #[test]
    fn companion_counts() {
        for w in [Companion::C, Companion::D] {
            let p = build_k4_companion_pair(w);
            assert_eq!((p.free_count(), p.extension_edges()), (3, 5));
        }
        let c = build_k4_companion_pair(Companion::C);
        // x~a, a_1_1~x,a, ap_1_1~x,a
        assert_eq!(c.h().edge_count(), 5);
    }

    #[test]
    fn region_threshold_values() {
        assert_eq!(region_threshold(23, 13), 8);
        assert_eq!(region_threshold(24, 13), 1);
        assert_eq!(region_threshold(22, 12), 2);
        for inst in region_instances() {
            assert_eq!(region_threshold(inst.a, inst.b), inst.stated, "{}", inst.locator);
        }
    }

    #[test]
    fn region_threshold_is_exact() {
        let bound = Rational::new(13, 7);
        for (a, b) in [(23, 13), (24, 13), (22, 12), (20, 11), (18, 10), (30, 15)] {
            let t = region_threshold(a, b);
            for s in 0..20i64 {
                for e in 0..5i64 {
                    let ratio = Rational::new((a + 2 * s + e) as i128, (b + s) as i128);
                    assert_eq!(ratio < bound, s + 7 * e < t, "A={a} B={b} s={s} e={e}");
                }
            }
        }
    }
}
