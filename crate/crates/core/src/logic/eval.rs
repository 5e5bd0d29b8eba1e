//! Model checking of existential sentences on pattern graphs.
//!
//! Each quantifier ranges over a candidate mask narrowed by the literals that
//! every satisfying assignment must meet: literals reachable from the body
//! through conjunctions and quantifiers only (never through a disjunction),
//! whose other variable is already bound. The full body is still evaluated for
//! every candidate, so the filtering only prunes.

use super::ast::{AtomKind, Formula, Sentence};
use crate::graph::{Bits, PatternGraph};

/// Default limit on visited partial assignments.
pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("evaluation budget exhausted after {visited} partial assignments")]
    BudgetExhausted { visited: u64 },
}

#[derive(Clone, Copy, Debug)]
struct Lit {
    negated: bool,
    kind: AtomKind,
    a: usize,
    b: usize,
}

#[derive(Debug)]
enum Node {
    Exists { slot: usize, filters: Vec<Lit>, body: Box<Node> },
    And(Vec<Node>),
    Or(Vec<Node>),
    Lit(Lit),
}

fn compile(f: &Formula, scope: &mut Vec<(String, usize)>, next: &mut usize) -> Node {
    let lookup = |scope: &Vec<(String, usize)>, name: &str| {
        scope.iter().rev().find(|(n, _)| n == name).map(|&(_, s)| s).expect("sentence is closed")
    };
    match f {
        Formula::Exists(v, body) => {
            let slot = *next;
            *next += 1;
            let outer: Vec<usize> = scope.iter().map(|&(_, s)| s).collect();
            scope.push((v.clone(), slot));
            let body = compile(body, scope, next);
            scope.pop();
            let mut filters = Vec::new();
            collect_filters(&body, slot, &outer, &mut filters);
            Node::Exists { slot, filters, body: Box::new(body) }
        }
        Formula::And(parts) => {
            let mut nodes: Vec<Node> = parts.iter().map(|p| compile(p, scope, next)).collect();
            // Cheap literals first; semantics are order-independent.
            nodes.sort_by_key(|n| !matches!(n, Node::Lit(_)));
            Node::And(nodes)
        }
        Formula::Or(parts) => Node::Or(parts.iter().map(|p| compile(p, scope, next)).collect()),
        Formula::Not(a) | Formula::Atom(a) => Node::Lit(Lit {
            negated: matches!(f, Formula::Not(_)),
            kind: a.kind,
            a: lookup(scope, &a.left),
            b: lookup(scope, &a.right),
        }),
    }
}

/// Literals forced on every model of `node` that relate `slot` to itself or
/// to an already-bound slot, normalized so that `a == slot`.
fn collect_filters(node: &Node, slot: usize, outer: &[usize], out: &mut Vec<Lit>) {
    match node {
        Node::Lit(l) => {
            let ok = |s: usize| s == slot || outer.contains(&s);
            if (l.a == slot || l.b == slot) && ok(l.a) && ok(l.b) {
                let (a, b) = if l.a == slot { (l.a, l.b) } else { (l.b, l.a) };
                out.push(Lit { a, b, ..*l });
            }
        }
        Node::And(parts) => parts.iter().for_each(|p| collect_filters(p, slot, outer, out)),
        Node::Exists { body, .. } => collect_filters(body, slot, outer, out),
        Node::Or(_) => {}
    }
}

struct Run<'a> {
    g: &'a PatternGraph,
    vals: Vec<usize>,
    visited: u64,
    budget: u64,
}

impl Run<'_> {
    #[inline]
    fn lit(&self, l: &Lit) -> bool {
        let (u, v) = (self.vals[l.a], self.vals[l.b]);
        let holds = match l.kind {
            AtomKind::Adj => self.g.has_edge(u, v),
            AtomKind::Eq => u == v,
        };
        holds != l.negated
    }

    fn eval(&mut self, node: &Node) -> Result<bool, EvalError> {
        match node {
            Node::Lit(l) => Ok(self.lit(l)),
            Node::And(parts) => {
                for p in parts {
                    if !self.eval(p)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            Node::Or(parts) => {
                for p in parts {
                    if self.eval(p)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
            Node::Exists { slot, filters, body } => {
                let mut mask = self.g.vertex_mask();
                for l in filters {
                    let m = if l.b == *slot {
                        // Literal about the variable with itself.
                        let holds = matches!(l.kind, AtomKind::Eq);
                        if holds != l.negated {
                            self.g.vertex_mask()
                        } else {
                            0
                        }
                    } else {
                        let w = self.vals[l.b];
                        let pos = match l.kind {
                            AtomKind::Adj => self.g.adj_mask(w),
                            AtomKind::Eq => 1u64 << w,
                        };
                        if l.negated {
                            !pos
                        } else {
                            pos
                        }
                    };
                    mask &= m;
                }
                for v in Bits(mask) {
                    self.visited += 1;
                    if self.visited > self.budget {
                        return Err(EvalError::BudgetExhausted { visited: self.visited - 1 });
                    }
                    self.vals[*slot] = v;
                    if self.eval(body)? {
                        return Ok(true);
                    }
                }
                Ok(false)
            }
        }
    }
}

/// Outcome with the number of visited partial assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalStats {
    pub value: bool,
    pub visited: u64,
}

/// Evaluates with an explicit node budget.
pub fn evaluate_with_budget(g: &PatternGraph, s: &Sentence, budget: u64) -> Result<EvalStats, EvalError> {
    let mut next = 0;
    let root = compile(s.formula(), &mut Vec::new(), &mut next);
    let mut run = Run { g, vals: vec![0; next], visited: 0, budget };
    let value = run.eval(&root)?;
    Ok(EvalStats { value, visited: run.visited })
}

/// `g ⊨ s`, with the default budget.
pub fn evaluate(g: &PatternGraph, s: &Sentence) -> Result<bool, EvalError> {
    evaluate_with_budget(g, s, DEFAULT_NODE_BUDGET).map(|r| r.value)
}

/// Reference evaluator: every quantifier tries every vertex, no pruning.
/// `assignment` gives values for free variables, so fragments can be checked.
pub fn brute_force_evaluate(g: &PatternGraph, f: &Formula, assignment: &mut Vec<(String, usize)>) -> bool {
    match f {
        Formula::Exists(v, body) => (0..g.n()).any(|x| {
            assignment.push((v.clone(), x));
            let r = brute_force_evaluate(g, body, assignment);
            assignment.pop();
            r
        }),
        Formula::And(p) => p.iter().all(|q| brute_force_evaluate(g, q, assignment)),
        Formula::Or(p) => p.iter().any(|q| brute_force_evaluate(g, q, assignment)),
        Formula::Not(a) | Formula::Atom(a) => {
            let val = |name: &str| {
                assignment.iter().rev().find(|(n, _)| n == name).map(|&(_, x)| x).expect("variable assigned")
            };
            let (u, v) = (val(&a.left), val(&a.right));
            let holds = match a.kind {
                AtomKind::Adj => g.has_edge(u, v),
                AtomKind::Eq => u == v,
            };
            holds != matches!(f, Formula::Not(_))
        }
    }
}
