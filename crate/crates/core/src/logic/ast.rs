//! Existential first-order formulas over the graph signature `{~, =}`.

use std::collections::BTreeSet;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AtomKind {
    Adj,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Atom {
    pub kind: AtomKind,
    pub left: String,
    pub right: String,
}

impl Atom {
    pub fn adj(a: &str, b: &str) -> Self {
        Atom { kind: AtomKind::Adj, left: a.to_string(), right: b.to_string() }
    }

    pub fn eq(a: &str, b: &str) -> Self {
        Atom { kind: AtomKind::Eq, left: a.to_string(), right: b.to_string() }
    }
}

/// Formula of the existential fragment: negation only directly above atoms.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Exists(String, Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Not(Atom),
    Atom(Atom),
}

impl Formula {
    pub fn exists(var: &str, body: Formula) -> Self {
        Formula::Exists(var.to_string(), Box::new(body))
    }

    /// Conjunction; a single conjunct is returned unwrapped.
    ///
    /// # Panics
    /// Panics on an empty list (the DSL has no constant `true`).
    pub fn and(mut parts: Vec<Formula>) -> Self {
        assert!(!parts.is_empty(), "empty conjunction");
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        }
    }

    /// Disjunction; a single disjunct is returned unwrapped.
    ///
    /// # Panics
    /// Panics on an empty list.
    pub fn or(mut parts: Vec<Formula>) -> Self {
        assert!(!parts.is_empty(), "empty disjunction");
        if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        }
    }

    pub fn adj(a: &str, b: &str) -> Self {
        Formula::Atom(Atom::adj(a, b))
    }

    pub fn non_adj(a: &str, b: &str) -> Self {
        Formula::Not(Atom::adj(a, b))
    }

    pub fn eq(a: &str, b: &str) -> Self {
        Formula::Atom(Atom::eq(a, b))
    }

    pub fn neq(a: &str, b: &str) -> Self {
        Formula::Not(Atom::eq(a, b))
    }

    /// Maximum nesting of `Exists` along any root-to-leaf path.
    pub fn quantifier_depth(&self) -> usize {
        match self {
            Formula::Exists(_, b) => 1 + b.quantifier_depth(),
            Formula::And(p) | Formula::Or(p) => p.iter().map(Formula::quantifier_depth).max().unwrap_or(0),
            Formula::Not(_) | Formula::Atom(_) => 0,
        }
    }

    /// Number of `Exists` nodes.
    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::Exists(_, b) => 1 + b.quantifier_count(),
            Formula::And(p) | Formula::Or(p) => p.iter().map(Formula::quantifier_count).sum(),
            Formula::Not(_) | Formula::Atom(_) => 0,
        }
    }

    /// Number of (possibly negated) atom occurrences.
    pub fn literal_count(&self) -> usize {
        match self {
            Formula::Exists(_, b) => b.literal_count(),
            Formula::And(p) | Formula::Or(p) => p.iter().map(Formula::literal_count).sum(),
            Formula::Not(_) | Formula::Atom(_) => 1,
        }
    }

    /// Distinct names bound by some `Exists`.
    pub fn bound_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_bound(&mut out);
        out
    }

    fn walk_bound(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Exists(v, b) => {
                out.insert(v.clone());
                b.walk_bound(out);
            }
            Formula::And(p) | Formula::Or(p) => p.iter().for_each(|f| f.walk_bound(out)),
            Formula::Not(_) | Formula::Atom(_) => {}
        }
    }

    /// Variables occurring free.
    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk_free(&mut Vec::new(), &mut out);
        out
    }

    fn walk_free<'a>(&'a self, scope: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            Formula::Exists(v, b) => {
                scope.push(v);
                b.walk_free(scope, out);
                scope.pop();
            }
            Formula::And(p) | Formula::Or(p) => p.iter().for_each(|f| f.walk_free(scope, out)),
            Formula::Not(a) | Formula::Atom(a) => {
                for v in [&a.left, &a.right] {
                    if !scope.contains(&v.as_str()) {
                        out.insert(v.clone());
                    }
                }
            }
        }
    }

    fn fmt_child(&self, f: &mut fmt::Formatter<'_>, parent_is_and: bool) -> fmt::Result {
        let wrap = match self {
            Formula::Exists(..) | Formula::And(_) => true,
            Formula::Or(_) => true,
            Formula::Not(_) | Formula::Atom(_) => false,
        };
        // `a & b | c` parses as Or[And[a, b], c], so a conjunction under a
        // disjunction needs no parentheses.
        let wrap = wrap && !(matches!(self, Formula::And(_)) && !parent_is_and);
        if wrap {
            write!(f, "({self})")
        } else {
            write!(f, "{self}")
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = match self.kind {
            AtomKind::Adj => "~",
            AtomKind::Eq => "=",
        };
        write!(f, "{}{}{}", self.left, op, self.right)
    }
}

/// Prints in the DSL syntax; the output parses back to an identical tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Exists(v, b) => write!(f, "E {v}; {b}"),
            Formula::And(parts) | Formula::Or(parts) => {
                let is_and = matches!(self, Formula::And(_));
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        f.write_str(if is_and { " & " } else { " | " })?;
                    }
                    p.fmt_child(f, is_and)?;
                }
                Ok(())
            }
            Formula::Not(a) => write!(f, "!{a}"),
            Formula::Atom(a) => write!(f, "{a}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SentenceError {
    #[error("variable {0:?} is not bound by any quantifier")]
    Unbound(String),
    #[error("empty conjunction or disjunction")]
    EmptyConnective,
}

/// A closed existential formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Sentence(Formula);

impl Sentence {
    pub fn new(f: Formula) -> Result<Self, SentenceError> {
        if let Some(v) = f.free_variables().into_iter().next() {
            return Err(SentenceError::Unbound(v));
        }
        if has_empty_connective(&f) {
            return Err(SentenceError::EmptyConnective);
        }
        Ok(Sentence(f))
    }

    pub fn formula(&self) -> &Formula {
        &self.0
    }

    pub fn into_formula(self) -> Formula {
        self.0
    }

    pub fn quantifier_depth(&self) -> usize {
        self.0.quantifier_depth()
    }
}

fn has_empty_connective(f: &Formula) -> bool {
    match f {
        Formula::Exists(_, b) => has_empty_connective(b),
        Formula::And(p) | Formula::Or(p) => p.is_empty() || p.iter().any(has_empty_connective),
        _ => false,
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Maximum `Exists` nesting of a sentence.
pub fn quantifier_depth(s: &Sentence) -> usize {
    s.quantifier_depth()
}
