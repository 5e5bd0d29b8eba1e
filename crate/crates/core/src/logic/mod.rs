//! Existential first-order sentences: AST, DSL parser, evaluator and the
//! sentence builders.

mod ast;
mod builders;
mod eval;
mod parse;

pub use ast::{quantifier_depth, Atom, AtomKind, Formula, Sentence, SentenceError};
pub use builders::{
    build_phi4, build_phi_k, build_psi1, build_psi2, first_level_name, ground_name, phi4_flat_literals, phi4_level1,
    phi4_level2, phi4_variables, root_name, second_level_name, universal_name, BuildError,
};
pub use eval::{brute_force_evaluate, evaluate, evaluate_with_budget, EvalError, EvalStats, DEFAULT_NODE_BUDGET};
pub use parse::{parse_sentence, ParseError};
