//! Executable combinatorics for zero-one laws of existential sentences on
//! sparse random graphs: exact densities, safe extensions, an existential
//! first-order DSL, existential Ehrenfeucht games and the concrete graph
//! constructions behind the `7/13` threshold.

pub mod constructions;
pub mod extensions;
pub mod games;
pub mod graph;
pub mod logic;
pub mod rational;

pub use extensions::RootedPair;
pub use graph::{BalanceClass, GraphError, GraphView, HostGraph, PatternGraph};
pub use rational::Rational;
