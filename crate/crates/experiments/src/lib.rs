//! Seeded `G(n, p)` experiments: Poisson limits of induced-copy counts,
//! appearance thresholds, extension-property frequencies, safe-extension
//! growth rates and a limit strictly inside `(0, 1)`.
//!
//! Every trial draws from its own generator, seeded by a stable hash of the
//! master seed, the grid cell and the trial index, so records do not depend
//! on the worker count or on scheduling.

pub mod count;
pub mod expected;
pub mod record;
pub mod rng;
pub mod runs;
pub mod sample;
pub mod stats;

use thiserror::Error;
use zol_core::constructions::ConstructionError;
use zol_core::extensions::{ExtensionError, SafetyThreshold};
use zol_core::{BalanceClass, GraphError, Rational};

pub use count::{contains_induced, count_induced, count_induced_brute, induced_embeddings};
pub use expected::{expected_induced_copies, phi_min_expected, PhiMin};
pub use record::ExperimentRecord;
pub use rng::{default_master_seed, trial_rng, trial_seed, DEFAULT_SEED, SEED_ENV};
pub use runs::{
    parse_pattern, run_experiment, run_extension_property_experiment, run_nonconvergence_demo, run_poisson_experiment,
    run_safe_extension_experiment, run_threshold_experiment, ExtensionParams, NonconvParams, PoissonParams,
    RootSampling, RunOptions, SafeExtParams, ThresholdParams,
};
pub use sample::{sample_gnp, sample_gnp_with, EdgeProbability};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ExperimentError {
    #[error("pattern {pattern} is {}, not strictly balanced", class.as_str())]
    NotStrictlyBalanced { pattern: String, class: BalanceClass },
    #[error("pair is not {alpha}-safe (threshold {threshold})")]
    Unsafe { alpha: Rational, threshold: SafetyThreshold },
    #[error("pattern has no edges")]
    EdgelessPattern,
    #[error("pattern has {n} vertices, more than the cap of {cap}")]
    PatternTooLarge { n: usize, cap: usize },
    #[error("unknown pattern {0:?}: expected K<n>, C<n>, P<n> or graph6")]
    UnknownPattern(String),
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
}
