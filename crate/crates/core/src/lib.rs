//! Simulation library and benchmark harness for multi-armed bandits whose
//! arms carry a unimodal graph structure.
//!
//! The crate provides:
//!
//! - divergences and confidence-level inversions for Gaussian (unit
//!   variance) and Bernoulli rewards ([`kl`]),
//! - the graph machinery: neighbourhoods, unimodality validation, tree
//!   surgery and dichotomous probe subsets ([`graph`]),
//! - ground-truth environments, reward sampling and regret accounting,
//!   including the neighbourhood lower-bound constant and a uniform random
//!   unimodal generator ([`mod@env`]),
//! - five decision strategies over a shared observation state
//!   ([`policies`]),
//! - a deterministic Monte-Carlo harness with per-step inequality monitors
//!   ([`runner`]).
//!
//! All numeric code is generic over the [`Scalar`] precision; [`Real`] is
//! the default. Episodes are reproducible: every random draw comes from a
//! counter-based stream keyed by `(master seed, replicate, purpose)`, so
//! results are identical on any thread count.

pub mod env;
pub mod graph;
pub mod kl;
pub mod policies;
pub mod runner;
pub mod scalar;
pub mod streams;

#[cfg(test)]
pub(crate) mod testutil;

pub use scalar::Scalar;

/// Default simulation precision.
pub type Real = f64;

/// [`env::BanditConfig`] at the default precision.
pub type RealBanditConfig = env::BanditConfig<Real>;
/// [`env::RegretTrace`] at the default precision.
pub type RealRegretTrace = env::RegretTrace<Real>;
/// [`policies::PolicyState`] at the default precision.
pub type RealPolicyState = policies::PolicyState<Real>;
/// [`policies::Policy`] at the default precision.
pub type RealPolicy = policies::Policy<Real>;
/// [`runner::ExperimentSpec`] at the default precision.
pub type RealExperimentSpec = runner::ExperimentSpec<Real>;
/// [`runner::RunResult`] at the default precision.
pub type RealRunResult = runner::RunResult<Real>;
