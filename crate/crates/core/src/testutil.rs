//! Shared fixtures for the in-crate unit tests.

use crate::env::BanditConfig;
use crate::graph::UnimodalGraph;
use crate::kl::Family;

/// The 11-arm Gaussian tent configuration used throughout the tests.
pub(crate) fn tent11() -> BanditConfig<f64> {
    BanditConfig::new(
        Family::GaussianUnitVariance,
        vec![0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 0.8, 0.6, 0.4, 0.2, 0.0],
        UnimodalGraph::path(11),
    )
    .unwrap()
}
