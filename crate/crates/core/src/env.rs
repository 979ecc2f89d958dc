//! Ground-truth bandit configurations: reward sampling, gaps, the
//! neighbourhood lower-bound constant, and the random unimodal generator.

use rand::Rng;
use thiserror::Error;

use crate::graph::{ArmId, UnimodalGraph, UnimodalViolation};
use crate::kl::Family;
use crate::scalar::Scalar;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ConfigError {
    #[error("need at least two arms, got {0}")]
    TooFewArms(usize),
    #[error("means length {means} does not match arm count {arms}")]
    MeansLengthMismatch { means: usize, arms: usize },
    #[error("mean at arm {arm} is not finite")]
    NonFiniteMean { arm: ArmId },
    #[error("bernoulli mean {value} at arm {arm} must lie strictly inside (0,1)")]
    BernoulliMeanOutOfRange { arm: ArmId, value: f64 },
    #[error("means are not unimodal on the graph: {0}")]
    NotUnimodal(UnimodalViolation),
    #[error("no valid random configuration after {0} attempts")]
    RandomDrawFailed(usize),
}

/// A fully specified environment: family, mean vector and unimodal graph.
///
/// Construction validates everything once; afterwards the config is
/// immutable and safe to share across replicate threads.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditConfig<S: Scalar> {
    family: Family,
    means: Vec<S>,
    graph: UnimodalGraph,
    best_arm: ArmId,
}

impl<S: Scalar> BanditConfig<S> {
    pub fn new(family: Family, means: Vec<S>, graph: UnimodalGraph) -> Result<Self, ConfigError> {
        let arms = graph.arm_count();
        if arms < 2 {
            return Err(ConfigError::TooFewArms(arms));
        }
        if means.len() != arms {
            return Err(ConfigError::MeansLengthMismatch {
                means: means.len(),
                arms,
            });
        }
        for (i, &m) in means.iter().enumerate() {
            if !m.is_finite() {
                return Err(ConfigError::NonFiniteMean { arm: i + 1 });
            }
            if family == Family::Bernoulli && (m <= S::zero() || m >= S::one()) {
                return Err(ConfigError::BernoulliMeanOutOfRange {
                    arm: i + 1,
                    value: m.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        graph
            .validate_unimodal(&means)
            .map_err(ConfigError::NotUnimodal)?;
        let best_arm = (1..=arms)
            .max_by(|&a, &b| {
                means[a - 1]
                    .partial_cmp(&means[b - 1])
                    .expect("finite means")
            })
            .expect("at least two arms");
        Ok(BanditConfig {
            family,
            means,
            graph,
            best_arm,
        })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn graph(&self) -> &UnimodalGraph {
        &self.graph
    }

    pub fn arm_count(&self) -> usize {
        self.graph.arm_count()
    }

    pub fn means(&self) -> &[S] {
        &self.means
    }

    pub fn mean(&self, arm: ArmId) -> S {
        self.means[arm - 1]
    }

    /// The unique optimal arm.
    pub fn best_arm(&self) -> ArmId {
        self.best_arm
    }

    pub fn best_mean(&self) -> S {
        self.means[self.best_arm - 1]
    }

    /// Sub-optimality gap `mu* - mu_a`; zero exactly at the best arm.
    pub fn gap(&self, arm: ArmId) -> S {
        self.best_mean() - self.mean(arm)
    }

    /// All gaps, indexed `arm - 1`.
    pub fn gaps(&self) -> Vec<S> {
        self.means.iter().map(|&m| self.best_mean() - m).collect()
    }

    /// One reward draw for `arm`, deterministic given the stream state.
    pub fn sample_reward<R: Rng + ?Sized>(&self, arm: ArmId, rng: &mut R) -> S {
        let mean = self.mean(arm);
        match self.family {
            Family::GaussianUnitVariance => mean + S::standard_normal(rng),
            Family::Bernoulli => {
                if S::uniform_01(rng) < mean {
                    S::one()
                } else {
                    S::zero()
                }
            }
        }
    }

    /// Per-neighbour terms `gap_a / KL(mu_a | mu*)` over the neighbourhood of
    /// the best arm, in ascending arm order.
    pub fn lower_bound_terms(&self) -> Vec<(ArmId, S)> {
        let best = self.best_mean();
        self.graph
            .neighbors(self.best_arm)
            .iter()
            .map(|&a| {
                let mu = self.mean(a);
                (a, (best - mu) / self.family.kl(mu, best))
            })
            .collect()
    }

    /// The neighbourhood constant: sum of the per-neighbour terms.
    pub fn lower_bound_constant(&self) -> S {
        self.lower_bound_terms()
            .into_iter()
            .fold(S::zero(), |acc, (_, term)| acc + term)
    }
}

/// Attempt cap for the rejection loop in [`random_unimodal_config`].
pub const RANDOM_CONFIG_ATTEMPTS: usize = 100;

/// Draw a uniformly random unimodal configuration on the path of
/// `arm_count` arms with means in `[0,1]`.
///
/// Each of the `A` values is uniform; every non-maximal value lands left or
/// right of the peak on an independent fair coin, the left block sorted
/// ascending and the right block descending. Each unimodal arrangement of
/// the drawn values corresponds to exactly one left-subset, so arrangements
/// are uniform given the values. Draws collide at floating precision (or hit
/// the Bernoulli boundary) with vanishing probability; such draws are
/// rejected and resampled.
pub fn random_unimodal_config<S: Scalar, R: Rng + ?Sized>(
    arm_count: usize,
    family: Family,
    rng: &mut R,
) -> Result<BanditConfig<S>, ConfigError> {
    if arm_count < 2 {
        return Err(ConfigError::TooFewArms(arm_count));
    }
    for _ in 0..RANDOM_CONFIG_ATTEMPTS {
        let values: Vec<S> = (0..arm_count).map(|_| S::uniform_01(rng)).collect();
        if !values_admissible(&values, family) {
            continue;
        }
        let means = arrange_unimodal(&values, &mut || rng.gen::<bool>());
        let config = BanditConfig::new(family, means, UnimodalGraph::path(arm_count));
        debug_assert!(config.is_ok(), "construction guarantees unimodality");
        if let Ok(config) = config {
            return Ok(config);
        }
    }
    Err(ConfigError::RandomDrawFailed(RANDOM_CONFIG_ATTEMPTS))
}

/// Distinct values, and strictly inside `(0,1)` for Bernoulli.
fn values_admissible<S: Scalar>(values: &[S], family: Family) -> bool {
    if family == Family::Bernoulli && values.iter().any(|&v| v <= S::zero() || v >= S::one()) {
        return false;
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("uniform draws are finite"));
    sorted.windows(2).all(|w| w[0] != w[1])
}

/// Place each non-maximal value on a coin-chosen side of the peak.
fn arrange_unimodal<S: Scalar>(values: &[S], coin: &mut dyn FnMut() -> bool) -> Vec<S> {
    let peak = (0..values.len())
        .max_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite"))
        .expect("nonempty");
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        if i == peak {
            continue;
        }
        if coin() {
            left.push(v);
        } else {
            right.push(v);
        }
    }
    left.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    right.sort_by(|a, b| b.partial_cmp(a).expect("finite"));
    let mut means = left;
    means.push(values[peak]);
    means.extend(right);
    means
}

/// Per-episode regret record: the running pseudo-regret after every pull and
/// the final pull counts.
///
/// The pseudo-regret at each step is evaluated as the canonical arm-major sum
/// `sum_a gap_a * pulls_a(t)`, so the chain-rule identity against the final
/// pull counts holds bit-exactly, not just in expectation.
#[derive(Debug, Clone, PartialEq)]
pub struct RegretTrace<S: Scalar> {
    /// `cum_pseudo_regret[t - 1]` is the pseudo-regret after `t` pulls.
    pub cum_pseudo_regret: Vec<S>,
    /// Realized regret `sum_s (mu* - X_s)`, populated only when asked for.
    pub cum_realized_regret: Option<Vec<S>>,
    /// Final pull counts, indexed `arm - 1`.
    pub pulls: Vec<u64>,
    pub horizon: u64,
}

impl<S: Scalar> RegretTrace<S> {
    /// Pseudo-regret after `t` pulls (1-based).
    pub fn pseudo_at(&self, t: u64) -> S {
        self.cum_pseudo_regret[t as usize - 1]
    }

    pub fn final_pseudo_regret(&self) -> S {
        *self
            .cum_pseudo_regret
            .last()
            .expect("horizon is at least one")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::streams::{derive_stream, StreamPurpose};
    use crate::testutil::tent11;
    use approx::assert_abs_diff_eq;

    #[test]
    fn gaps_on_the_tent() {
        let c = tent11();
        assert_eq!(c.best_arm(), 6);
        assert_abs_diff_eq!(c.gap(5), 0.2, epsilon = 1e-15);
        assert_eq!(c.gap(6), 0.0);
        assert_abs_diff_eq!(c.gap(1), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn lower_bound_on_the_tent() {
        let c = tent11();
        let terms = c.lower_bound_terms();
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, 5);
        assert_eq!(terms[1].0, 7);
        assert_abs_diff_eq!(terms[0].1, 10.0, epsilon = 1e-9);
        assert_abs_diff_eq!(c.lower_bound_constant(), 20.0, epsilon = 1e-9);
    }

    #[test]
    fn lower_bound_bernoulli_path() {
        // both neighbours at 0.1 against the peak 0.9:
        // c = 2 * 0.8 / kl(0.1 | 0.9), kl = 0.8 ln 9
        let c = BanditConfig::new(
            Family::Bernoulli,
            vec![0.1, 0.9, 0.1],
            UnimodalGraph::path(3),
        )
        .unwrap();
        assert_abs_diff_eq!(
            c.lower_bound_constant(),
            0.9102392266268373,
            epsilon = 1e-12
        );
    }

    #[test]
    fn lower_bound_two_arms() {
        let c = BanditConfig::new(
            Family::GaussianUnitVariance,
            vec![0.0, 1.0],
            UnimodalGraph::path(2),
        )
        .unwrap();
        assert_abs_diff_eq!(c.lower_bound_constant(), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn lower_bound_star() {
        // best arm at the center, k = 3 leaves at mu* - delta: c = 2k/delta
        let g = UnimodalGraph::tree(&[(1, 2), (1, 3), (1, 4)]).unwrap();
        let c =
            BanditConfig::new(Family::GaussianUnitVariance, vec![0.5, 0.4, 0.4, 0.4], g).unwrap();
        assert_abs_diff_eq!(c.lower_bound_constant(), 60.0, epsilon = 1e-9);
    }

    #[test]
    fn lower_bound_survives_path_reversal() {
        let c = tent11();
        let mut reversed_means = c.means().to_vec();
        reversed_means.reverse();
        let r = BanditConfig::new(
            Family::GaussianUnitVariance,
            reversed_means,
            UnimodalGraph::path(11),
        )
        .unwrap();
        assert_eq!(c.lower_bound_constant(), r.lower_bound_constant());
    }

    #[test]
    fn rejects_invalid_configs() {
        assert!(matches!(
            BanditConfig::new(
                Family::GaussianUnitVariance,
                vec![0.5],
                UnimodalGraph::path(1)
            ),
            Err(ConfigError::TooFewArms(1))
        ));
        assert!(matches!(
            BanditConfig::new(Family::Bernoulli, vec![0.2, 1.0], UnimodalGraph::path(2)),
            Err(ConfigError::BernoulliMeanOutOfRange { arm: 2, .. })
        ));
        assert!(matches!(
            BanditConfig::new(
                Family::GaussianUnitVariance,
                vec![0.0, 1.0, 0.0, 0.5],
                UnimodalGraph::path(4)
            ),
            Err(ConfigError::NotUnimodal(
                UnimodalViolation::NoIncreasingPath { arm: 4 }
            ))
        ));
    }

    #[test]
    fn rewards_replay_on_the_same_stream() {
        let c = tent11();
        let draw = |seed| {
            let mut rng = derive_stream(seed, 0, StreamPurpose::Rewards);
            (0..20)
                .map(|i| c.sample_reward(1 + i % 11, &mut rng))
                .collect::<Vec<_>>()
        };
        assert_eq!(draw(5), draw(5));
        assert_ne!(draw(5), draw(6));
    }

    #[test]
    fn gaussian_sample_mean_concentrates() {
        let c = BanditConfig::new(
            Family::GaussianUnitVariance,
            vec![0.0, 1.0],
            UnimodalGraph::path(2),
        )
        .unwrap();
        let mut rng = derive_stream(11, 0, StreamPurpose::Rewards);
        let n = 100_000;
        let sum: f64 = (0..n).map(|_| c.sample_reward(1, &mut rng)).sum();
        assert!((sum / n as f64).abs() < 0.02);
    }

    #[test]
    fn near_degenerate_bernoulli_mostly_ones() {
        let c = BanditConfig::new(
            Family::Bernoulli,
            vec![1.0 - 1e-12, 0.5],
            UnimodalGraph::path(2),
        )
        .unwrap();
        let mut rng = derive_stream(3, 0, StreamPurpose::Rewards);
        let n = 10_000;
        let mean: f64 = (0..n).map(|_| c.sample_reward(1, &mut rng)).sum::<f64>() / n as f64;
        // 3 sigma of a Bernoulli(1 - 1e-12) mean over 1e4 draws is ~3e-8
        assert!(mean > 1.0 - 1e-6);
    }

    #[test]
    fn random_configs_are_unimodal_permutations() {
        let mut rng = derive_stream(17, 0, StreamPurpose::ConfigDraw);
        for _ in 0..50 {
            let c: BanditConfig<f64> =
                random_unimodal_config(8, Family::GaussianUnitVariance, &mut rng).unwrap();
            assert!(c.graph().validate_unimodal(c.means()).is_ok());
        }
        let c: BanditConfig<f64> = random_unimodal_config(2, Family::Bernoulli, &mut rng).unwrap();
        assert_eq!(c.arm_count(), 2);
    }

    #[test]
    fn arrangement_keeps_all_values() {
        let values = vec![0.3, 0.9, 0.1, 0.5];
        let mut flips = [true, false, true].iter().copied();
        let means = arrange_unimodal(&values, &mut || flips.next().unwrap());
        // 0.3 left, 0.1 right, 0.5 left
        assert_eq!(means, vec![0.3, 0.5, 0.9, 0.1]);
        let mut sorted_in = values.clone();
        let mut sorted_out = means.clone();
        sorted_in.sort_by(f64::total_cmp);
        sorted_out.sort_by(f64::total_cmp);
        assert_eq!(sorted_in, sorted_out);
    }

    #[test]
    fn peak_position_law_for_three_arms() {
        // with 2 independent fair coins the peak sits at positions 1..3
        // with probabilities 1/4, 1/2, 1/4
        let mut rng = derive_stream(23, 0, StreamPurpose::ConfigDraw);
        let n = 100_000;
        let mut counts = [0u32; 3];
        for _ in 0..n {
            let c: BanditConfig<f64> =
                random_unimodal_config(3, Family::GaussianUnitVariance, &mut rng).unwrap();
            counts[c.best_arm() - 1] += 1;
        }
        let sigma = (0.25f64 * 0.75 * n as f64).sqrt();
        assert!((counts[0] as f64 - 0.25 * n as f64).abs() < 3.0 * sigma);
        assert!((counts[1] as f64 - 0.50 * n as f64).abs() < 3.5 * sigma);
        assert!((counts[2] as f64 - 0.25 * n as f64).abs() < 3.0 * sigma);
    }
}
