//! Monte-Carlo experiment execution: episodes, replicates, aggregation and
//! the JSON experiment schema.

pub mod monitor;

use rand::Rng;
use rayon::prelude::*;
use serde::Deserialize;
use thiserror::Error;

use crate::env::{random_unimodal_config, BanditConfig, ConfigError, RegretTrace};
use crate::graph::{GraphError, GraphKind, UnimodalGraph};
use crate::kl::Family;
use crate::policies::{Policy, PolicyKind, PolicyState, UnknownPolicy};
use crate::scalar::Scalar;
use crate::streams::{derive_stream, StreamPurpose};

use monitor::MonitorLog;

/// Which cumulative metric the aggregate reports. Pseudo-regret replaces
/// rewards by gaps; same expectation, far less Monte-Carlo variance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegretMetric {
    #[default]
    Pseudo,
    Realized,
}

/// Where each replicate's environment comes from.
#[derive(Debug, Clone)]
pub enum Environment<S: Scalar> {
    Fixed(BanditConfig<S>),
    /// A fresh uniformly-unimodal path configuration per replicate, shared
    /// across policies.
    RandomPath {
        arms: usize,
        family: Family,
    },
}

/// A full experiment description.
#[derive(Debug, Clone)]
pub struct ExperimentSpec<S: Scalar> {
    pub horizon: u64,
    pub replicates: u32,
    pub master_seed: u64,
    pub policies: Vec<Policy<S>>,
    pub environment: Environment<S>,
    /// Times at which the regret curve is recorded; sorted, within
    /// `1..=horizon`.
    pub checkpoints: Vec<u64>,
    pub monitors_on: bool,
    pub metric: RegretMetric,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpecError {
    #[error("horizon must be at least 1")]
    ZeroHorizon,
    #[error("replicates must be at least 1")]
    ZeroReplicates,
    #[error("no policies selected")]
    NoPolicies,
    #[error("policy {0} listed twice")]
    DuplicatePolicy(&'static str),
    #[error("checkpoint {0} outside 1..=horizon")]
    CheckpointOutOfRange(u64),
    #[error("checkpoints must be strictly increasing")]
    UnsortedCheckpoints,
    #[error("dimed-ub needs a path or tree graph")]
    DimedNeedsTree,
}

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

impl<S: Scalar> ExperimentSpec<S> {
    pub fn validate(&self) -> Result<(), SpecError> {
        if self.horizon == 0 {
            return Err(SpecError::ZeroHorizon);
        }
        if self.replicates == 0 {
            return Err(SpecError::ZeroReplicates);
        }
        if self.policies.is_empty() {
            return Err(SpecError::NoPolicies);
        }
        for (i, p) in self.policies.iter().enumerate() {
            if self.policies[..i].iter().any(|q| q.kind == p.kind) {
                return Err(SpecError::DuplicatePolicy(p.name()));
            }
        }
        if !self.checkpoints.windows(2).all(|w| w[0] < w[1]) {
            return Err(SpecError::UnsortedCheckpoints);
        }
        for &c in &self.checkpoints {
            if c == 0 || c > self.horizon {
                return Err(SpecError::CheckpointOutOfRange(c));
            }
        }
        let dimed = self.policies.iter().any(|p| p.kind == PolicyKind::DimedUb);
        if dimed {
            if let Environment::Fixed(config) = &self.environment {
                if config.graph().kind() == GraphKind::General {
                    return Err(SpecError::DimedNeedsTree);
                }
            }
        }
        Ok(())
    }

    pub fn arm_count(&self) -> usize {
        match &self.environment {
            Environment::Fixed(c) => c.arm_count(),
            Environment::RandomPath { arms, .. } => *arms,
        }
    }
}

/// 100 log-spaced record times, always ending at the horizon.
pub fn default_checkpoints(horizon: u64) -> Vec<u64> {
    let n = 100u32;
    let h = horizon as f64;
    let mut points: Vec<u64> = (0..n)
        .map(|i| (h.powf(f64::from(i) / f64::from(n - 1))).round() as u64)
        .map(|t| t.clamp(1, horizon))
        .collect();
    points.push(horizon);
    points.sort_unstable();
    points.dedup();
    points
}

/// One policy's trace over one replicate.
#[derive(Debug, Clone)]
pub struct EpisodeOutcome<S: Scalar> {
    pub trace: RegretTrace<S>,
    pub monitor: MonitorLog,
}

/// Play `policy` against `config` for `horizon` pulls.
///
/// The first arm is drawn uniformly from `init_rng`; everything afterwards is
/// a deterministic function of the reward stream. When `monitors_on`, every
/// decision is checked against the strategy inequalities.
pub fn run_episode<S: Scalar, R1: Rng + ?Sized, R2: Rng + ?Sized>(
    config: &BanditConfig<S>,
    policy: &Policy<S>,
    horizon: u64,
    init_rng: &mut R1,
    reward_rng: &mut R2,
    monitors_on: bool,
    track_realized: bool,
) -> EpisodeOutcome<S> {
    assert!(horizon >= 1, "horizon must be at least 1");
    let arms = config.arm_count();
    let gaps = config.gaps();
    let graph = config.graph();
    let family = config.family();

    let mut state: PolicyState<S> = policy.init_state(graph);
    let mut log = MonitorLog::default();
    let mut cum = Vec::with_capacity(horizon as usize);
    let mut realized = if track_realized {
        Some(Vec::with_capacity(horizon as usize))
    } else {
        None
    };
    let mut realized_sum = S::zero();

    let first = init_rng.gen_range(1..=arms);
    for step in 0..horizon {
        let arm = if step == 0 {
            first
        } else {
            let chosen = policy.choose(&mut state, graph, family);
            if monitors_on {
                monitor::check_step(policy.kind, &state, graph, family, chosen, &mut log);
            }
            chosen
        };
        let reward = config.sample_reward(arm, reward_rng);
        state.update(arm, reward);
        // Arm-major evaluation keeps the chain-rule identity against the
        // pull counts exact at every step, not only in expectation.
        let mut total = S::zero();
        for (&gap, &pulls) in gaps.iter().zip(&state.pulls) {
            total += gap * S::from_count(pulls);
        }
        cum.push(total);
        if let Some(r) = realized.as_mut() {
            realized_sum += config.best_mean() - reward;
            r.push(realized_sum);
        }
    }

    let trace = RegretTrace {
        cum_pseudo_regret: cum,
        cum_realized_regret: realized,
        pulls: state.pulls,
        horizon,
    };
    EpisodeOutcome {
        trace,
        monitor: log,
    }
}

/// Aggregate of one policy across all replicates.
#[derive(Debug, Clone)]
pub struct PolicySummary<S: Scalar> {
    pub name: &'static str,
    /// Mean cumulative regret per checkpoint.
    pub mean_regret: Vec<S>,
    /// Standard error of the mean per checkpoint; zero for one replicate.
    pub stderr_regret: Vec<S>,
    /// Mean pulls per arm at the horizon, indexed `arm - 1`.
    pub mean_pulls: Vec<S>,
    pub monitor: MonitorLog,
}

#[derive(Debug, Clone)]
pub struct RunResult<S: Scalar> {
    pub horizon: u64,
    pub replicates: u32,
    pub checkpoints: Vec<u64>,
    pub policies: Vec<PolicySummary<S>>,
}

struct PolicyReplicate<S: Scalar> {
    checkpoint_regret: Vec<S>,
    pulls: Vec<u64>,
    monitor: MonitorLog,
}

/// Run every policy over every replicate and aggregate.
///
/// Replicates are the unit of parallelism; each derives its streams from
/// `(master_seed, replicate, purpose)`, so the result is identical on any
/// thread count. In random mode all policies of replicate `k` see the same
/// drawn configuration.
pub fn run_experiment<S: Scalar>(
    spec: &ExperimentSpec<S>,
) -> Result<RunResult<S>, ExperimentError> {
    spec.validate()?;
    let replicates: Vec<Vec<PolicyReplicate<S>>> = (0..u64::from(spec.replicates))
        .into_par_iter()
        .map(|rep| run_replicate(spec, rep))
        .collect::<Result<_, ConfigError>>()?;

    let r_count = S::from_count(u64::from(spec.replicates));
    let policies = spec
        .policies
        .iter()
        .enumerate()
        .map(|(p, policy)| {
            let series: Vec<&PolicyReplicate<S>> = replicates.iter().map(|r| &r[p]).collect();
            let mut mean_regret = Vec::with_capacity(spec.checkpoints.len());
            let mut stderr_regret = Vec::with_capacity(spec.checkpoints.len());
            for c in 0..spec.checkpoints.len() {
                let mean = series
                    .iter()
                    .fold(S::zero(), |acc, s| acc + s.checkpoint_regret[c])
                    / r_count;
                let stderr = if spec.replicates > 1 {
                    let ss = series.iter().fold(S::zero(), |acc, s| {
                        let d = s.checkpoint_regret[c] - mean;
                        acc + d * d
                    });
                    (ss / (r_count - S::one()) / r_count).sqrt()
                } else {
                    S::zero()
                };
                mean_regret.push(mean);
                stderr_regret.push(stderr);
            }
            let arms = series[0].pulls.len();
            let mean_pulls = (0..arms)
                .map(|a| {
                    let total: u64 = series.iter().map(|s| s.pulls[a]).sum();
                    S::from_count(total) / r_count
                })
                .collect();
            let mut log = MonitorLog::default();
            for s in &series {
                log.merge(&s.monitor);
            }
            PolicySummary {
                name: policy.name(),
                mean_regret,
                stderr_regret,
                mean_pulls,
                monitor: log,
            }
        })
        .collect();

    Ok(RunResult {
        horizon: spec.horizon,
        replicates: spec.replicates,
        checkpoints: spec.checkpoints.clone(),
        policies,
    })
}

fn run_replicate<S: Scalar>(
    spec: &ExperimentSpec<S>,
    rep: u64,
) -> Result<Vec<PolicyReplicate<S>>, ConfigError> {
    let drawn;
    let config: &BanditConfig<S> = match &spec.environment {
        Environment::Fixed(c) => c,
        Environment::RandomPath { arms, family } => {
            let mut rng = derive_stream(spec.master_seed, rep, StreamPurpose::ConfigDraw);
            drawn = random_unimodal_config(*arms, *family, &mut rng)?;
            &drawn
        }
    };
    let track_realized = spec.metric == RegretMetric::Realized;
    Ok(spec
        .policies
        .iter()
        .map(|policy| {
            let mut init_rng = derive_stream(spec.master_seed, rep, StreamPurpose::InitArm);
            let mut reward_rng = derive_stream(spec.master_seed, rep, StreamPurpose::Rewards);
            let outcome = run_episode(
                config,
                policy,
                spec.horizon,
                &mut init_rng,
                &mut reward_rng,
                spec.monitors_on,
                track_realized,
            );
            let curve = match spec.metric {
                RegretMetric::Pseudo => &outcome.trace.cum_pseudo_regret,
                RegretMetric::Realized => outcome
                    .trace
                    .cum_realized_regret
                    .as_ref()
                    .expect("realized curve was tracked"),
            };
            let checkpoint_regret = spec
                .checkpoints
                .iter()
                .map(|&t| curve[t as usize - 1])
                .collect();
            PolicyReplicate {
                checkpoint_regret,
                pulls: outcome.trace.pulls,
                monitor: outcome.monitor,
            }
        })
        .collect())
}

// ---------------------------------------------------------------------------
// JSON experiment schema
// ---------------------------------------------------------------------------

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("config JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("config field `{field}`: {message}")]
    Field {
        field: &'static str,
        message: String,
    },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Policy(#[from] UnknownPolicy),
    #[error(transparent)]
    Spec(#[from] SpecError),
}

fn field_err(field: &'static str, message: impl Into<String>) -> ParseError {
    ParseError::Field {
        field,
        message: message.into(),
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, bound(deserialize = "S: Deserialize<'de>"))]
struct ExperimentFile<S> {
    family: Family,
    #[serde(default)]
    means: Option<Vec<S>>,
    #[serde(default)]
    random: Option<RandomFile>,
    #[serde(default)]
    graph: Option<GraphFile>,
    #[serde(default = "default_horizon")]
    horizon: u64,
    #[serde(default = "default_replicates")]
    replicates: u32,
    #[serde(default)]
    seed: u64,
    policies: Vec<String>,
    #[serde(default)]
    osub_c: Option<S>,
    #[serde(default)]
    checkpoints: Option<Vec<u64>>,
    #[serde(default)]
    monitors: bool,
    #[serde(default)]
    metric: RegretMetric,
}

fn default_horizon() -> u64 {
    10_000
}

fn default_replicates() -> u32 {
    100
}

#[derive(Debug, Deserialize)]
struct RandomFile {
    arms: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "lowercase", tag = "kind")]
enum GraphFile {
    Path { arms: usize },
    Tree { edges: Vec<(usize, usize)> },
}

impl GraphFile {
    fn build(self) -> Result<UnimodalGraph, GraphError> {
        match self {
            GraphFile::Path { arms } => {
                if arms == 0 {
                    return Err(GraphError::Empty);
                }
                Ok(UnimodalGraph::path(arms))
            }
            GraphFile::Tree { edges } => UnimodalGraph::tree(&edges),
        }
    }
}

/// Command-line overrides; any set field wins over the file value.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub replicates: Option<u32>,
    pub horizon: Option<u64>,
    /// Replaces the file's policy list wholesale.
    pub policies: Option<Vec<String>>,
    pub monitors: Option<bool>,
}

impl<S: Scalar + for<'de> Deserialize<'de>> ExperimentSpec<S> {
    /// Parse the JSON experiment schema and validate the result.
    pub fn from_json(text: &str) -> Result<Self, ParseError> {
        Self::from_json_with_overrides(text, &Overrides::default())
    }

    /// Parse, apply command-line overrides, validate.
    pub fn from_json_with_overrides(text: &str, overrides: &Overrides) -> Result<Self, ParseError> {
        let mut file: ExperimentFile<S> = serde_json::from_str(text)?;
        if let Some(seed) = overrides.seed {
            file.seed = seed;
        }
        if let Some(replicates) = overrides.replicates {
            file.replicates = replicates;
        }
        if let Some(horizon) = overrides.horizon {
            file.horizon = horizon;
            // explicit checkpoints may now be out of range; validation of the
            // built spec reports that, defaults simply follow the horizon
        }
        if let Some(policies) = &overrides.policies {
            file.policies = policies.clone();
        }
        if let Some(monitors) = overrides.monitors {
            file.monitors = monitors;
        }
        Self::build(file)
    }

    fn build(file: ExperimentFile<S>) -> Result<Self, ParseError> {
        let environment = match (file.means, file.random) {
            (Some(_), Some(_)) => {
                return Err(field_err(
                    "means",
                    "give either `means` or `random`, not both",
                ))
            }
            (None, None) => {
                return Err(field_err("means", "one of `means` or `random` is required"))
            }
            (Some(means), None) => {
                let graph = match file.graph {
                    Some(g) => g.build()?,
                    None => return Err(field_err("graph", "required for a fixed environment")),
                };
                Environment::Fixed(BanditConfig::new(file.family, means, graph)?)
            }
            (None, Some(random)) => {
                if let Some(g) = file.graph {
                    let graph = g.build()?;
                    if graph.kind() != GraphKind::Path || graph.arm_count() != random.arms {
                        return Err(field_err(
                            "graph",
                            "random environments draw on a path; omit `graph` or give the matching path",
                        ));
                    }
                }
                if random.arms < 2 {
                    return Err(ParseError::Config(ConfigError::TooFewArms(random.arms)));
                }
                Environment::RandomPath {
                    arms: random.arms,
                    family: file.family,
                }
            }
        };
        let osub_c = file.osub_c.unwrap_or_else(S::zero);
        let policies = file
            .policies
            .iter()
            .map(|name| {
                name.parse::<PolicyKind>()
                    .map(|kind| Policy { kind, osub_c })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let checkpoints = file
            .checkpoints
            .unwrap_or_else(|| default_checkpoints(file.horizon));
        let spec = ExperimentSpec {
            horizon: file.horizon,
            replicates: file.replicates,
            master_seed: file.seed,
            policies,
            environment,
            checkpoints,
            monitors_on: file.monitors,
            metric: file.metric,
        };
        spec.validate()?;
        Ok(spec)
    }
}
