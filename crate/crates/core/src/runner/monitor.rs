//! Runtime checks of the strategy-implied inequalities between pull counts
//! and indices.
//!
//! Each check compares the state right before a pull against the arm the
//! policy just chose. A correct implementation never violates any of them;
//! the monitor exists so that a regression shows up as a nonzero counter
//! instead of a silently wrong regret curve. Inequalities involving the
//! logarithm or empirical mean of an unpulled arm are skipped and counted
//! separately.

use std::collections::BTreeMap;

use crate::graph::{ArmId, UnimodalGraph};
use crate::kl::{kl_plus, Family};
use crate::policies::{
    current_leader, dimed_exploration_set, imed_index, minimal_index_arm, second_order_index,
    PolicyKind, PolicyState,
};
use crate::scalar::Scalar;

/// Slack absorbing floating-point error in the inequality evaluations.
pub const MONITOR_TOLERANCE: f64 = 1e-9;

/// How many violating steps keep their full state snapshot.
const MAX_SAMPLES: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub check: &'static str,
    pub t: u64,
    pub detail: String,
}

/// Violation counters plus bookkeeping on how often checks applied.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MonitorLog {
    /// Violation count per check name.
    pub violations: BTreeMap<&'static str, u64>,
    /// First few violating steps with state snapshots.
    pub samples: Vec<Violation>,
    /// Inequalities evaluated.
    pub checked: u64,
    /// Inequalities skipped because an involved arm was unpulled.
    pub skipped: u64,
    /// Steps on which the confidence-gate indicator was zero, leaving the
    /// pull-floor inequality vacuous. Reported, never asserted on.
    pub gamma_zero: u64,
}

impl MonitorLog {
    pub fn total_violations(&self) -> u64 {
        self.violations.values().sum()
    }

    pub fn merge(&mut self, other: &MonitorLog) {
        for (&check, &count) in &other.violations {
            *self.violations.entry(check).or_insert(0) += count;
        }
        for v in &other.samples {
            if self.samples.len() >= MAX_SAMPLES {
                break;
            }
            self.samples.push(v.clone());
        }
        self.checked += other.checked;
        self.skipped += other.skipped;
        self.gamma_zero += other.gamma_zero;
    }

    fn record(&mut self, check: &'static str, t: u64, detail: impl FnOnce() -> String) {
        *self.violations.entry(check).or_insert(0) += 1;
        if self.samples.len() < MAX_SAMPLES {
            self.samples.push(Violation {
                check,
                t,
                detail: detail(),
            });
        }
    }
}

/// Evaluate every inequality applicable to `kind` on one decision: `state`
/// is the observation state the policy saw (pre-pull) and `chosen` the arm
/// it returned. Results accumulate into `log`.
pub fn check_step<S: Scalar>(
    kind: PolicyKind,
    state: &PolicyState<S>,
    graph: &UnimodalGraph,
    family: Family,
    chosen: ArmId,
    log: &mut MonitorLog,
) {
    let t = state.t;
    let leader = current_leader(state);
    let n_chosen = state.pulls_of(chosen);
    let n_leader = state.pulls_of(leader);

    match kind {
        PolicyKind::ImedUb => {
            pull_floor(
                state,
                family,
                graph.neighbors(leader),
                chosen,
                "imed-ub-pull-floor",
                log,
            );
            leader_cap(n_chosen, n_leader, t, "imed-ub-leader-cap", log);
            transport_cap(state, family, chosen, "imed-ub-transport-cap", log);
        }
        PolicyKind::KlucbUb => {
            if confidence_gate(state, family, chosen) {
                pull_floor(
                    state,
                    family,
                    graph.neighbors(leader),
                    chosen,
                    "klucb-ub-pull-floor",
                    log,
                );
            } else {
                log.gamma_zero += 1;
            }
            leader_cap(n_chosen, n_leader, t, "klucb-ub-leader-cap", log);
            transport_cap(state, family, chosen, "klucb-ub-transport-cap", log);
        }
        PolicyKind::DimedUb => {
            pull_floor(
                state,
                family,
                graph.neighbors(leader),
                chosen,
                "dimed-ub-pull-floor",
                log,
            );
            leader_cap(n_chosen, n_leader, t, "dimed-ub-leader-cap", log);
            let a_ul = minimal_index_arm(state, graph, family, leader);
            transport_cap(state, family, a_ul, "dimed-ub-minimal-transport-cap", log);
            if a_ul != leader {
                let n_ul = state.pulls_of(a_ul);
                log.checked += 1;
                if !(n_chosen <= n_ul && n_ul <= n_leader) {
                    log.record("dimed-ub-anchor-cap", t, || {
                        format!("N_chosen={n_chosen} N_minimal={n_ul} N_leader={n_leader}")
                    });
                }
                let probe = dimed_exploration_set(state, graph, a_ul, leader);
                for &a in &probe {
                    if n_chosen == 0 || state.pulls_of(a) == 0 {
                        log.skipped += 1;
                        continue;
                    }
                    log.checked += 1;
                    let lhs = S::from_count(n_chosen).ln();
                    let rhs = second_order_index(state, family, a, a_ul);
                    if lhs > rhs + tol::<S>() {
                        log.record("dimed-ub-probe-floor", t, || {
                            format!("arm={a} log N_chosen={lhs} index={rhs}")
                        });
                    }
                }
                if n_ul == 0 {
                    log.skipped += 1;
                } else {
                    log.checked += 1;
                    let lhs = scaled_divergence(n_chosen, || {
                        kl_plus(family, state.mean(chosen), state.mean(a_ul))
                    });
                    let rhs = S::from_count(n_ul).ln();
                    if lhs > rhs + tol::<S>() {
                        log.record("dimed-ub-probe-transport-cap", t, || {
                            format!("lhs={lhs} log N_minimal={rhs}")
                        });
                    }
                }
            }
        }
        // no inequalities are monitored for the baselines
        PolicyKind::Osub | PolicyKind::Imed => {}
    }
}

fn tol<S: Scalar>() -> S {
    S::from_f64(MONITOR_TOLERANCE).expect("tolerance representable")
}

/// `n * divergence` under the `0 * inf = 0` convention.
fn scaled_divergence<S: Scalar>(n: u64, divergence: impl FnOnce() -> S) -> S {
    if n == 0 {
        S::zero()
    } else {
        S::from_count(n) * divergence()
    }
}

/// `log N_chosen <= N_a KL(mean_a | best_mean) + log N_a` over the given
/// neighbourhood.
fn pull_floor<S: Scalar>(
    state: &PolicyState<S>,
    family: Family,
    neighbors: &[ArmId],
    chosen: ArmId,
    check: &'static str,
    log: &mut MonitorLog,
) {
    let n_chosen = state.pulls_of(chosen);
    for &a in neighbors {
        if n_chosen == 0 || state.pulls_of(a) == 0 {
            log.skipped += 1;
            continue;
        }
        log.checked += 1;
        let lhs = S::from_count(n_chosen).ln();
        let rhs = imed_index(state, family, a);
        if lhs > rhs + tol::<S>() {
            log.record(check, state.t, || {
                format!("arm={a} log N_chosen={lhs} index={rhs}")
            });
        }
    }
}

/// `N_chosen <= N_leader`; exact integer comparison.
fn leader_cap(n_chosen: u64, n_leader: u64, t: u64, check: &'static str, log: &mut MonitorLog) {
    log.checked += 1;
    if n_chosen > n_leader {
        log.record(check, t, || {
            format!("N_chosen={n_chosen} N_leader={n_leader}")
        });
    }
}

/// `N_arm KL(mean_arm | best_mean) <= log t`.
fn transport_cap<S: Scalar>(
    state: &PolicyState<S>,
    family: Family,
    arm: ArmId,
    check: &'static str,
    log: &mut MonitorLog,
) {
    log.checked += 1;
    let lhs = scaled_divergence(state.pulls_of(arm), || {
        family.kl(state.mean(arm), state.best_mean())
    });
    let rhs = S::from_count(state.t.max(1)).ln();
    if lhs > rhs + tol::<S>() {
        log.record(check, state.t, || {
            format!("arm={arm} lhs={lhs} log t={rhs}")
        });
    }
}

/// The indicator gating the confidence policy's pull floor: one when the
/// chosen arm is an empirical maximizer or its own transport cost already
/// dominates its exploration term.
fn confidence_gate<S: Scalar>(state: &PolicyState<S>, family: Family, chosen: ArmId) -> bool {
    if state.mean(chosen) == state.best_mean() {
        return true;
    }
    let n = state.pulls_of(chosen);
    if n == 0 {
        return true; // log 0 = -inf satisfies the gate inequality
    }
    let n_s = S::from_count(n);
    n_s.ln() <= n_s * family.kl(state.mean(chosen), state.best_mean()) + tol::<S>()
}
