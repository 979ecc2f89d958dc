//! The five decision strategies over a shared observation state: the two
//! neighbourhood index policies, their dichotomous large-graph variant, the
//! forced-exploitation baseline, and the unstructured index baseline.
//!
//! All ties break towards the lowest arm id so traces replay exactly.

use std::collections::BTreeSet;
use std::str::FromStr;

use crate::graph::{ArmId, DichotomyState, GraphKind, UnimodalGraph};
use crate::kl::{kl_plus, ucb_solve, Family};
use crate::scalar::Scalar;

/// Everything a policy may read: pull counts, reward sums, the step counter,
/// plus the leader counts and dichotomy bookkeeping used by the strategies
/// that need them.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicyState<S: Scalar> {
    /// Pull counts, indexed `arm - 1`.
    pub pulls: Vec<u64>,
    /// Cumulative rewards, indexed `arm - 1`.
    pub reward_sums: Vec<S>,
    /// Completed pulls; equals the sum of `pulls`.
    pub t: u64,
    /// How many times each arm has been the leader (forced-exploitation
    /// schedule only).
    pub leader_counts: Vec<u64>,
    /// Dynamic probe subsets for second-order exploration on paths.
    pub dichotomy: Option<DichotomyState>,
}

impl<S: Scalar> PolicyState<S> {
    pub fn new(arm_count: usize) -> Self {
        PolicyState {
            pulls: vec![0; arm_count],
            reward_sums: vec![S::zero(); arm_count],
            t: 0,
            leader_counts: vec![0; arm_count],
            dichotomy: None,
        }
    }

    pub fn with_dichotomy(arm_count: usize) -> Self {
        PolicyState {
            dichotomy: Some(DichotomyState::new(arm_count)),
            ..Self::new(arm_count)
        }
    }

    pub fn arm_count(&self) -> usize {
        self.pulls.len()
    }

    pub fn pulls_of(&self, arm: ArmId) -> u64 {
        self.pulls[arm - 1]
    }

    /// Empirical mean, with the convention that unpulled arms sit at zero.
    pub fn mean(&self, arm: ArmId) -> S {
        let n = self.pulls[arm - 1];
        if n == 0 {
            S::zero()
        } else {
            self.reward_sums[arm - 1] / S::from_count(n)
        }
    }

    /// Best empirical mean over all arms.
    pub fn best_mean(&self) -> S {
        (1..=self.arm_count())
            .map(|a| self.mean(a))
            .fold(S::neg_infinity(), S::max)
    }

    /// Record one observed reward.
    pub fn update(&mut self, arm: ArmId, reward: S) {
        self.pulls[arm - 1] += 1;
        self.reward_sums[arm - 1] += reward;
        self.t += 1;
    }
}

/// Leader: the least-pulled arm among the empirical maximizers, lowest id on
/// remaining ties.
pub fn current_leader<S: Scalar>(state: &PolicyState<S>) -> ArmId {
    let mut best = 1;
    for a in 2..=state.arm_count() {
        let (m, bm) = (state.mean(a), state.mean(best));
        if m > bm || (m == bm && state.pulls_of(a) < state.pulls_of(best)) {
            best = a;
        }
    }
    best
}

/// Index `N_a KL(mean_a | best_mean) + log N_a`, with `0 * inf = 0` and
/// `-inf` for unpulled arms so they are examined first.
pub fn imed_index<S: Scalar>(state: &PolicyState<S>, family: Family, arm: ArmId) -> S {
    imed_index_given_best(state, family, arm, state.best_mean())
}

/// Same index with the best empirical mean hoisted out, so a scan over many
/// arms stays linear in the arm count.
fn imed_index_given_best<S: Scalar>(
    state: &PolicyState<S>,
    family: Family,
    arm: ArmId,
    best_mean: S,
) -> S {
    let n = state.pulls_of(arm);
    if n == 0 {
        return S::neg_infinity();
    }
    let n_s = S::from_count(n);
    n_s * family.kl(state.mean(arm), best_mean) + n_s.ln()
}

/// Leader and its neighbours, ascending.
pub(crate) fn neighborhood_candidates(graph: &UnimodalGraph, leader: ArmId) -> Vec<ArmId> {
    let mut candidates = graph.neighbors(leader).to_vec();
    candidates.push(leader);
    candidates.sort_unstable();
    candidates
}

fn argmin_by<S: Scalar>(
    arms: impl IntoIterator<Item = ArmId>,
    mut score: impl FnMut(ArmId) -> S,
) -> ArmId {
    let mut best: Option<(ArmId, S)> = None;
    for a in arms {
        let v = score(a);
        match best {
            Some((_, bv)) if v >= bv => {}
            _ => best = Some((a, v)),
        }
    }
    best.expect("nonempty candidate set").0
}

fn argmax_by<S: Scalar>(
    arms: impl IntoIterator<Item = ArmId>,
    mut score: impl FnMut(ArmId) -> S,
) -> ArmId {
    argmin_by(arms, |a| -score(a))
}

/// Minimum-index arm among the leader and its neighbourhood.
pub fn imed_ub_choose<S: Scalar>(
    state: &PolicyState<S>,
    graph: &UnimodalGraph,
    family: Family,
) -> ArmId {
    let leader = current_leader(state);
    minimal_index_arm(state, graph, family, leader)
}

/// Largest mean consistent with the pull-count budget of the current leader:
/// `max { u >= mean_a : N_a KL(mean_a | u) + log N_a <= log N_leader }`.
///
/// Falls back to `mean_a` when the arm already has more pulls than the
/// leader, and to `+inf` when the arm is unpulled.
pub fn klucb_ub_index<S: Scalar>(
    state: &PolicyState<S>,
    family: Family,
    arm: ArmId,
    leader: ArmId,
) -> S {
    let n = state.pulls_of(arm);
    if n == 0 {
        return S::infinity();
    }
    let n_leader = state.pulls_of(leader);
    if n_leader == 0 {
        return state.mean(arm);
    }
    ucb_solve(family, state.mean(arm), n, S::from_count(n_leader).ln())
}

/// Maximum-confidence arm among the leader and its neighbourhood.
///
/// Ties go to the leader first, then to the lowest id. Leader priority
/// matters when a neighbour's confidence level collapses onto the best
/// empirical mean (routine with Bernoulli rewards): picking the tied
/// neighbour could hand the pull to an arm with more pulls than the leader,
/// which the strategy's pull-count bounds rule out.
pub fn klucb_ub_choose<S: Scalar>(
    state: &PolicyState<S>,
    graph: &UnimodalGraph,
    family: Family,
) -> ArmId {
    let leader = current_leader(state);
    let mut order = vec![leader];
    order.extend(graph.neighbors(leader));
    argmax_by(order, |a| klucb_ub_index(state, family, a, leader))
}

/// Second-order index relative to an anchor arm:
/// `N_a KL+(mean_a | mean_anchor) + log N_a`, `-inf` when unpulled.
pub fn second_order_index<S: Scalar>(
    state: &PolicyState<S>,
    family: Family,
    arm: ArmId,
    anchor: ArmId,
) -> S {
    let n = state.pulls_of(arm);
    if n == 0 {
        return S::neg_infinity();
    }
    let n_s = S::from_count(n);
    n_s * kl_plus(family, state.mean(arm), state.mean(anchor)) + n_s.ln()
}

/// Probe set for a second-order exploration step: the dichotomous side set on
/// paths, the whole cut subtree on general trees.
pub fn dimed_exploration_set<S: Scalar>(
    state: &PolicyState<S>,
    graph: &UnimodalGraph,
    a_underline: ArmId,
    leader: ArmId,
) -> BTreeSet<ArmId> {
    match &state.dichotomy {
        Some(d) => d.second_order_set(a_underline, leader),
        None => graph
            .subtree_after_cut(a_underline, leader)
            .into_iter()
            .collect(),
    }
}

/// Minimum-index arm among the leader and its neighbourhood; the anchor of a
/// second-order exploration step.
pub fn minimal_index_arm<S: Scalar>(
    state: &PolicyState<S>,
    graph: &UnimodalGraph,
    family: Family,
    leader: ArmId,
) -> ArmId {
    let best = state.best_mean();
    argmin_by(neighborhood_candidates(graph, leader), |a| {
        imed_index_given_best(state, family, a, best)
    })
}

/// Dichotomous variant: exploit like the neighbourhood index policy, but
/// explore by the second-order index over the probe set.
pub fn dimed_ub_choose<S: Scalar>(
    state: &mut PolicyState<S>,
    graph: &UnimodalGraph,
    family: Family,
) -> ArmId {
    let leader = current_leader(state);
    if let Some(d) = state.dichotomy.as_mut() {
        d.update(leader);
    }
    let a_underline = minimal_index_arm(state, graph, family, leader);
    if a_underline == leader {
        return leader;
    }
    let probe = dimed_exploration_set(state, graph, a_underline, leader);
    argmin_by(probe, |a| second_order_index(state, family, a, a_underline))
}

/// Exploration budget `f_c(x) = log(max(x,1)) + c log(log(max(x,e)))` of the
/// forced-exploitation baseline.
pub fn osub_budget<S: Scalar>(leader_count: u64, c: S) -> S {
    let x = S::from_count(leader_count.max(1));
    let e = S::one().exp();
    x.ln() + c * x.max(e).ln().ln()
}

/// Forced-exploitation baseline: play the leader on the arithmetic schedule
/// of its leader count, otherwise the highest-confidence neighbour. The
/// leader count increments here, at decision time.
pub fn osub_choose<S: Scalar>(
    state: &mut PolicyState<S>,
    graph: &UnimodalGraph,
    family: Family,
    c: S,
) -> ArmId {
    let leader = current_leader(state);
    state.leader_counts[leader - 1] += 1;
    let count = state.leader_counts[leader - 1];
    let degree = graph.max_degree() as u64;
    if (count - 1).is_multiple_of(degree + 1) {
        return leader;
    }
    let budget = osub_budget(count, c);
    argmax_by(graph.neighbors(leader).iter().copied(), |a| {
        let n = state.pulls_of(a);
        if n == 0 {
            S::infinity()
        } else {
            // sup { u >= mean_a : N_a KL(mean_a | u) <= f_c(L) }
            ucb_solve(family, state.mean(a), n, budget + S::from_count(n).ln())
        }
    })
}

/// Unstructured baseline: minimum index over the full arm set.
pub fn imed_choose<S: Scalar>(state: &PolicyState<S>, family: Family) -> ArmId {
    let best = state.best_mean();
    argmin_by(1..=state.arm_count(), |a| {
        imed_index_given_best(state, family, a, best)
    })
}

/// Strategy selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyKind {
    ImedUb,
    KlucbUb,
    DimedUb,
    Osub,
    Imed,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 5] = [
        PolicyKind::ImedUb,
        PolicyKind::KlucbUb,
        PolicyKind::DimedUb,
        PolicyKind::Osub,
        PolicyKind::Imed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolicyKind::ImedUb => "imed-ub",
            PolicyKind::KlucbUb => "klucb-ub",
            PolicyKind::DimedUb => "dimed-ub",
            PolicyKind::Osub => "osub",
            PolicyKind::Imed => "imed",
        }
    }
}

impl FromStr for PolicyKind {
    type Err = UnknownPolicy;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolicyKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownPolicy(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown policy {0:?}; expected one of imed-ub, klucb-ub, dimed-ub, osub, imed")]
pub struct UnknownPolicy(pub String);

/// A strategy plus its tunables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Policy<S: Scalar> {
    pub kind: PolicyKind,
    /// Loglog coefficient of the forced-exploitation budget.
    pub osub_c: S,
}

impl<S: Scalar> Policy<S> {
    pub fn new(kind: PolicyKind) -> Self {
        Policy {
            kind,
            osub_c: S::zero(),
        }
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }

    /// Fresh observation state, with dichotomy bookkeeping when this policy
    /// runs second-order exploration on a path.
    pub fn init_state(&self, graph: &UnimodalGraph) -> PolicyState<S> {
        if self.kind == PolicyKind::DimedUb && graph.kind() == GraphKind::Path {
            PolicyState::with_dichotomy(graph.arm_count())
        } else {
            PolicyState::new(graph.arm_count())
        }
    }

    /// Next arm to pull. Identical states always yield identical choices.
    pub fn choose(
        &self,
        state: &mut PolicyState<S>,
        graph: &UnimodalGraph,
        family: Family,
    ) -> ArmId {
        match self.kind {
            PolicyKind::ImedUb => imed_ub_choose(state, graph, family),
            PolicyKind::KlucbUb => klucb_ub_choose(state, graph, family),
            PolicyKind::DimedUb => dimed_ub_choose(state, graph, family),
            PolicyKind::Osub => osub_choose(state, graph, family, self.osub_c),
            PolicyKind::Imed => imed_choose(state, family),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn state3(pulls: [u64; 3], means: [f64; 3]) -> PolicyState<f64> {
        PolicyState {
            reward_sums: (0..3).map(|i| means[i] * pulls[i] as f64).collect(),
            pulls: pulls.to_vec(),
            t: pulls.iter().sum(),
            leader_counts: vec![0; 3],
            dichotomy: None,
        }
    }

    #[test]
    fn leader_prefers_high_mean_then_few_pulls_then_low_id() {
        assert_eq!(current_leader(&state3([3, 3, 3], [0.2, 0.8, 0.5])), 2);
        assert_eq!(current_leader(&state3([7, 3, 3], [0.8, 0.8, 0.5])), 2);
        assert_eq!(current_leader(&state3([3, 3, 9], [0.8, 0.8, 0.5])), 1);
    }

    #[test]
    fn index_values() {
        let s = state3([5, 10, 5], [0.5, 0.8, 0.2]);
        let g = Family::GaussianUnitVariance;
        // empirically optimal arm: transport cost is null
        assert_abs_diff_eq!(imed_index(&s, g, 2), 10.0f64.ln(), epsilon = 1e-12);
        assert_abs_diff_eq!(imed_index(&s, g, 1), 1.8344379124341004, epsilon = 1e-12);
        let unpulled = state3([0, 1, 1], [0.0, 0.5, 0.5]);
        assert_eq!(imed_index(&unpulled, g, 1), f64::NEG_INFINITY);
    }

    #[test]
    fn neighborhood_argmin_examples() {
        let graph = UnimodalGraph::path(3);
        let g = Family::GaussianUnitVariance;
        let s = state3([5, 5, 5], [0.2, 0.8, 0.5]);
        assert_eq!(imed_ub_choose(&s, &graph, g), 2);
        let s = state3([5, 100, 5], [0.2, 0.8, 0.5]);
        assert_eq!(imed_ub_choose(&s, &graph, g), 3);
    }

    #[test]
    fn neighborhood_restriction_is_literal() {
        // leader 3 on a path of 5: arms 1 and 5 are never candidates even
        // with wildly attractive indices (unpulled here).
        let graph = UnimodalGraph::path(5);
        let g = Family::GaussianUnitVariance;
        let s = PolicyState::<f64> {
            pulls: vec![0, 5, 5, 5, 0],
            reward_sums: vec![0.0, 1.0, 4.0, 1.0, 0.0],
            t: 15,
            leader_counts: vec![0; 5],
            dichotomy: None,
        };
        let chosen = imed_ub_choose(&s, &graph, g);
        assert!([2, 3, 4].contains(&chosen));
        let chosen = klucb_ub_choose(&s, &graph, g);
        assert!([2, 3, 4].contains(&chosen));
    }

    #[test]
    fn confidence_index_values() {
        let g = Family::GaussianUnitVariance;
        let s = state3([5, 100, 5], [0.2, 0.8, 0.5]);
        let leader = current_leader(&s);
        assert_eq!(leader, 2);
        assert_abs_diff_eq!(
            klucb_ub_index(&s, g, 1, leader),
            1.2946656610223948,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(klucb_ub_index(&s, g, 2, leader), 0.8, epsilon = 1e-15);
        let unpulled = state3([0, 1, 1], [0.0, 0.5, 0.5]);
        assert_eq!(klucb_ub_index(&unpulled, g, 1, 2), f64::INFINITY);
    }

    #[test]
    fn confidence_argmax_examples() {
        let graph = UnimodalGraph::path(3);
        let g = Family::GaussianUnitVariance;
        // zero slack everywhere forces U = empirical mean
        let s = state3([5, 5, 5], [0.2, 0.8, 0.5]);
        assert_eq!(klucb_ub_choose(&s, &graph, g), 2);
        let s = state3([5, 100, 5], [0.2, 0.8, 0.5]);
        assert_eq!(klucb_ub_choose(&s, &graph, g), 3);
        // an unpulled neighbour always wins
        let s = state3([5, 3, 0], [0.2, 0.8, 0.0]);
        assert_eq!(klucb_ub_choose(&s, &graph, g), 3);
    }

    #[test]
    fn confidence_ties_go_to_the_leader() {
        // two arms sit at the best empirical mean; the one with more pulls
        // reaches the same confidence level but must not outrank the leader
        let s = state3([2, 1, 1], [1.0, 1.0, 0.0]);
        let graph = UnimodalGraph::path(3);
        let leader = current_leader(&s);
        assert_eq!(leader, 2);
        assert_eq!(klucb_ub_index(&s, Family::Bernoulli, 1, leader), 1.0);
        assert_eq!(klucb_ub_index(&s, Family::Bernoulli, 2, leader), 1.0);
        assert_eq!(klucb_ub_choose(&s, &graph, Family::Bernoulli), 2);
    }

    #[test]
    fn second_order_index_values() {
        let g = Family::GaussianUnitVariance;
        let s = state3([8, 8, 8], [0.1, 0.5, 0.9]);
        assert_abs_diff_eq!(
            second_order_index(&s, g, 2, 2),
            8.0f64.ln(),
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            second_order_index(&s, g, 1, 2),
            2.719441541679836,
            epsilon = 1e-12
        );
        // mean above the anchor: truncated divergence vanishes
        assert_abs_diff_eq!(
            second_order_index(&s, g, 3, 2),
            8.0f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn dichotomous_choose_exploits_on_minimal_leader() {
        let graph = UnimodalGraph::path(3);
        let g = Family::GaussianUnitVariance;
        let mut s = state3([5, 5, 5], [0.2, 0.8, 0.5]);
        assert_eq!(dimed_ub_choose(&mut s, &graph, g), 2);
    }

    #[test]
    fn dichotomous_choose_prefers_unpulled_probe_arm() {
        // leader 6 with an exhausted neighbourhood pushes exploration to the
        // probe set, where the unpulled arm 1 has index -inf.
        let graph = UnimodalGraph::path(11);
        let g = Family::GaussianUnitVariance;
        let mut pulls = vec![30u64; 11];
        pulls[0] = 0;
        pulls[5] = 2000; // ln(2000) tops every neighbour index, forcing exploration
        let means = [0.0, 0.1, 0.2, 0.3, 0.4, 0.9, 0.4, 0.3, 0.2, 0.1, 0.0];
        let mut s = PolicyState::<f64> {
            reward_sums: (0..11).map(|i| means[i] * pulls[i] as f64).collect(),
            t: pulls.iter().sum(),
            pulls,
            leader_counts: vec![0; 11],
            dichotomy: Some(DichotomyState::new(11)),
        };
        let chosen = dimed_ub_choose(&mut s, &graph, g);
        assert_eq!(chosen, 1);
    }

    #[test]
    fn dichotomous_second_order_hand_example() {
        // path of 5, leader 3, minimal-index arm 2, probe set {1, 2}
        let graph = UnimodalGraph::path(5);
        let g = Family::GaussianUnitVariance;
        let pulls = vec![4u64, 9, 50, 9, 9];
        let means = [0.1, 0.6, 0.9, 0.55, 0.2];
        let mut s = PolicyState::<f64> {
            reward_sums: (0..5).map(|i| means[i] * pulls[i] as f64).collect(),
            t: pulls.iter().sum(),
            pulls,
            leader_counts: vec![0; 5],
            dichotomy: None, // tree fallback: probe set = {1, 2}
        };
        let a_ul = argmin_by(neighborhood_candidates(&graph, 3), |a| imed_index(&s, g, a));
        assert_eq!(a_ul, 2);
        assert_abs_diff_eq!(
            second_order_index(&s, g, 1, 2),
            1.8862943611198906,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            second_order_index(&s, g, 2, 2),
            2.1972245773362196,
            epsilon = 1e-12
        );
        assert_eq!(dimed_ub_choose(&mut s, &graph, g), 1);
    }

    #[test]
    fn forcing_schedule_arithmetic() {
        let graph = UnimodalGraph::path(5); // degree 2
        let g = Family::GaussianUnitVariance;
        let mut s = PolicyState::<f64> {
            pulls: vec![5; 5],
            reward_sums: vec![0.5, 1.0, 4.0, 1.0, 0.5],
            t: 25,
            leader_counts: vec![0; 5],
            dichotomy: None,
        };
        // counts 1 and 4 force the leader, counts 2 and 3 explore
        assert_eq!(osub_choose(&mut s, &graph, g, 0.0), 3);
        assert_ne!(osub_choose(&mut s, &graph, g, 0.0), 3);
        assert_ne!(osub_choose(&mut s, &graph, g, 0.0), 3);
        assert_eq!(osub_choose(&mut s, &graph, g, 0.0), 3);
        assert_eq!(s.leader_counts[2], 4);
    }

    #[test]
    fn forcing_budget_values() {
        assert_eq!(osub_budget(1, 0.0f64), 0.0);
        assert_abs_diff_eq!(osub_budget(10, 0.0f64), 10.0f64.ln(), epsilon = 1e-15);
        // below e the loglog term is clamped to zero
        assert_abs_diff_eq!(osub_budget(2, 5.0f64), 2.0f64.ln(), epsilon = 1e-15);
        assert_abs_diff_eq!(
            osub_budget(10, 1.0f64),
            10.0f64.ln() + 10.0f64.ln().ln(),
            epsilon = 1e-15
        );
    }

    #[test]
    fn neighbor_confidence_race() {
        // f = 2 budget, neighbours N = (2, 8) with means (0.5, 0.6):
        // u_1 = 0.5 + sqrt(2) beats u_2 = 0.6 + sqrt(0.5)
        let u1 = ucb_solve(Family::GaussianUnitVariance, 0.5, 2, 2.0 + 2.0f64.ln());
        let u2 = ucb_solve(Family::GaussianUnitVariance, 0.6, 8, 2.0 + 8.0f64.ln());
        assert_abs_diff_eq!(u1, 1.9142135623730951, epsilon = 1e-12);
        assert_abs_diff_eq!(u2, 1.3071067811865476, epsilon = 1e-12);
        assert!(u1 > u2);
    }

    #[test]
    fn unstructured_baseline_scans_everything() {
        let g = Family::GaussianUnitVariance;
        let s = state3([5, 5, 5], [0.2, 0.8, 0.5]);
        assert_eq!(imed_choose(&s, g), 2);
        let s = state3([0, 5, 0], [0.0, 0.8, 0.0]);
        assert_eq!(imed_choose(&s, g), 1); // lowest-id unpulled arm
        let s = state3([4, 4, 4], [0.5, 0.5, 0.5]);
        assert_eq!(imed_choose(&s, g), 1); // full tie: lowest id
    }

    #[test]
    fn update_bookkeeping() {
        let mut s = PolicyState::<f64>::new(3);
        s.update(2, 0.7);
        assert_eq!(s.mean(2), 0.7);
        s.update(2, 0.3);
        assert_abs_diff_eq!(s.mean(2), 0.5, epsilon = 1e-15);
        assert_eq!(s.t, 2);
        assert_eq!(s.pulls.iter().sum::<u64>(), 2);
        assert_eq!(s.leader_counts, vec![0, 0, 0]);
    }

    #[test]
    fn policy_names_round_trip() {
        for kind in PolicyKind::ALL {
            assert_eq!(kind.name().parse::<PolicyKind>().unwrap(), kind);
        }
        assert!("ucb1".parse::<PolicyKind>().is_err());
    }

    #[test]
    fn choices_are_deterministic() {
        let graph = UnimodalGraph::path(3);
        let g = Family::GaussianUnitVariance;
        for kind in PolicyKind::ALL {
            let policy = Policy::<f64>::new(kind);
            let mut a = policy.init_state(&graph);
            let mut b = policy.init_state(&graph);
            for (arm, reward) in [(1, 0.2), (2, 0.9), (3, 0.4), (2, 0.7)] {
                a.update(arm, reward);
                b.update(arm, reward);
            }
            assert_eq!(
                policy.choose(&mut a, &graph, g),
                policy.choose(&mut b, &graph, g)
            );
        }
    }
}
