//! Unimodal graph structure: neighbourhoods, tree surgery, and the dichotomous
//! subset sequence driving second-order exploration on paths.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

/// Arms are numbered `1..=A` everywhere in this crate, matching the path
/// arithmetic used by the dichotomous subsets.
pub type ArmId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GraphKind {
    Path,
    Tree,
    General,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph needs at least one arm")]
    Empty,
    #[error("arm id {0} outside 1..={1}")]
    BadArmId(ArmId, usize),
    #[error("self loop at arm {0}")]
    SelfLoop(ArmId),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(ArmId, ArmId),
    #[error("edge list is not a tree on {arms} arms ({edges} edges, connected: {connected})")]
    NotATree {
        arms: usize,
        edges: usize,
        connected: bool,
    },
}

/// Why a mean vector fails the unimodality check.
#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum UnimodalViolation {
    #[error("duplicate maximum")]
    DuplicateMaximum,
    #[error("no strictly increasing path from arm {arm} to the best arm")]
    NoIncreasingPath { arm: ArmId },
}

/// Undirected graph over arms. Immutable once built; adjacency lists are
/// kept sorted so every iteration order is deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnimodalGraph {
    arm_count: usize,
    adjacency: Vec<Vec<ArmId>>,
    kind: GraphKind,
}

impl UnimodalGraph {
    /// Path `1 - 2 - ... - arm_count`.
    pub fn path(arm_count: usize) -> Self {
        assert!(arm_count >= 1, "path needs at least one arm");
        let mut adjacency = vec![Vec::new(); arm_count];
        for a in 1..arm_count {
            adjacency[a - 1].push(a + 1);
            adjacency[a].push(a);
        }
        UnimodalGraph {
            arm_count,
            adjacency,
            kind: GraphKind::Path,
        }
    }

    /// Tree from an explicit edge list; the arm count is the largest id
    /// mentioned. Fails unless the edges form a connected acyclic graph
    /// covering `1..=A`.
    pub fn tree(edges: &[(ArmId, ArmId)]) -> Result<Self, GraphError> {
        let arm_count = edges
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .max()
            .ok_or(GraphError::Empty)?;
        let g = Self::from_edges(arm_count, edges)?;
        let connected = g.component_of(1, None).len() == arm_count;
        if edges.len() != arm_count - 1 || !connected {
            return Err(GraphError::NotATree {
                arms: arm_count,
                edges: edges.len(),
                connected,
            });
        }
        Ok(UnimodalGraph {
            kind: GraphKind::Tree,
            ..g
        })
    }

    /// Arbitrary undirected graph; only basic well-formedness is enforced.
    pub fn from_edges(arm_count: usize, edges: &[(ArmId, ArmId)]) -> Result<Self, GraphError> {
        if arm_count == 0 {
            return Err(GraphError::Empty);
        }
        let mut adjacency = vec![Vec::new(); arm_count];
        for &(u, v) in edges {
            for id in [u, v] {
                if id == 0 || id > arm_count {
                    return Err(GraphError::BadArmId(id, arm_count));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if adjacency[u - 1].contains(&v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u - 1].push(v);
            adjacency[v - 1].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(UnimodalGraph {
            arm_count,
            adjacency,
            kind: GraphKind::General,
        })
    }

    pub fn arm_count(&self) -> usize {
        self.arm_count
    }

    pub fn kind(&self) -> GraphKind {
        self.kind
    }

    /// `1..=A`.
    pub fn arms(&self) -> impl Iterator<Item = ArmId> {
        1..=self.arm_count
    }

    /// Arms adjacent to `a`, sorted ascending; never contains `a` itself.
    pub fn neighbors(&self, a: ArmId) -> &[ArmId] {
        assert!(a >= 1 && a <= self.arm_count, "arm id {a} out of range");
        &self.adjacency[a - 1]
    }

    pub fn is_edge(&self, u: ArmId, v: ArmId) -> bool {
        u >= 1 && u <= self.arm_count && self.adjacency[u - 1].contains(&v)
    }

    /// Maximum neighbourhood size over all arms.
    pub fn max_degree(&self) -> usize {
        self.adjacency
            .iter()
            .map(Vec::len)
            .max()
            .expect("graph is nonempty")
    }

    /// Checks that the argmax of `means` is unique and that every arm has a
    /// strictly mean-increasing path to it. The reachability sweep walks
    /// backwards from the best arm along strictly descending edges.
    pub fn validate_unimodal<S: Scalar>(&self, means: &[S]) -> Result<(), UnimodalViolation> {
        assert_eq!(
            means.len(),
            self.arm_count,
            "means length must match arm count"
        );
        let mut best = 1;
        for a in 2..=self.arm_count {
            if means[a - 1] > means[best - 1] {
                best = a;
            }
        }
        if means.iter().filter(|&&m| m == means[best - 1]).count() > 1 {
            return Err(UnimodalViolation::DuplicateMaximum);
        }
        let mut reached = vec![false; self.arm_count];
        reached[best - 1] = true;
        let mut queue = vec![best];
        while let Some(u) = queue.pop() {
            for &v in self.neighbors(u) {
                if !reached[v - 1] && means[v - 1] < means[u - 1] {
                    reached[v - 1] = true;
                    queue.push(v);
                }
            }
        }
        match reached.iter().position(|&r| !r) {
            None => Ok(()),
            Some(idx) => Err(UnimodalViolation::NoIncreasingPath { arm: idx + 1 }),
        }
    }

    /// Connected component of `a_prime` once the edge `(a_prime, hub)` is
    /// removed; contains `a_prime` and never `hub`.
    ///
    /// Panics unless the graph is a tree (paths included) and the pair is an
    /// actual edge.
    pub fn subtree_after_cut(&self, a_prime: ArmId, hub: ArmId) -> Vec<ArmId> {
        assert!(
            matches!(self.kind, GraphKind::Path | GraphKind::Tree),
            "subtree_after_cut needs a tree"
        );
        assert!(
            self.is_edge(a_prime, hub),
            "({a_prime}, {hub}) is not an edge"
        );
        self.component_of(a_prime, Some((a_prime, hub)))
    }

    /// BFS component of `start`, optionally ignoring one undirected edge.
    fn component_of(&self, start: ArmId, cut: Option<(ArmId, ArmId)>) -> Vec<ArmId> {
        let mut seen = vec![false; self.arm_count];
        seen[start - 1] = true;
        let mut queue = vec![start];
        while let Some(u) = queue.pop() {
            for &v in self.neighbors(u) {
                let severed = match cut {
                    Some((x, y)) => (u == x && v == y) || (u == y && v == x),
                    None => false,
                };
                if !severed && !seen[v - 1] {
                    seen[v - 1] = true;
                    queue.push(v);
                }
            }
        }
        (1..=self.arm_count).filter(|&a| seen[a - 1]).collect()
    }
}

/// Recursive interval thinning: intervals shorter than 4 are kept whole,
/// otherwise the endpoints are kept and the middle half is recursed into.
///
/// Panics unless `lo < hi`.
pub fn dichotomous_subset(lo: ArmId, hi: ArmId) -> BTreeSet<ArmId> {
    assert!(lo < hi, "dichotomous_subset needs lo < hi");
    let mut set = BTreeSet::new();
    let (mut lo, mut hi) = (lo, hi);
    loop {
        if hi - lo < 4 {
            set.extend(lo..=hi);
            return set;
        }
        set.insert(lo);
        set.insert(hi);
        let step = (hi - lo) / 4;
        lo += step;
        hi -= step;
    }
}

/// Dynamic sequence of probe subsets for second-order exploration on a path.
///
/// Keeps the current ordered subset together with the stack of previous
/// subsets and their anchor arms: a leader already on the anchor stack pops
/// back to it, a new leader inside the current subset refines the subset
/// around itself and pushes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DichotomyState {
    arm_count: usize,
    current_set: BTreeSet<ArmId>,
    set_list: Vec<BTreeSet<ArmId>>,
    anchor_list: Vec<ArmId>,
}

impl DichotomyState {
    pub fn new(arm_count: usize) -> Self {
        assert!(arm_count >= 2, "dichotomy needs at least two arms");
        let current = dichotomous_subset(1, arm_count);
        let anchor = lower_median(&current);
        DichotomyState {
            arm_count,
            set_list: vec![current.clone()],
            anchor_list: vec![anchor],
            current_set: current,
        }
    }

    pub fn current_set(&self) -> &BTreeSet<ArmId> {
        &self.current_set
    }

    pub fn anchors(&self) -> &[ArmId] {
        &self.anchor_list
    }

    /// One step of the dynamic subset recursion driven by the current leader.
    /// Leaders outside the current subset leave the state untouched.
    pub fn update(&mut self, leader: ArmId) {
        debug_assert!(leader >= 1 && leader <= self.arm_count);
        if !self.current_set.contains(&leader) {
            return;
        }
        if let Some(i) = self.anchor_list.iter().position(|&a| a == leader) {
            self.anchor_list.truncate(i + 1);
            self.set_list.truncate(i + 1);
            self.current_set = self.set_list[i].clone();
        } else {
            let delta = self
                .current_set
                .iter()
                .filter(|&&a| a != leader)
                .map(|&a| a.abs_diff(leader))
                .min()
                .expect("current subset holds more than the leader");
            let lo = leader.saturating_sub(delta).max(1);
            let hi = (leader + delta).min(self.arm_count);
            if lo < hi {
                self.current_set.extend(dichotomous_subset(lo, hi));
            }
            self.set_list.push(self.current_set.clone());
            self.anchor_list.push(leader);
        }
        debug_assert_eq!(self.anchor_list.len(), self.set_list.len());
        debug_assert!(self
            .anchor_list
            .iter()
            .zip(&self.set_list)
            .all(|(a, s)| s.contains(a)));
    }

    /// Probe set relative to the minimal-index arm: `a_underline` plus the
    /// side of the current subset that lies beyond it, away from the leader.
    ///
    /// Panics if `a_underline == leader`.
    pub fn second_order_set(&self, a_underline: ArmId, leader: ArmId) -> BTreeSet<ArmId> {
        assert_ne!(
            a_underline, leader,
            "second_order_set needs a_underline != leader"
        );
        let mut out: BTreeSet<ArmId> = if a_underline < leader {
            self.current_set
                .iter()
                .copied()
                .filter(|&a| a < a_underline)
                .collect()
        } else {
            self.current_set
                .iter()
                .copied()
                .filter(|&a| a > a_underline)
                .collect()
        };
        out.insert(a_underline);
        out
    }
}

/// Lower middle element of an ordered nonempty set.
fn lower_median(set: &BTreeSet<ArmId>) -> ArmId {
    *set.iter()
        .nth((set.len() - 1) / 2)
        .expect("median of nonempty set")
}
