//! Potential-function bookkeeping for SplayTT against a fixed reference
//! tree, and the checks built on it.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::node::NodeId;
use crate::splay::{SplayObserver, SplayTT, StepKind};
use crate::stt::{same_space, Rotation, SearchTree};

pub const DEFAULT_SCALE: i64 = 4;

/// Maintains `min_{y in T_x} depth_R(y)` for every `x` under rotations.
/// The node potential is its negation, and the tree potential is `d` times
/// the sum of node potentials.
#[derive(Clone, Debug)]
pub struct PotentialTracker {
    depth_r: Vec<usize>,
    sub_min: Vec<usize>,
    scale: i64,
    sum: i64,
}

impl PotentialTracker {
    pub fn new(tree: &SearchTree<'_>, reference: &SearchTree<'_>, scale: i64) -> Result<Self> {
        if !same_space(tree.space(), reference.space()) {
            return Err(Error::MismatchedSpace);
        }
        let depth_r = reference.depths();
        let mut sub_min = depth_r.clone();
        for x in tree.preorder().into_iter().rev() {
            if let Some(p) = tree.parent(x) {
                sub_min[p.index()] = sub_min[p.index()].min(sub_min[x.index()]);
            }
        }
        let sum = sub_min.iter().map(|&v| v as i64).sum();
        Ok(PotentialTracker {
            depth_r,
            sub_min,
            scale,
            sum,
        })
    }

    pub fn depth_r(&self, x: NodeId) -> usize {
        self.depth_r[x.index()]
    }

    pub fn node_potential(&self, x: NodeId) -> i64 {
        -(self.sub_min[x.index()] as i64)
    }

    /// Sum of node potentials (unscaled).
    pub fn node_sum(&self) -> i64 {
        -self.sum
    }

    pub fn total(&self) -> i64 {
        -self.scale * self.sum
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Updates the two nodes whose subtrees changed; `tree` is the tree after
    /// `rotation`.
    pub fn rotated(&mut self, tree: &SearchTree<'_>, rotation: &Rotation) {
        for v in [rotation.parent, rotation.node] {
            let fresh = tree
                .children(v)
                .iter()
                .map(|c| self.sub_min[c.index()])
                .fold(self.depth_r[v.index()], usize::min);
            self.sum += fresh as i64 - self.sub_min[v.index()] as i64;
            self.sub_min[v.index()] = fresh;
        }
    }
}

/// The tree potential computed from scratch.
pub fn potential(tree: &SearchTree<'_>, reference: &SearchTree<'_>, scale: i64) -> Result<i64> {
    let depth_r = reference.depths();
    if !same_space(tree.space(), reference.space()) {
        return Err(Error::MismatchedSpace);
    }
    Ok(tree
        .space()
        .nodes()
        .map(|x| {
            -scale
                * tree
                    .subtree_nodes(x)
                    .iter()
                    .map(|y| depth_r[y.index()] as i64)
                    .min()
                    .unwrap_or(0)
        })
        .sum())
}

/// Outcome of checking every search of a sequence against the amortized
/// bound `depth_T(x) + ΔΦ <= 6d·depth_R(x) + d`, which is
/// `24·depth_R(x) + 4` for `d = 4`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AmortizedReport {
    pub searches: usize,
    /// Searches exceeding the amortized bound.
    pub violations: usize,
    /// Elementary steps whose potential change exceeds `3Δφ(x)` (ZIG) or
    /// `3Δφ(x) - 1` (ZIG-ZIG, ZIG-ZAG), in node-potential units.
    pub step_violations: usize,
    /// Splays whose total change exceeds `3Δφ(x) - z`.
    pub splay_violations: usize,
    /// Searches with `4z < depth_T(x) - 4`.
    pub z_violations: usize,
    /// Largest `(depth_T(x) + ΔΦ) / depth_R(x)`.
    pub max_ratio: f64,
    /// Largest `depth_T(x) + ΔΦ - 6d·depth_R(x)`; at most `d` when the bound
    /// holds.
    pub max_excess: i64,
    /// Sum of `depth_T(x)` over all searches.
    pub total_depth: u64,
}

impl AmortizedReport {
    pub fn holds(&self) -> bool {
        self.violations == 0
            && self.step_violations == 0
            && self.splay_violations == 0
            && self.z_violations == 0
    }
}

/// Observer that checks the elementary-step and per-splay potential bounds.
struct Checker<'r> {
    tracker: &'r mut PotentialTracker,
    step_start: (i64, i64),
    splay_start: (i64, i64),
    step_violations: usize,
    splay_violations: usize,
    z: usize,
}

impl SplayObserver for Checker<'_> {
    fn rotated(&mut self, tree: &SearchTree<'_>, rotation: &Rotation) {
        self.tracker.rotated(tree, rotation);
    }

    fn step_started(&mut self, _: &SearchTree<'_>, x: NodeId, _: StepKind) {
        self.step_start = (self.tracker.node_sum(), self.tracker.node_potential(x));
    }

    fn step_finished(&mut self, _: &SearchTree<'_>, x: NodeId, kind: StepKind) {
        let change = self.tracker.node_sum() - self.step_start.0;
        let gain = self.tracker.node_potential(x) - self.step_start.1;
        let bound = 3 * gain - i64::from(kind != StepKind::Zig);
        if change > bound {
            self.step_violations += 1;
        }
    }

    fn splay_started(&mut self, _: &SearchTree<'_>, x: NodeId, _: Option<NodeId>) {
        self.splay_start = (self.tracker.node_sum(), self.tracker.node_potential(x));
    }

    fn splay_finished(&mut self, _: &SearchTree<'_>, x: NodeId, z: usize) {
        let change = self.tracker.node_sum() - self.splay_start.0;
        let gain = self.tracker.node_potential(x) - self.splay_start.1;
        if change > 3 * gain - z as i64 {
            self.splay_violations += 1;
        }
        self.z += z;
    }
}

/// Serves `sequence` on `splay`, checking the amortized bound of every
/// search against the fixed reference tree.
pub fn amortized_check(
    splay: &mut SplayTT<'_>,
    sequence: &[NodeId],
    reference: &SearchTree<'_>,
    scale: i64,
) -> Result<AmortizedReport> {
    let mut tracker = PotentialTracker::new(splay.tree(), reference, scale)?;
    let mut report = AmortizedReport::default();
    for &x in sequence {
        let before = tracker.total();
        let mut checker = Checker {
            tracker: &mut tracker,
            step_start: (0, 0),
            splay_start: (0, 0),
            step_violations: 0,
            splay_violations: 0,
            z: 0,
        };
        let stats = splay.search_with(x, &mut checker)?;
        let (steps, splays, z) = (checker.step_violations, checker.splay_violations, checker.z);
        let depth = stats.depth as i64;
        let depth_r = tracker.depth_r(x) as i64;
        let lhs = depth + tracker.total() - before;
        let excess = lhs - 6 * scale * depth_r;
        report.searches += 1;
        report.total_depth += stats.depth as u64;
        report.step_violations += steps;
        report.splay_violations += splays;
        if excess > scale {
            report.violations += 1;
        }
        if 4 * (z as i64) < depth - 4 {
            report.z_violations += 1;
        }
        report.max_excess = if report.searches == 1 {
            excess
        } else {
            report.max_excess.max(excess)
        };
        report.max_ratio = report.max_ratio.max(lhs as f64 / depth_r as f64);
    }
    Ok(report)
}

/// Totals of one static-optimality run.
#[derive(Clone, Debug, PartialEq)]
pub struct StaticOptimality {
    pub n: usize,
    pub m: usize,
    /// Model cost of SplayTT (moves + rotations + searches).
    pub cost_splay: u64,
    /// `Σ depth_T(x_i)` at the time of each search.
    pub total_depth: u64,
    /// `Σ depth_R(x_i)`.
    pub cost_r: u64,
    /// `24·cost_R + 4m + 4n²`.
    pub bound: u64,
    /// `24·cost_R + 4m + 4·Σ_x depth_R(x)`.
    pub tight_bound: u64,
    /// Whether every node occurs in the sequence.
    pub covers_all: bool,
    pub amortized: AmortizedReport,
}

impl StaticOptimality {
    pub fn holds(&self) -> bool {
        self.cost_splay <= self.bound && self.total_depth <= self.bound
    }

    pub fn tight_holds(&self) -> bool {
        self.total_depth <= self.tight_bound && self.cost_splay <= self.tight_bound
    }
}

/// Serves `sequence` from `start` and compares the cost with the fixed
/// Steiner-closed reference tree `reference`.
pub fn static_optimality(
    start: SearchTree<'_>,
    sequence: &[NodeId],
    reference: &SearchTree<'_>,
) -> Result<StaticOptimality> {
    if !reference.is_steiner_closed() {
        return Err(Error::NotSteinerClosed);
    }
    let n = start.len();
    let mut splay = SplayTT::new(start)?;
    let amortized = amortized_check(&mut splay, sequence, reference, DEFAULT_SCALE)?;
    let depth_r = reference.depths();
    let cost_r: u64 = sequence.iter().map(|x| depth_r[x.index()] as u64).sum();
    let m = sequence.len() as u64;
    let mut seen = vec![false; n];
    for x in sequence {
        seen[x.index()] = true;
    }
    let sum_r: u64 = depth_r.iter().map(|&d| d as u64).sum();
    Ok(StaticOptimality {
        n,
        m: sequence.len(),
        cost_splay: splay.ledger().model_cost(),
        total_depth: amortized.total_depth,
        cost_r,
        bound: 24 * cost_r + 4 * m + 4 * (n * n) as u64,
        tight_bound: 24 * cost_r + 4 * m + 4 * sum_r,
        covers_all: seen.iter().all(|&s| s),
        amortized,
    })
}
