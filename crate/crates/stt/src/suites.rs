//! Randomized property suites. Each trial builds its own instance from
//! `seed + trial`, so results do not depend on thread scheduling.

use rand::Rng;
use rayon::prelude::*;
use stt_core::analysis::{amortized_check, DEFAULT_SCALE};
use stt_core::bst::ClassicSplay;
use stt_core::fix::{fix, fix_improved, steinerize};
use stt_core::opt::{ptas, FrequencyMap};
use stt_core::rotdist::{
    marks_consistent, reduce_cut_pointer, rotation_bound, transform, transform_pointer,
};
use stt_core::splay::{branching_nodes, SplayObserver, SplayTT};
use stt_core::{path, NodeId, PointerMachine, Rotation, SearchTree};

use crate::gen::{random_kcut, random_stt, random_tree, rng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Rotations keep trees valid and boundary tables exact.
    Stt,
    /// k-cut repair meets its depth bounds.
    Kcut,
    /// The 2-cut test agrees with the definition of Steiner-closed.
    Steiner,
    /// Rotation scripts and the pointer pipeline reach their targets within
    /// bounds.
    Rotdist,
    /// SplayTT safety, and equality with classic splaying on paths.
    Splay,
    /// Per-search amortized bound against a fixed reference tree.
    Potential,
}

#[derive(Clone, Debug)]
pub struct SuiteReport {
    pub suite: Suite,
    pub trials: usize,
    /// `(trial, message)` for every failed trial, by trial index.
    pub failures: Vec<(usize, String)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn run(suite: Suite, max_n: usize, trials: usize, seed: u64) -> SuiteReport {
    let max_n = max_n.max(1);
    let mut failures: Vec<(usize, String)> = (0..trials)
        .into_par_iter()
        .filter_map(|i| {
            let mut r = rng(seed.wrapping_add(i as u64));
            let n = r.random_range(1..=max_n);
            trial(suite, &mut r, n).err().map(|e| (i, e))
        })
        .collect();
    failures.sort_by_key(|f| f.0);
    SuiteReport {
        suite,
        trials,
        failures,
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn trial(suite: Suite, r: &mut impl Rng, n: usize) -> Result<(), String> {
    match suite {
        Suite::Stt => stt_trial(r, n),
        Suite::Kcut => kcut_trial(r, n),
        Suite::Steiner => {
            let s = random_tree(r, n);
            let t = random_stt(r, &s);
            ensure!(
                t.is_steiner_closed() == t.steiner_closed_direct(),
                "verdicts differ on n={n}"
            );
            Ok(())
        }
        Suite::Rotdist => rotdist_trial(r, n),
        Suite::Splay => splay_trial(r, n),
        Suite::Potential => potential_trial(r, n),
    }
}

fn stt_trial(r: &mut impl Rng, n: usize) -> Result<(), String> {
    let s = random_tree(r, n);
    let mut t = random_stt(r, &s);
    for _ in 0..4 * n {
        let x = NodeId::new(r.random_range(0..n));
        if t.parent(x).is_none() {
            continue;
        }
        let before = t.clone();
        let rot = t.rotate(x).map_err(|e| e.to_string())?;
        ensure!(t.validate_stt(), "invalid tree after rotating {x}");
        ensure!(
            t.boundaries_consistent(),
            "stale boundary table after rotating {x}"
        );
        let mut undo = t.clone();
        undo.rotate(rot.parent).map_err(|e| e.to_string())?;
        ensure!(
            undo == before,
            "rotating {} back did not restore the tree",
            rot.parent
        );
    }
    Ok(())
}

fn kcut_trial(r: &mut impl Rng, n: usize) -> Result<(), String> {
    let s = random_tree(r, n);
    let t = random_stt(r, &s);
    let before = t.depths();
    for k in 2..=6 {
        let out = fix_improved(&t, k).map_err(|e| e.to_string())?;
        ensure!(
            out.validate_stt() && out.is_k_cut(k).unwrap(),
            "improved repair output not {k}-cut"
        );
        let half = k / 2;
        ensure!(
            out.depths()
                .iter()
                .zip(&before)
                .all(|(&a, &b)| a * half <= b * (half + 1)),
            "improved repair exceeds its depth bound for k={k}"
        );
        if k >= 3 {
            let out = fix(&t, k).map_err(|e| e.to_string())?;
            let q = k.div_ceil(2) - 1;
            ensure!(out.is_k_cut(k).unwrap(), "repair output not {k}-cut");
            ensure!(
                out.depths()
                    .iter()
                    .zip(&before)
                    .all(|(&a, &b)| a * q <= b * (q + 1)),
                "repair exceeds its depth bound for k={k}"
            );
        }
    }
    Ok(())
}

fn rotdist_trial(r: &mut impl Rng, n: usize) -> Result<(), String> {
    let s = random_tree(r, n);
    for k in 2..=4.min(n.max(2)) {
        let a = random_kcut(r, &s, k);
        let b = random_kcut(r, &s, k);
        let script = transform(&a, &b, k).map_err(|e| e.to_string())?;
        ensure!(
            script.len() <= rotation_bound(n, k),
            "script of {} exceeds bound for k={k}",
            script.len()
        );
        let mut replay = a.clone();
        let mut all_kcut = true;
        script
            .apply_with(&mut replay, |t| all_kcut &= t.is_k_cut(k).unwrap())
            .map_err(|e| e.to_string())?;
        ensure!(all_kcut, "intermediate tree not {k}-cut");
        ensure!(replay == b, "replay missed the target for k={k}");

        let mut m = PointerMachine::new(a.clone());
        let mut marks_ok = true;
        reduce_cut_pointer(&mut m, k, |m, marks| {
            marks_ok &= marks_consistent(m, marks, k)
        })
        .map_err(|e| e.to_string())?;
        ensure!(marks_ok, "marking invariants broken for k={k}");
        let mut m = PointerMachine::new(a);
        let report = transform_pointer(&mut m, &b, k).map_err(|e| e.to_string())?;
        ensure!(
            m.tree() == &b,
            "pointer pipeline missed the target for k={k}"
        );
        for level in report.source_levels.iter().chain(&report.target_levels) {
            ensure!(
                level.moves <= 2 * n as u64,
                "level {} used {} moves",
                level.k,
                level.moves
            );
            ensure!(
                level.rotations <= n.saturating_sub(level.k) as u64,
                "level {} over rotation budget",
                level.k
            );
        }
    }
    Ok(())
}

struct ClosedAfterEveryRotation(bool);

impl SplayObserver for ClosedAfterEveryRotation {
    fn rotated(&mut self, tree: &SearchTree<'_>, _: &Rotation) {
        self.0 &= tree.is_steiner_closed();
    }
}

fn splay_trial(r: &mut impl Rng, n: usize) -> Result<(), String> {
    let p = path(n);
    let start = random_stt(r, &p);
    let mut classic = ClassicSplay::from_parents(start.parents());
    let mut splay = SplayTT::new(start).map_err(|e| e.to_string())?;
    for i in 0..4 * n {
        let x = NodeId::new(r.random_range(0..n));
        splay.search(x).map_err(|e| e.to_string())?;
        classic.splay(x);
        ensure!(
            splay.tree().parents() == classic.parents().as_slice(),
            "path search {i} diverged from classic splay"
        );
    }

    let s = random_tree(r, n);
    let mut splay = SplayTT::new(random_kcut(r, &s, 2)).map_err(|e| e.to_string())?;
    for _ in 0..4 * n {
        let x = NodeId::new(r.random_range(0..n));
        let mut watch = ClosedAfterEveryRotation(true);
        let stats = splay
            .search_with(x, &mut watch)
            .map_err(|e| e.to_string())?;
        ensure!(
            watch.0,
            "tree not Steiner-closed after a rotation while searching {x}"
        );
        ensure!(
            splay.tree().root() == x,
            "{x} is not the root after its search"
        );
        ensure!(
            branching_nodes(splay.tree(), x).is_empty(),
            "branching node left on the path of {x}"
        );
        ensure!(
            stats.rotations <= 2 * stats.depth as u64,
            "too many rotations searching {x}"
        );
        ensure!(
            stats.moves <= 4 * stats.depth as u64,
            "too many pointer moves searching {x}"
        );
    }
    Ok(())
}

fn potential_trial(r: &mut impl Rng, n: usize) -> Result<(), String> {
    let s = random_tree(r, n);
    let p = FrequencyMap::new((0..n).map(|_| r.random_range(0..10)).collect());
    let reference = steinerize(&ptas(&s, 1, &p).map_err(|e| e.to_string())?.0);
    let mut splay = SplayTT::new(random_kcut(r, &s, 2)).map_err(|e| e.to_string())?;
    let seq: Vec<NodeId> = (0..20 * n)
        .map(|_| NodeId::new(r.random_range(0..n)))
        .collect();
    let report =
        amortized_check(&mut splay, &seq, &reference, DEFAULT_SCALE).map_err(|e| e.to_string())?;
    ensure!(report.holds(), "amortized bound violated: {report:?}");
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_suite_passes_small() {
        for suite in [
            Suite::Stt,
            Suite::Kcut,
            Suite::Steiner,
            Suite::Rotdist,
            Suite::Splay,
            Suite::Potential,
        ] {
            let report = run(suite, 10, 20, 1);
            assert!(report.passed(), "{suite:?}: {:?}", report.failures);
        }
    }
}
