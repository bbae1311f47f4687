//! Acceptance suite: one PASS/FAIL line per criterion. Every bound is
//! checked as an exact integer inequality unless noted.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use stt::enumerate::{all_search_trees, unlabelled_trees};
use stt::gen::{
    random_kcut, random_steiner_closed, random_stt, random_tree, rng, sequence, Workload,
};
use stt::reference;
use stt_core::analysis::{amortized_check, static_optimality, DEFAULT_SCALE};
use stt_core::bst::ClassicSplay;
use stt_core::fix::fix_improved;
use stt_core::opt::{brute_opt, static_cost, FrequencyMap, KCutDp, BRUTE_FORCE_CAP};
use stt_core::rotdist::{marks_consistent, reduce_cut_pointer, transform, transform_pointer};
use stt_core::splay::{branching_nodes_direct, SplayObserver, SplayTT};
use stt_core::{path, NodeId, PointerMachine, Rotation, SearchTree, UnrootedTree};

/// A criterion's verdict plus a short summary of what was measured.
type Outcome = Result<String, String>;

type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let holds: bool = $cond;
        if !holds {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: impl ToString) -> String {
    e.to_string()
}

/// Runs `trial` for every index in parallel and reports the first failure
/// by index.
fn all_trials<T: Send>(
    count: usize,
    trial: impl Fn(usize) -> Result<T, String> + Sync,
) -> Result<Vec<T>, String> {
    let results: Vec<Result<T, String>> = (0..count)
        .into_par_iter()
        .map(|i| trial(i).map_err(|e| format!("trial {i}: {e}")))
        .collect();
    results.into_iter().collect()
}

/// Closed form of the rotation bound for `n >= k`.
fn closed_form_bound(n: usize, k: usize) -> usize {
    (2 * k - 1) * n + 1 - (k + 1) * k
}

// 1. (1 + 1/t)-approximation of the optimal static cost.
fn ptas_guarantee() -> Outcome {
    const TREES_PER_N: usize = 200;
    const MAPS: usize = 20;
    let started = Instant::now();
    let mut spaces: Vec<(UnrootedTree, u64)> = Vec::new();
    for n in 1..=8 {
        spaces.extend(unlabelled_trees(n).into_iter().map(|s| (s, n as u64)));
        let mut r = rng(1000 + n as u64);
        spaces
            .extend((0..TREES_PER_N).map(|i| (random_tree(&mut r, n), 1000 * n as u64 + i as u64)));
    }
    let checked = all_trials(spaces.len(), |i| {
        let (space, seed) = &spaces[i];
        let n = space.len();
        let dps: Vec<KCutDp<'_>> = (1..=3)
            .map(|t| KCutDp::new(space, 2 * t))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let mut r = rng(*seed);
        for _ in 0..MAPS {
            let p = FrequencyMap::new(
                (0..n)
                    .map(|_| {
                        if r.random_bool(0.2) {
                            0
                        } else {
                            r.random_range(1..50)
                        }
                    })
                    .collect(),
            );
            let (_, opt) = brute_opt(space, &p, BRUTE_FORCE_CAP).map_err(err)?;
            for (t, dp) in (1..=3u64).zip(&dps) {
                let (tree, cost) = dp.solve(&p).map_err(err)?;
                ensure!(
                    tree.is_k_cut(2 * t as usize).unwrap(),
                    "t={t}: result not {}-cut",
                    2 * t
                );
                ensure!(
                    static_cost(&tree, &p) == cost,
                    "t={t}: reported cost differs from the tree's cost"
                );
                ensure!(
                    cost * t <= (t + 1) * opt,
                    "t={t}: cost {cost} exceeds (1+1/t)·{opt}"
                );
                ensure!(cost >= opt, "t={t}: cost {cost} beats the optimum {opt}");
            }
        }
        Ok(())
    })?;
    let elapsed = started.elapsed();
    ensure!(
        elapsed < Duration::from_secs(60),
        "took {elapsed:.1?}, target is under 60 s"
    );
    Ok(format!(
        "{} trees x {MAPS} maps x t in 1..=3 in {elapsed:.1?}",
        checked.len()
    ))
}

// 2. k-cut repair stretches depths by at most 1 + 1/floor(k/2).
fn repair_depth_bound() -> Outcome {
    let checked = all_trials(500, |i| {
        let mut r = rng(2000 + i as u64);
        let n = r.random_range(1..=20);
        let space = random_tree(&mut r, n);
        let t = random_stt(&mut r, &space);
        let before = t.depths();
        for k in [2, 3, 4, 6] {
            let out = fix_improved(&t, k).map_err(err)?;
            ensure!(
                out.validate_stt() && out.is_k_cut(k).unwrap(),
                "k={k}: output not a {k}-cut tree"
            );
            let half = k / 2;
            for (x, (&a, &b)) in out.depths().iter().zip(&before).enumerate() {
                ensure!(
                    a * half <= b * (half + 1),
                    "k={k}: node {x} went from depth {b} to {a}"
                );
            }
        }
        Ok(())
    })?;
    Ok(format!(
        "{} pairs, n <= 20, k in {{2,3,4,6}}",
        checked.len()
    ))
}

// 3. Rotation scripts between Steiner-closed trees.
fn rotation_distance() -> Outcome {
    let worst = all_trials(500, |i| {
        let mut r = rng(3000 + i as u64);
        let n = r.random_range(4..=15);
        let space = random_tree(&mut r, n);
        let a = random_steiner_closed(&mut r, &space);
        let b = random_steiner_closed(&mut r, &space);
        let mut worst = 0f64;
        for k in 2..=4 {
            let bound = if k == 2 {
                3 * n - 5
            } else {
                closed_form_bound(n, k)
            };
            let script = transform(&a, &b, k).map_err(err)?;
            ensure!(
                script.len() <= bound,
                "k={k} n={n}: {} rotations, bound {bound}",
                script.len()
            );
            let mut replay = a.clone();
            let mut intermediates_ok = true;
            script
                .apply_with(&mut replay, |t| intermediates_ok &= t.is_k_cut(k).unwrap())
                .map_err(err)?;
            ensure!(
                intermediates_ok,
                "k={k}: an intermediate tree is not {k}-cut"
            );
            ensure!(replay == b, "k={k}: replay does not reproduce the target");
            worst = worst.max(script.len() as f64 / bound as f64);
        }
        Ok(worst)
    })?;
    let worst = worst.into_iter().fold(0.0, f64::max);
    Ok(format!(
        "500 pairs, 4 <= n <= 15, k in 2..=4, worst length/bound {worst:.3}"
    ))
}

// 4. Pointer-machine reduction and transformation.
fn pointer_reduction() -> Outcome {
    /// Allowed `total primitives / (k² n)` for a full transformation.
    const ENVELOPE: f64 = 3.0;
    let constants = all_trials(600, |i| {
        let mut r = rng(4000 + i as u64);
        let n = r.random_range(2..=40);
        let k = 2 + i % 3;
        let space = random_tree(&mut r, n);
        let a = random_kcut(&mut r, &space, k);
        let b = random_kcut(&mut r, &space, k);

        let mut m = PointerMachine::new(a.clone());
        for level in (2..=k).rev() {
            let mut invariants = true;
            let stats = reduce_cut_pointer(&mut m, level, |m, marks| {
                invariants &=
                    marks_consistent(m, marks, level) && m.tree().is_k_cut(level).unwrap();
            })
            .map_err(err)?;
            ensure!(invariants, "k={k} level {level}: marking invariants broken");
            ensure!(
                m.tree().is_k_cut(level - 1).unwrap(),
                "level {level} did not reach a {}-cut tree",
                level - 1
            );
            ensure!(
                stats.moves <= 2 * n as u64,
                "level {level}: {} moves for n={n}",
                stats.moves
            );
            ensure!(
                stats.rotations <= (n.saturating_sub(level)) as u64,
                "level {level}: {} rotations",
                stats.rotations
            );
        }

        let mut m = PointerMachine::new(a);
        let report = transform_pointer(&mut m, &b, k).map_err(err)?;
        ensure!(m.tree() == &b, "pipeline does not reach the target");
        ensure!(m.pointer() == b.root(), "pointer not back at the root");
        let total = report.moves() + report.rotations();
        let constant = total as f64 / (k * k * n) as f64;
        ensure!(
            constant <= ENVELOPE,
            "k={k} n={n}: {total} primitives, {constant:.2}·k²n"
        );
        Ok(constant)
    })?;
    let max = constants.into_iter().fold(0.0, f64::max);
    Ok(format!(
        "600 pipelines, n <= 40, k in 2..=4, max primitives/(k²n) = {max:.3} (envelope {ENVELOPE})"
    ))
}

// 5. The 2-cut test agrees with the definition of Steiner-closed.
fn steiner_equivalence() -> Outcome {
    let mut exhaustive = 0usize;
    let mut closed = 0usize;
    for n in 1..=7 {
        for space in unlabelled_trees(n) {
            for parents in all_search_trees(&space) {
                let t = SearchTree::from_parents(&space, parents).map_err(err)?;
                let direct = t.steiner_closed_direct();
                ensure!(
                    t.is_steiner_closed() == direct,
                    "disagreement on an exhaustive n={n} instance"
                );
                exhaustive += 1;
                closed += usize::from(direct);
            }
        }
    }
    all_trials(10_000, |i| {
        let mut r = rng(5000 + i as u64);
        let n = r.random_range(8..=12);
        let space = random_tree(&mut r, n);
        let t = random_stt(&mut r, &space);
        ensure!(
            t.is_steiner_closed() == t.steiner_closed_direct(),
            "disagreement at n={n}"
        );
        Ok(())
    })?;
    Ok(format!(
        "{exhaustive} exhaustive trees ({closed} closed) + 10000 random, 8 <= n <= 12"
    ))
}

#[derive(Default)]
struct SafetyWatch {
    closed_after_rotations: bool,
    phase_one: Option<String>,
    rotations: usize,
}

impl SplayObserver for SafetyWatch {
    fn rotated(&mut self, tree: &SearchTree<'_>, _: &Rotation) {
        self.closed_after_rotations &= tree.steiner_closed_direct();
        self.rotations += 1;
    }

    fn phase_one_finished(&mut self, tree: &SearchTree<'_>, x: NodeId, removed: &[NodeId]) {
        if !branching_nodes_direct(tree, x).is_empty() {
            self.phase_one = Some(format!("branching nodes remain above {x}"));
        } else if let Some(b) = removed.iter().find(|&&b| !tree.is_ancestor(b, x)) {
            self.phase_one = Some(format!(
                "branching node {b} is no longer an ancestor of {x}"
            ));
        }
    }
}

// 6. SplayTT keeps the tree Steiner-closed and clears branching nodes.
fn splay_safety() -> Outcome {
    const INSTANCES: usize = 100;
    const SEARCHES: usize = 100;
    let counts = all_trials(INSTANCES, |i| {
        let mut r = rng(6000 + i as u64);
        let n = r.random_range(1..=64);
        let space = random_tree(&mut r, n);
        let mut splay = SplayTT::new(random_steiner_closed(&mut r, &space)).map_err(err)?;
        let (mut branching, mut rotations) = (0, 0);
        for _ in 0..SEARCHES {
            let x = NodeId::new(r.random_range(0..n));
            let expected = branching_nodes_direct(splay.tree(), x);
            let mut watch = SafetyWatch {
                closed_after_rotations: true,
                ..Default::default()
            };
            let stats = splay.search_with(x, &mut watch).map_err(err)?;
            ensure!(
                watch.closed_after_rotations,
                "not Steiner-closed after a rotation while searching {x}"
            );
            if let Some(problem) = watch.phase_one {
                return Err(problem);
            }
            ensure!(
                stats.branching == expected.len(),
                "{x}: {} branching nodes handled, {} present",
                stats.branching,
                expected.len()
            );
            ensure!(splay.tree().root() == x, "{x} did not end at the root");
            branching += expected.len();
            rotations += watch.rotations;
        }
        Ok((branching, rotations))
    })?;
    let (branching, rotations) = counts
        .into_iter()
        .fold((0, 0), |a, b| (a.0 + b.0, a.1 + b.1));
    Ok(format!(
        "{} searches, n <= 64, {branching} branching nodes, {rotations} rotations checked",
        INSTANCES * SEARCHES
    ))
}

// 7. On a path, SplayTT is classic splaying.
fn path_equivalence() -> Outcome {
    all_trials(10, |i| {
        let mut r = rng(7000 + i as u64);
        let n = r.random_range(2..=64);
        let space = path(n);
        let start = random_stt(&mut r, &space);
        let mut classic = ClassicSplay::from_parents(start.parents());
        let mut splay = SplayTT::new(start).map_err(err)?;
        for s in 0..100 {
            let x = NodeId::new(r.random_range(0..n));
            let stats = splay.search(x).map_err(err)?;
            let rotations = classic.splay(x);
            ensure!(
                stats.rotations == rotations as u64,
                "search {s}: {} rotations vs {rotations}",
                stats.rotations
            );
            ensure!(
                splay.tree().parents() == classic.parents().as_slice(),
                "search {s}: trees differ"
            );
        }
        Ok(())
    })?;
    Ok("1000 searches on paths, n <= 64".into())
}

// 8. Per-search amortized bound and per-step potential bounds.
fn amortized_bound() -> Outcome {
    let reports = all_trials(30, |i| {
        let mut r = rng(8000 + i as u64);
        let n = if i < 10 {
            r.random_range(2..=BRUTE_FORCE_CAP)
        } else {
            r.random_range(11..=64)
        };
        let m = if i % 3 == 0 { 10_000 } else { 3_000 };
        let workload = [
            Workload::Uniform,
            Workload::Zipf { s: 1.2 },
            Workload::Sequential,
        ][i % 3];
        let space = random_tree(&mut r, n);
        let seq = sequence(workload, n, m, 8100 + i as u64)?;
        let p = FrequencyMap::from_sequence(n, &seq).map_err(err)?;
        let (reference, _) = reference(&space, &p).map_err(err)?;
        let mut splay = SplayTT::new(random_steiner_closed(&mut r, &space)).map_err(err)?;
        let report = amortized_check(&mut splay, &seq, &reference, DEFAULT_SCALE).map_err(err)?;
        ensure!(
            report.violations == 0,
            "n={n}: {} searches exceed 24·depth_R + 4",
            report.violations
        );
        ensure!(
            report.step_violations == 0,
            "n={n}: {} elementary steps exceed their bound",
            report.step_violations
        );
        ensure!(
            report.holds(),
            "n={n}: splay-level bound failed: {report:?}"
        );
        Ok((report.searches, report.max_excess))
    })?;
    let searches: usize = reports.iter().map(|r| r.0).sum();
    let excess = reports.iter().map(|r| r.1).max().unwrap_or(0);
    Ok(format!("{searches} searches over 30 instances, n <= 64, max excess over 24·depth_R = {excess} (slack 4)"))
}

// 9. Static optimality against the exact optimum.
fn static_optimality_bound() -> Outcome {
    let workloads = [
        ("zipf", Workload::Zipf { s: 1.0 }),
        ("uniform", Workload::Uniform),
        ("sequential", Workload::Sequential),
    ];
    let jobs: Vec<(usize, usize, u64)> = (2..=10)
        .flat_map(|n| (0..3).flat_map(move |w| (0..3).map(move |s| (n, w, s))))
        .collect();
    let ratios = all_trials(jobs.len(), |i| {
        let (n, w, s) = jobs[i];
        let (name, workload) = workloads[w];
        let seed = 9000 + i as u64;
        let mut r = rng(seed);
        let space = random_tree(&mut r, n);
        let seq = sequence(workload, n, 10_000, seed + s)?;
        let p = FrequencyMap::from_sequence(n, &seq).map_err(err)?;
        let (reference, opt) = reference(&space, &p).map_err(err)?;
        let report = static_optimality(random_steiner_closed(&mut r, &space), &seq, &reference)
            .map_err(err)?;
        ensure!(
            report.holds(),
            "{name} n={n}: cost {} > bound {}",
            report.cost_splay,
            report.bound
        );
        if report.covers_all {
            ensure!(
                report.tight_holds(),
                "{name} n={n}: cost {} > tight bound {}",
                report.cost_splay,
                report.tight_bound
            );
        }
        Ok((
            report.cost_splay as f64 / opt.max(1) as f64,
            report.covers_all,
        ))
    })?;
    let max = ratios.iter().map(|r| r.0).fold(0.0, f64::max);
    let covered = ratios.iter().filter(|r| r.1).count();
    Ok(format!(
        "{} runs of m=10000, n <= 10, {covered} fully covered, max cost/OPT {max:.2}",
        ratios.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("ptas-guarantee", ptas_guarantee),
        ("repair-depth-bound", repair_depth_bound),
        ("rotation-distance", rotation_distance),
        ("pointer-reduction", pointer_reduction),
        ("steiner-equivalence", steiner_equivalence),
        ("splay-safety", splay_safety),
        ("path-equivalence", path_equivalence),
        ("amortized-bound", amortized_bound),
        ("static-optimality", static_optimality_bound),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = check();
        let elapsed = started.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail} [{elapsed:.1?}]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail} [{elapsed:.1?}]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
