//! Static-optimality experiment: SplayTT against the best static tree for
//! each workload, one CSV row per instance.

use std::fmt::Write as _;

use rayon::prelude::*;
use stt_core::analysis::static_optimality;
use stt_core::opt::FrequencyMap;

use crate::gen::{random_steiner_closed, random_tree, rng, sequence, Workload};
use crate::reference;

pub const CSV_HEADER: &str =
    "instance,n,m,cost_splay,cost_R,opt,ratio,max_amortized_ratio,violations";

#[derive(Clone, Debug, PartialEq)]
pub struct Row {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub cost_splay: u64,
    pub cost_r: u64,
    pub opt: u64,
    /// `cost_splay / opt`.
    pub ratio: f64,
    pub max_amortized_ratio: f64,
    /// Amortized-bound violations plus one if the static bound failed.
    pub violations: usize,
}

impl Row {
    pub fn csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{:.4},{:.4},{}",
            self.instance,
            self.n,
            self.m,
            self.cost_splay,
            self.cost_r,
            self.opt,
            self.ratio,
            self.max_amortized_ratio,
            self.violations
        )
    }
}

pub const WORKLOADS: [(&str, Workload); 3] = [
    ("uniform", Workload::Uniform),
    ("zipf", Workload::Zipf { s: 1.0 }),
    ("sequential", Workload::Sequential),
];

/// `trials` random trees of `n` nodes, each served every workload of
/// length `m`.
pub fn run(n: usize, m: usize, trials: usize, seed: u64) -> Result<Vec<Row>, String> {
    let jobs: Vec<(usize, usize)> = (0..trials)
        .flat_map(|t| (0..WORKLOADS.len()).map(move |w| (t, w)))
        .collect();
    jobs.into_par_iter()
        .map(|(t, w)| instance(n, m, seed.wrapping_add(t as u64), t, w))
        .collect()
}

fn instance(n: usize, m: usize, seed: u64, trial: usize, w: usize) -> Result<Row, String> {
    let (name, workload) = WORKLOADS[w];
    let mut r = rng(seed);
    let space = random_tree(&mut r, n);
    let start = random_steiner_closed(&mut r, &space);
    let seq = sequence(workload, n, m, seed ^ 0x5eed)?;
    let p = FrequencyMap::from_sequence(n, &seq).map_err(|e| e.to_string())?;
    let (reference, opt) = reference(&space, &p).map_err(|e| e.to_string())?;
    let s = static_optimality(start, &seq, &reference).map_err(|e| e.to_string())?;
    Ok(Row {
        instance: format!("{name}-{trial}"),
        n,
        m,
        cost_splay: s.cost_splay,
        cost_r: s.cost_r,
        opt,
        ratio: s.cost_splay as f64 / opt.max(1) as f64,
        max_amortized_ratio: s.amortized.max_ratio,
        violations: s.amortized.violations + usize::from(!s.holds()),
    })
}

pub fn to_csv(rows: &[Row]) -> String {
    let mut out = format!("{CSV_HEADER}\n");
    for row in rows {
        writeln!(out, "{}", row.csv()).unwrap();
    }
    out
}
