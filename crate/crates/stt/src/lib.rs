//! Std companion to `stt-core`: text formats, seeded generators, exhaustive
//! enumeration, property suites, and experiments.

pub mod enumerate;
pub mod experiment;
pub mod format;
pub mod gen;
pub mod suites;

pub use stt_core;

use stt_core::fix::steinerize;
use stt_core::opt::{brute_opt, ptas, FrequencyMap, BRUTE_FORCE_CAP};
use stt_core::{SearchTree, UnrootedTree};

/// A Steiner-closed reference tree for `p`, plus the optimal (or, above
/// [`BRUTE_FORCE_CAP`] nodes, the approximate) static cost it derives from.
/// Up to the cap the optimum is exact; beyond it the 2-cut DP stands in.
pub fn reference<'s>(
    space: &'s UnrootedTree,
    p: &FrequencyMap,
) -> stt_core::Result<(SearchTree<'s>, u64)> {
    let (best, cost) = if space.len() <= BRUTE_FORCE_CAP {
        brute_opt(space, p, BRUTE_FORCE_CAP)?
    } else {
        ptas(space, 1, p)?
    };
    Ok((steinerize(&best), cost))
}
