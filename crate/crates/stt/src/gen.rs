//! Seeded generators for search spaces, search trees, and workloads.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Zipf};
use stt_core::fix::{fix_improved, steinerize};
use stt_core::{NodeId, NodeSet, SearchTree, UnrootedTree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Shape {
    Path,
    Star,
    /// A spine of about half the nodes with the rest hung off it as legs.
    Caterpillar,
    /// Three legs of near-equal length around node 0.
    Spider,
    /// Every node attaches to a uniformly chosen earlier node; labels are
    /// then shuffled.
    Random,
}

pub fn tree(shape: Shape, n: usize, seed: u64) -> Result<UnrootedTree, stt_core::Error> {
    if n == 0 {
        return Err(stt_core::Error::EmptyTree);
    }
    let edges: Vec<(usize, usize)> = match shape {
        Shape::Path => (1..n).map(|i| (i - 1, i)).collect(),
        Shape::Star => (1..n).map(|i| (0, i)).collect(),
        Shape::Caterpillar => {
            let spine = n.div_ceil(2);
            let mut e: Vec<_> = (1..spine).map(|i| (i - 1, i)).collect();
            e.extend((spine..n).map(|i| ((i - spine) % spine, i)));
            e
        }
        Shape::Spider => (1..n).map(|i| (i.saturating_sub(3), i)).collect(),
        Shape::Random => return Ok(random_tree(&mut rng(seed), n)),
    };
    UnrootedTree::new(n, edges)
}

pub fn random_tree(rng: &mut impl Rng, n: usize) -> UnrootedTree {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges: Vec<_> = (1..n)
        .map(|i| (label[rng.random_range(0..i)], label[i]))
        .collect();
    UnrootedTree::new(n, edges).expect("attachment builds a tree")
}

/// A search tree with a uniformly chosen root in every component.
pub fn random_stt<'s>(rng: &mut impl Rng, space: &'s UnrootedTree) -> SearchTree<'s> {
    let n = space.len();
    let mut parent = vec![None; n];
    let mut stack = vec![(NodeSet::full(n), None)];
    while let Some((set, above)) = stack.pop() {
        let members = set.to_vec();
        let r = members[rng.random_range(0..members.len())];
        parent[r.index()] = above;
        for part in space
            .components_of_induced(&set, r)
            .expect("set is connected")
        {
            stack.push((part, Some(r)));
        }
    }
    SearchTree::from_parents(space, parent).expect("recursive construction is valid")
}

pub fn random_kcut<'s>(rng: &mut impl Rng, space: &'s UnrootedTree, k: usize) -> SearchTree<'s> {
    fix_improved(&random_stt(rng, space), k).expect("k >= 2")
}

pub fn random_steiner_closed<'s>(rng: &mut impl Rng, space: &'s UnrootedTree) -> SearchTree<'s> {
    steinerize(&random_stt(rng, space))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Workload {
    Uniform,
    /// Zipf with exponent `s` over a seeded random ranking of the nodes.
    Zipf {
        s: f64,
    },
    /// `0, 1, ..., n-1, 0, 1, ...`
    Sequential,
    Single {
        node: usize,
    },
}

pub fn sequence(workload: Workload, n: usize, m: usize, seed: u64) -> Result<Vec<NodeId>, String> {
    if n == 0 {
        return Err("sequences need at least one node".into());
    }
    let mut rng = rng(seed);
    let seq = match workload {
        Workload::Uniform => (0..m).map(|_| rng.random_range(0..n)).collect(),
        Workload::Sequential => (0..m).map(|i| i % n).collect(),
        Workload::Single { node } => {
            if node >= n {
                return Err(format!("node {node} out of range for {n} nodes"));
            }
            vec![node; m]
        }
        Workload::Zipf { s } => {
            let zipf = Zipf::new(n as f64, s).map_err(|e| format!("bad zipf parameters: {e}"))?;
            let mut rank: Vec<usize> = (0..n).collect();
            rank.shuffle(&mut rng);
            (0..m)
                .map(|_| rank[zipf.sample(&mut rng) as usize - 1])
                .collect()
        }
    };
    Ok(seq.into_iter().map(NodeId::new).collect())
}
