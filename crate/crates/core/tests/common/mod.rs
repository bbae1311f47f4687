#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use stt_core::fix::fix_improved;
use stt_core::{NodeId, NodeSet, SearchTree, UnrootedTree};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random labelled tree: each node attaches to a random earlier node, then
/// labels are shuffled.
pub fn random_tree(rng: &mut impl Rng, n: usize) -> UnrootedTree {
    let mut label: Vec<usize> = (0..n).collect();
    label.shuffle(rng);
    let edges: Vec<(usize, usize)> = (1..n)
        .map(|i| (label[rng.random_range(0..i)], label[i]))
        .collect();
    UnrootedTree::new(n, edges).unwrap()
}

/// Random search tree: a uniformly chosen root for every component.
pub fn random_stt<'s>(rng: &mut impl Rng, s: &'s UnrootedTree) -> SearchTree<'s> {
    let n = s.len();
    let mut parent = vec![None; n];
    let mut stack = vec![(NodeSet::full(n), None::<NodeId>)];
    while let Some((set, above)) = stack.pop() {
        let members = set.to_vec();
        let r = members[rng.random_range(0..members.len())];
        parent[r.index()] = above;
        for part in s.components_of_induced(&set, r).unwrap() {
            stack.push((part, Some(r)));
        }
    }
    SearchTree::from_parents(s, parent).unwrap()
}

pub fn random_kcut<'s>(rng: &mut impl Rng, s: &'s UnrootedTree, k: usize) -> SearchTree<'s> {
    fix_improved(&random_stt(rng, s), k).unwrap()
}

/// Every search tree on `s`, as parent arrays. Exponential; tiny trees only.
pub fn all_search_trees(s: &UnrootedTree) -> Vec<Vec<Option<NodeId>>> {
    fn build(s: &UnrootedTree, set: &NodeSet) -> Vec<Vec<(NodeId, Option<NodeId>)>> {
        let mut out = Vec::new();
        for r in set {
            let parts = s.components_of_induced(set, r).unwrap();
            let mut partial: Vec<Vec<(NodeId, Option<NodeId>)>> = vec![vec![(r, None)]];
            for part in &parts {
                let subs = build(s, part);
                let mut next = Vec::new();
                for prefix in &partial {
                    for sub in &subs {
                        let mut combined = prefix.clone();
                        combined.extend(sub.iter().map(|&(v, p)| (v, Some(p.unwrap_or(r)))));
                        next.push(combined);
                    }
                }
                partial = next;
            }
            out.extend(partial);
        }
        out
    }
    build(s, &NodeSet::full(s.len()))
        .into_iter()
        .map(|pairs| {
            let mut parent = vec![None; s.len()];
            for (v, p) in pairs {
                parent[v.index()] = p;
            }
            parent
        })
        .collect()
}

/// Boundary of `set` recomputed by scanning every edge.
pub fn brute_boundary(s: &UnrootedTree, set: &NodeSet) -> Vec<NodeId> {
    let mut out: Vec<NodeId> = s
        .edges()
        .filter_map(|(u, v)| match (set.contains(u), set.contains(v)) {
            (true, false) => Some(v),
            (false, true) => Some(u),
            _ => None,
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// Whether `v` satisfies the leaf-centroid definition for `S[set]`.
pub fn is_leaf_centroid(s: &UnrootedTree, set: &NodeSet, v: NodeId) -> bool {
    let inner_degree = |x: NodeId| s.neighbors(x).iter().filter(|&&y| set.contains(y)).count();
    let leaves: Vec<NodeId> = set.iter().filter(|&x| inner_degree(x) <= 1).collect();
    if !set.contains(v) || inner_degree(v) <= 1 {
        return false;
    }
    let half = leaves.len() / 2;
    s.components_of_induced(set, v).unwrap().iter().all(|part| {
        let own = leaves.iter().filter(|&&l| part.contains(l)).count();
        let part_leaves = part
            .iter()
            .filter(|&x| s.neighbors(x).iter().filter(|&&y| part.contains(y)).count() <= 1)
            .count();
        own <= half && part_leaves <= half + 1
    })
}

/// Random connected subset containing `start`, grown one neighbor at a time.
pub fn random_connected(rng: &mut impl Rng, s: &UnrootedTree, size: usize) -> NodeSet {
    let start = NodeId::new(rng.random_range(0..s.len()));
    let mut set = NodeSet::from_nodes(s.len(), [start]);
    while set.len() < size {
        let frontier: Vec<NodeId> = s.boundary_of(&set);
        if frontier.is_empty() {
            break;
        }
        set.insert(frontier[rng.random_range(0..frontier.len())]);
    }
    set
}
