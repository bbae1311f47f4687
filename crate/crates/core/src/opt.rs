//! Optimal static search trees: the k-cut dynamic program, the
//! approximation scheme on top of it, and an exhaustive optimum for small
//! trees.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::node::{NodeId, NodeSet};
use crate::stt::SearchTree;
use crate::tree::UnrootedTree;

/// Search counts per node.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrequencyMap(Vec<u64>);

impl FrequencyMap {
    pub fn new(counts: Vec<u64>) -> Self {
        FrequencyMap(counts)
    }

    pub fn zeros(n: usize) -> Self {
        FrequencyMap(vec![0; n])
    }

    /// Counts how often each node occurs in `sequence`.
    pub fn from_sequence(n: usize, sequence: &[NodeId]) -> Result<Self> {
        let mut counts = vec![0u64; n];
        for &x in sequence {
            let slot = counts.get_mut(x.index()).ok_or(Error::NodeOutOfRange {
                node: x.index(),
                len: n,
            })?;
            *slot += 1;
        }
        Ok(FrequencyMap(counts))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, x: NodeId) -> u64 {
        self.0[x.index()]
    }

    pub fn set(&mut self, x: NodeId, count: u64) {
        self.0[x.index()] = count;
    }

    pub fn total(&self) -> u64 {
        self.0.iter().sum()
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.0
    }

    fn check(&self, space: &UnrootedTree) -> Result<()> {
        if self.len() != space.len() {
            return Err(Error::LengthMismatch {
                expected: space.len(),
                found: self.len(),
            });
        }
        Ok(())
    }
}

/// `Σ p(x)·depth_T(x)`.
pub fn static_cost(tree: &SearchTree<'_>, p: &FrequencyMap) -> u64 {
    tree.depths()
        .iter()
        .zip(p.as_slice())
        .map(|(&d, &c)| d as u64 * c)
        .sum()
}

/// A connected node set with boundary size at most `k`, keyed by its cut:
/// directed pairs `(outside, inside)`, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleSet {
    pub cut: Vec<(NodeId, NodeId)>,
    pub nodes: NodeSet,
}

impl AdmissibleSet {
    pub fn size(&self) -> usize {
        self.nodes.len()
    }

    /// Boundary nodes, ascending. Each boundary node has exactly one cut edge
    /// because the set is connected and `S` is a tree.
    pub fn boundary(&self) -> Vec<NodeId> {
        let mut b: Vec<NodeId> = self.cut.iter().map(|&(u, _)| u).collect();
        b.sort_unstable();
        b
    }
}

/// Every connected set with boundary size at most `k`, each exactly once,
/// sorted by size and then by cut.
///
/// Cuts are built from directed edges in increasing order; the set of a
/// cut is the intersection of the inside halves of its edges. A choice is
/// kept only while every chosen edge still has its inside endpoint in the
/// set, which makes the chosen edges exactly the cut of that set.
pub fn enumerate_admissible(space: &UnrootedTree, k: usize) -> Result<Vec<AdmissibleSet>> {
    if k < 1 {
        return Err(Error::InvalidK { k, min: 1 });
    }
    let n = space.len();
    let mut directed: Vec<(NodeId, NodeId)> =
        space.edges().flat_map(|(u, v)| [(u, v), (v, u)]).collect();
    directed.sort_unstable();
    let sides: Vec<NodeSet> = directed
        .iter()
        .map(|&(u, v)| space.component_with(u, v).expect("distinct endpoints"))
        .collect();

    let mut out = vec![AdmissibleSet {
        cut: Vec::new(),
        nodes: NodeSet::full(n),
    }];
    let mut chosen = Vec::with_capacity(k);
    extend_cuts(
        &directed,
        &sides,
        k,
        0,
        &NodeSet::full(n),
        &mut chosen,
        &mut out,
    );
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cut.cmp(&b.cut)));
    Ok(out)
}

fn extend_cuts(
    directed: &[(NodeId, NodeId)],
    sides: &[NodeSet],
    k: usize,
    start: usize,
    current: &NodeSet,
    chosen: &mut Vec<usize>,
    out: &mut Vec<AdmissibleSet>,
) {
    if chosen.len() == k {
        return;
    }
    for e in start..directed.len() {
        let mut next = current.clone();
        next.intersect_with(&sides[e]);
        chosen.push(e);
        if chosen.iter().all(|&c| next.contains(directed[c].1)) {
            out.push(AdmissibleSet {
                cut: chosen.iter().map(|&c| directed[c]).collect(),
                nodes: next.clone(),
            });
            extend_cuts(directed, sides, k, e + 1, &next, chosen, out);
        }
        chosen.pop();
    }
}

/// The nodes `r` of `set` for which every component of `S[set] \ r` is
/// again k-admissible: all of `set` if the boundary is below `k`, else the
/// members of the boundary's hull.
pub fn admissible_roots(
    space: &UnrootedTree,
    set: &AdmissibleSet,
    k: usize,
) -> Result<Vec<NodeId>> {
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    let boundary = set.boundary();
    if boundary.len() > k {
        return Err(Error::NotKCut { k });
    }
    if boundary.len() < k {
        return Ok(set.nodes.to_vec());
    }
    Ok(set
        .nodes
        .iter()
        .filter(|&r| splits(space, r, &boundary))
        .collect())
}

/// Whether `r` lies on the path between two of `nodes` (none equal to `r`).
fn splits(space: &UnrootedTree, r: NodeId, nodes: &[NodeId]) -> bool {
    let first = space.toward(r, nodes[0]);
    nodes[1..].iter().any(|&u| space.toward(r, u) != first)
}

#[derive(Clone, Debug)]
struct RootOption {
    root: NodeId,
    parts: Vec<usize>,
}

/// The k-cut dynamic program with all frequency-independent work done up
/// front, so one instance can be solved for many frequency maps.
#[derive(Clone, Debug)]
pub struct KCutDp<'s> {
    space: &'s UnrootedTree,
    k: usize,
    sets: Vec<AdmissibleSet>,
    options: Vec<Vec<RootOption>>,
}

/// Per-set results of one run, aligned with [`KCutDp::sets`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DpTable {
    pub entries: Vec<DpEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpEntry {
    pub best_root: NodeId,
    pub best_cost: u64,
    pub resolved: bool,
}

impl<'s> KCutDp<'s> {
    pub fn new(space: &'s UnrootedTree, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidK { k, min: 2 });
        }
        let sets = enumerate_admissible(space, k)?;
        let index: BTreeMap<&[(NodeId, NodeId)], usize> = sets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.cut.as_slice(), i))
            .collect();
        let mut options = Vec::with_capacity(sets.len());
        for set in &sets {
            let mut opts = Vec::new();
            for r in admissible_roots(space, set, k)? {
                let mut parts = Vec::new();
                for &c in space.neighbors(r) {
                    if !set.nodes.contains(c) {
                        continue;
                    }
                    let mut cut: Vec<(NodeId, NodeId)> = set
                        .cut
                        .iter()
                        .copied()
                        .filter(|&(_, v)| v != r && space.toward(r, v) == c)
                        .collect();
                    cut.push((r, c));
                    cut.sort_unstable();
                    let part = *index
                        .get(cut.as_slice())
                        .expect("component of an admissible root is admissible");
                    debug_assert!(sets[part].size() < set.size());
                    parts.push(part);
                }
                opts.push(RootOption { root: r, parts });
            }
            options.push(opts);
        }
        Ok(KCutDp {
            space,
            k,
            sets,
            options,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn sets(&self) -> &[AdmissibleSet] {
        &self.sets
    }

    /// Fills the table in order of increasing set size.
    pub fn table(&self, p: &FrequencyMap) -> Result<DpTable> {
        p.check(self.space)?;
        let unresolved = DpEntry {
            best_root: NodeId::new(0),
            best_cost: 0,
            resolved: false,
        };
        let mut entries = vec![unresolved; self.sets.len()];
        for (i, set) in self.sets.iter().enumerate() {
            let weight: u64 = set.nodes.iter().map(|x| p.get(x)).sum();
            let mut best: Option<(u64, NodeId)> = None;
            for opt in &self.options[i] {
                let sub: u64 = opt
                    .parts
                    .iter()
                    .map(|&j| {
                        debug_assert!(entries[j].resolved);
                        entries[j].best_cost
                    })
                    .sum();
                let cost = weight + sub;
                if best.is_none_or(|(c, r)| (cost, opt.root) < (c, r)) {
                    best = Some((cost, opt.root));
                }
            }
            let (best_cost, best_root) = best.expect("every admissible set has an admissible root");
            entries[i] = DpEntry {
                best_root,
                best_cost,
                resolved: true,
            };
        }
        Ok(DpTable { entries })
    }

    /// The optimal k-cut tree for `p` and its cost.
    pub fn solve(&self, p: &FrequencyMap) -> Result<(SearchTree<'s>, u64)> {
        let table = self.table(p)?;
        let full = self.sets.len() - 1;
        debug_assert!(self.sets[full].cut.is_empty());
        let mut parent = vec![None; self.space.len()];
        let mut stack = vec![(full, None)];
        while let Some((i, above)) = stack.pop() {
            let root = table.entries[i].best_root;
            parent[root.index()] = above;
            let opt = self.options[i]
                .iter()
                .find(|o| o.root == root)
                .expect("best root is an option");
            stack.extend(opt.parts.iter().map(|&j| (j, Some(root))));
        }
        let tree = SearchTree::from_parents(self.space, parent)?;
        Ok((tree, table.entries[full].best_cost))
    }
}

/// Optimal k-cut tree (`k >= 2`) and its static cost.
pub fn opt_kcut<'s>(
    space: &'s UnrootedTree,
    k: usize,
    p: &FrequencyMap,
) -> Result<(SearchTree<'s>, u64)> {
    KCutDp::new(space, k)?.solve(p)
}

/// A tree of cost at most `(1 + 1/t)` times the optimum, via the optimal
/// `2t`-cut tree.
pub fn ptas<'s>(
    space: &'s UnrootedTree,
    t: usize,
    p: &FrequencyMap,
) -> Result<(SearchTree<'s>, u64)> {
    if t < 1 {
        return Err(Error::InvalidK { k: t, min: 1 });
    }
    opt_kcut(space, 2 * t, p)
}

pub const BRUTE_FORCE_CAP: usize = 10;

/// The exact optimum over all search trees, by memoized recursion over
/// connected subsets. Only for `n <= cap` (and never above 63).
pub fn brute_opt<'s>(
    space: &'s UnrootedTree,
    p: &FrequencyMap,
    cap: usize,
) -> Result<(SearchTree<'s>, u64)> {
    let n = space.len();
    if n > cap.min(63) {
        return Err(Error::TooLarge {
            n,
            cap: cap.min(63),
        });
    }
    p.check(space)?;
    let adj: Vec<u64> = space
        .nodes()
        .map(|v| {
            space
                .neighbors(v)
                .iter()
                .fold(0u64, |m, u| m | 1 << u.index())
        })
        .collect();
    let mut memo = BTreeMap::new();
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let cost = brute_cost(full, &adj, p.as_slice(), &mut memo);

    let mut parent = vec![None; n];
    let mut stack = vec![(full, None)];
    while let Some((mask, above)) = stack.pop() {
        let (_, r) = memo[&mask];
        parent[r] = above.map(NodeId::new);
        let rest = mask & !(1u64 << r);
        for part in mask_components(rest, &adj) {
            stack.push((part, Some(r)));
        }
    }
    Ok((SearchTree::from_parents(space, parent)?, cost))
}

fn brute_cost(mask: u64, adj: &[u64], p: &[u64], memo: &mut BTreeMap<u64, (u64, usize)>) -> u64 {
    if let Some(&(c, _)) = memo.get(&mask) {
        return c;
    }
    let weight: u64 = bits(mask).map(|i| p[i]).sum();
    let mut best = (u64::MAX, usize::MAX);
    for r in bits(mask) {
        let rest = mask & !(1u64 << r);
        let sub: u64 = mask_components(rest, adj)
            .into_iter()
            .map(|m| brute_cost(m, adj, p, memo))
            .sum();
        if sub < best.0 {
            best = (sub, r);
        }
    }
    let cost = weight + best.0;
    memo.insert(mask, (cost, best.1));
    cost
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    core::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let i = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(i)
    })
}

fn mask_components(mut rest: u64, adj: &[u64]) -> Vec<u64> {
    let mut parts = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let grown = bits(comp).fold(comp, |m, i| m | (adj[i] & rest));
            if grown == comp {
                break;
            }
            comp = grown;
        }
        rest &= !comp;
        parts.push(comp);
    }
    parts
}
