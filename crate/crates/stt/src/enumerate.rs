//! Exhaustive enumeration of small trees and of all search trees on a tree.

use std::collections::BTreeSet;

use stt_core::{NodeId, NodeSet, UnrootedTree};

/// One representative of every unlabelled tree on `n` nodes, found by
/// decoding all Prüfer sequences and keeping one tree per canonical form.
/// Feasible up to about `n = 9`.
pub fn unlabelled_trees(n: usize) -> Vec<UnrootedTree> {
    if n <= 2 {
        return vec![UnrootedTree::new(n.max(1), (1..n).map(|i| (0, i))).expect("tiny tree")];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut code = vec![0usize; n - 2];
    loop {
        let tree =
            UnrootedTree::new(n, prufer_edges(&code, n)).expect("Prüfer codes decode to trees");
        if seen.insert(canonical_form(&tree)) {
            out.push(tree);
        }
        // next code in lexicographic order
        let mut i = code.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            code[i] += 1;
            if code[i] < n {
                break;
            }
            code[i] = 0;
        }
    }
}

fn prufer_edges(code: &[usize], n: usize) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n];
    for &c in code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &c in code {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf remains");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    edges
}

/// Isomorphism-invariant encoding: the smallest nested-parenthesis string
/// over the tree's centers.
pub fn canonical_form(tree: &UnrootedTree) -> String {
    centers(tree)
        .into_iter()
        .map(|c| encode(tree, c, None))
        .min()
        .expect("a tree has a center")
}

fn encode(tree: &UnrootedTree, v: NodeId, from: Option<NodeId>) -> String {
    let mut parts: Vec<String> = tree
        .neighbors(v)
        .iter()
        .filter(|&&w| Some(w) != from)
        .map(|&w| encode(tree, w, Some(v)))
        .collect();
    parts.sort();
    format!("({})", parts.concat())
}

fn centers(tree: &UnrootedTree) -> Vec<NodeId> {
    let n = tree.len();
    let mut degree: Vec<usize> = tree.nodes().map(|v| tree.degree(v)).collect();
    let mut layer: Vec<NodeId> = tree.nodes().filter(|v| degree[v.index()] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &w in tree.neighbors(v) {
                degree[w.index()] -= 1;
                if degree[w.index()] == 1 {
                    next.push(w);
                }
            }
        }
        layer = next;
    }
    layer
}

/// Every search tree on `space` as a parent array. The count grows
/// exponentially; intended for trees of up to about 8 nodes.
pub fn all_search_trees(space: &UnrootedTree) -> Vec<Vec<Option<NodeId>>> {
    let n = space.len();
    let mut out = Vec::new();
    let mut parent = vec![None; n];
    let mut pending = vec![(NodeSet::full(n), None)];
    fill(space, &mut pending, &mut parent, &mut out);
    out
}

/// Picks a root for the last pending component, recursing on the rest.
fn fill(
    space: &UnrootedTree,
    pending: &mut Vec<(NodeSet, Option<NodeId>)>,
    parent: &mut Vec<Option<NodeId>>,
    out: &mut Vec<Vec<Option<NodeId>>>,
) {
    let Some((set, above)) = pending.pop() else {
        out.push(parent.clone());
        return;
    };
    for r in &set {
        parent[r.index()] = above;
        let parts = space
            .components_of_induced(&set, r)
            .expect("set is connected");
        let depth = pending.len();
        pending.extend(parts.into_iter().map(|p| (p, Some(r))));
        fill(space, pending, parent, out);
        pending.truncate(depth);
    }
    pending.push((set, above));
}

#[cfg(test)]
mod tests {
    use super::*;
    use stt_core::{path, star};

    #[test]
    fn unlabelled_tree_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| unlabelled_trees(n).len()).collect();
        assert_eq!(counts, [1, 1, 1, 2, 3, 6, 11, 23]);
    }

    #[test]
    fn search_tree_counts() {
        // Catalan numbers on paths; a(k) = 1 + k·a(k-1) on stars with k leaves
        let catalan = [1, 1, 2, 5, 14, 42, 132, 429];
        for (n, &count) in catalan.iter().enumerate().skip(1) {
            assert_eq!(all_search_trees(&path(n)).len(), count);
        }
        assert_eq!(all_search_trees(&star(7)).len(), 1957);
    }
}
