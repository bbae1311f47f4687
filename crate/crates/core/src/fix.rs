//! Turning an arbitrary search tree into a k-cut tree while bounding how
//! much any node's depth grows.

use alloc::vec;

use crate::error::{Error, Result};
use crate::node::{NodeId, NodeSet};
use crate::stt::SearchTree;

/// Top-down repair: whenever a subtree's boundary reaches `k`, the leaf
/// centroid of the boundary's hull is rotated up to become the subtree's
/// root. Each node's depth grows by a factor of at most
/// `1 + 1/(⌈k/2⌉ - 1)`.
pub fn fix<'s>(tree: &SearchTree<'s>, k: usize) -> Result<SearchTree<'s>> {
    if k < 3 {
        return Err(Error::InvalidK { k, min: 3 });
    }
    run(tree, k, false)
}

/// Like [`fix`], but keeps the root whenever it lies on the hull of the
/// boundary, and otherwise picks the leaf centroid of the hull of the
/// boundary plus the root. Depth grows by a factor of at most
/// `1 + 1/⌊k/2⌋`, and `k = 2` is allowed.
pub fn fix_improved<'s>(tree: &SearchTree<'s>, k: usize) -> Result<SearchTree<'s>> {
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    run(tree, k, true)
}

/// A Steiner-closed tree in which every node's depth at most doubles.
pub fn steinerize<'s>(tree: &SearchTree<'s>) -> SearchTree<'s> {
    run(tree, 2, true).expect("k = 2 is valid")
}

fn run<'s>(tree: &SearchTree<'s>, k: usize, improved: bool) -> Result<SearchTree<'s>> {
    let mut t = tree.clone();
    let s = t.space();
    let n = s.len();
    let mut stack = vec![t.root()];
    while let Some(x) = stack.pop() {
        debug_assert!(
            t.boundary_size(x) <= k,
            "recursive call exceeds the boundary budget"
        );
        let root = if t.children(x).is_empty() || t.boundary_size(x) < k {
            x
        } else {
            let mut marked = NodeSet::from_nodes(n, t.boundary(x).iter().copied());
            let hull = s.convex_hull(&marked)?;
            let target = if !improved {
                Some(hull)
            } else if hull.contains(x) {
                None
            } else {
                marked.insert(x);
                Some(s.convex_hull(&marked)?)
            };
            match target {
                None => x,
                Some(h) => {
                    let v = s.leaf_centroid(&h)?;
                    lift(&mut t, v, x)?;
                    v
                }
            }
        };
        // Subtrees of distinct children are disjoint, so order only affects
        // determinism; smallest child is processed first.
        stack.extend(t.children(root).iter().rev());
    }
    Ok(t)
}

/// Rotates `v` up until it takes the place of its ancestor `x`.
fn lift(t: &mut SearchTree<'_>, v: NodeId, x: NodeId) -> Result<()> {
    let top = t.parent(x);
    while t.parent(v) != top {
        t.rotate(v)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::{path, UnrootedTree};

    fn n(i: usize) -> NodeId {
        NodeId::new(i)
    }

    #[test]
    fn k_cut_input_is_unchanged() {
        let p = path(7);
        let t = SearchTree::rooted_at(&p, n(2)).unwrap();
        assert_eq!(fix(&t, 3).unwrap(), t);
        assert_eq!(fix_improved(&t, 2).unwrap(), t);
        let s = UnrootedTree::new(1, []).unwrap();
        let t = SearchTree::rooted_at(&s, n(0)).unwrap();
        assert_eq!(steinerize(&t), t);
    }

    #[test]
    fn spider_chain_becomes_steiner_closed() {
        let s = UnrootedTree::new(4, [(0, 3), (1, 3), (2, 3)]).unwrap();
        let chain = vec![None, Some(n(0)), Some(n(1)), Some(n(2))];
        let t = SearchTree::from_parents(&s, chain).unwrap();
        let fixed = steinerize(&t);
        assert!(fixed.is_steiner_closed());
        assert!(fixed.validate_stt());
        let before = t.depths();
        for (a, b) in fixed.depths().iter().zip(&before) {
            assert!(*a <= 2 * b);
        }
    }

    #[test]
    fn rejects_small_k() {
        let p = path(2);
        let t = SearchTree::rooted_at(&p, n(0)).unwrap();
        assert_eq!(fix(&t, 2), Err(Error::InvalidK { k: 2, min: 3 }));
        assert_eq!(fix_improved(&t, 1), Err(Error::InvalidK { k: 1, min: 2 }));
    }
}
