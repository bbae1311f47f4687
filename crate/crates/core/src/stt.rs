//! Rooted search trees on an unrooted tree, with rotations and a
//! maintained boundary table.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::node::{NodeId, NodeSet};
use crate::tree::UnrootedTree;

/// Outcome of one rotation: `node` moved above `parent`, and `transferred`
/// (if any) moved from `node` to `parent`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub node: NodeId,
    pub parent: NodeId,
    pub transferred: Option<NodeId>,
}

/// A search tree `T` on the space `S`.
///
/// Every node's boundary `δ(T_x)` is kept in `boundary`, sorted ascending,
/// and updated on each rotation with `|δ(T_p)|` separation queries. Only the
/// two rotated nodes change boundary.
#[derive(Clone, Debug)]
pub struct SearchTree<'s> {
    space: &'s UnrootedTree,
    parent: Vec<Option<NodeId>>,
    children: Vec<Vec<NodeId>>,
    root: NodeId,
    boundary: Vec<Vec<NodeId>>,
    oracle_calls: u64,
}

impl PartialEq for SearchTree<'_> {
    fn eq(&self, other: &Self) -> bool {
        same_space(self.space, other.space) && self.parent == other.parent
    }
}

impl Eq for SearchTree<'_> {}

pub(crate) fn same_space(a: &UnrootedTree, b: &UnrootedTree) -> bool {
    core::ptr::eq(a, b) || a == b
}

impl<'s> SearchTree<'s> {
    /// `S` rooted at `r`: the tree's edges are those of `S`, oriented away
    /// from `r`. Always a 1-cut tree.
    pub fn rooted_at(space: &'s UnrootedTree, r: NodeId) -> Result<Self> {
        space.check(r)?;
        let mut parent = vec![None; space.len()];
        let mut stack = vec![r];
        let mut seen = NodeSet::empty(space.len());
        seen.insert(r);
        while let Some(v) = stack.pop() {
            for &w in space.neighbors(v) {
                if seen.insert(w) {
                    parent[w.index()] = Some(v);
                    stack.push(w);
                }
            }
        }
        Self::from_parents(space, parent)
    }

    /// Builds a search tree from a parent array, checking the search-tree
    /// property in linear time: every edge of `S` joins an ancestor and a
    /// descendant, and every subtree induces a connected subgraph of `S`.
    pub fn from_parents(space: &'s UnrootedTree, parent: Vec<Option<NodeId>>) -> Result<Self> {
        let n = space.len();
        if parent.len() != n {
            return Err(Error::LengthMismatch {
                expected: n,
                found: parent.len(),
            });
        }
        let mut root = None;
        let mut children = vec![Vec::new(); n];
        for (i, p) in parent.iter().enumerate() {
            match *p {
                None if root.is_some() => {
                    return Err(Error::InvalidSearchTree("more than one root"))
                }
                None => root = Some(NodeId::new(i)),
                Some(p) => {
                    space.check(p)?;
                    if p.index() == i {
                        return Err(Error::InvalidSearchTree("node is its own parent"));
                    }
                    children[p.index()].push(NodeId::new(i));
                }
            }
        }
        let root = root.ok_or(Error::InvalidSearchTree("no root"))?;

        // Preorder with entry/exit times in T.
        let mut tin = vec![u32::MAX; n];
        let mut tout = vec![0u32; n];
        let mut order = Vec::with_capacity(n);
        let mut stack = vec![(root, false)];
        let mut clock = 0u32;
        while let Some((v, done)) = stack.pop() {
            if done {
                tout[v.index()] = clock;
                continue;
            }
            tin[v.index()] = clock;
            clock += 1;
            order.push(v);
            stack.push((v, true));
            for &c in children[v.index()].iter().rev() {
                stack.push((c, false));
            }
        }
        if order.len() != n {
            return Err(Error::InvalidSearchTree("parent links contain a cycle"));
        }
        let is_anc = |a: NodeId, b: NodeId| {
            tin[a.index()] <= tin[b.index()] && tout[b.index()] <= tout[a.index()]
        };
        let mut upper_edges = vec![0usize; n];
        for (u, v) in space.edges() {
            if is_anc(u, v) {
                upper_edges[u.index()] += 1;
            } else if is_anc(v, u) {
                upper_edges[v.index()] += 1;
            } else {
                return Err(Error::InvalidSearchTree(
                    "an edge of S joins unrelated nodes",
                ));
            }
        }
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if upper_edges[v.index()] + 1 != size[v.index()] {
                return Err(Error::InvalidSearchTree("a subtree is not connected in S"));
            }
            if let Some(p) = parent[v.index()] {
                size[p.index()] += size[v.index()];
                upper_edges[p.index()] += upper_edges[v.index()];
            }
        }

        let mut tree = SearchTree {
            space,
            parent,
            children,
            root,
            boundary: vec![Vec::new(); n],
            oracle_calls: 0,
        };
        for &x in &order {
            for i in 0..tree.children[x.index()].len() {
                let c = tree.children[x.index()][i];
                let b = tree.child_boundary(x, c);
                tree.boundary[c.index()] = b;
            }
        }
        Ok(tree)
    }

    /// `δ(T_c)` for a child `c` of `x`, derived from `δ(T_x)`: `x` plus every
    /// boundary node of `x` on the same side of `x` as `c`.
    fn child_boundary(&mut self, x: NodeId, c: NodeId) -> Vec<NodeId> {
        let side = self.space.toward(x, c);
        let mut out = Vec::with_capacity(self.boundary[x.index()].len() + 1);
        out.push(x);
        for &u in &self.boundary[x.index()] {
            if self.space.toward(x, u) == side {
                out.push(u);
            }
        }
        self.oracle_calls += 1 + self.boundary[x.index()].len() as u64;
        out.sort_unstable();
        out
    }

    pub fn space(&self) -> &'s UnrootedTree {
        self.space
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn root(&self) -> NodeId {
        self.root
    }

    pub fn parent(&self, x: NodeId) -> Option<NodeId> {
        self.parent[x.index()]
    }

    /// Children of `x`, ascending.
    pub fn children(&self, x: NodeId) -> &[NodeId] {
        &self.children[x.index()]
    }

    pub fn parents(&self) -> &[Option<NodeId>] {
        &self.parent
    }

    /// The maintained boundary `δ(T_x)`, ascending.
    pub fn boundary(&self, x: NodeId) -> &[NodeId] {
        &self.boundary[x.index()]
    }

    pub fn boundary_size(&self, x: NodeId) -> usize {
        self.boundary[x.index()].len()
    }

    pub fn max_boundary_size(&self) -> usize {
        self.boundary.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Separation queries issued so far (construction and rotations).
    pub fn oracle_calls(&self) -> u64 {
        self.oracle_calls
    }

    /// Number of nodes on the search path of `x`; the root has depth 1.
    pub fn depth(&self, x: NodeId) -> usize {
        let mut d = 1;
        let mut v = x;
        while let Some(p) = self.parent[v.index()] {
            d += 1;
            v = p;
        }
        d
    }

    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.len()];
        depth[self.root.index()] = 1;
        for x in self.preorder() {
            for &c in self.children(x) {
                depth[c.index()] = depth[x.index()] + 1;
            }
        }
        depth
    }

    /// Nodes in preorder, children visited in ascending id order.
    pub fn preorder(&self) -> Vec<NodeId> {
        let mut out = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(v) = stack.pop() {
            out.push(v);
            stack.extend(self.children(v).iter().rev());
        }
        out
    }

    /// Search path of `x`, root first.
    pub fn search_path(&self, x: NodeId) -> Vec<NodeId> {
        let mut path = vec![x];
        let mut v = x;
        while let Some(p) = self.parent[v.index()] {
            path.push(p);
            v = p;
        }
        path.reverse();
        path
    }

    pub fn is_ancestor(&self, a: NodeId, b: NodeId) -> bool {
        let mut v = Some(b);
        while let Some(w) = v {
            if w == a {
                return true;
            }
            v = self.parent[w.index()];
        }
        false
    }

    /// `V(T_x)`.
    pub fn subtree_nodes(&self, x: NodeId) -> NodeSet {
        let mut set = NodeSet::empty(self.len());
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            set.insert(v);
            stack.extend_from_slice(self.children(v));
        }
        set
    }

    /// Rotates the edge between `x` and its parent `p`: `x` takes `p`'s
    /// place, `p` becomes a child of `x`, and the child of `x` whose subtree
    /// touches `p` in `S` (if any) moves to `p`.
    pub fn rotate(&mut self, x: NodeId) -> Result<Rotation> {
        self.space.check(x)?;
        let p = self.parent[x.index()].ok_or(Error::RootRotation { node: x })?;
        let g = self.parent[p.index()];

        let toward_p = self.space.toward(x, p);
        self.oracle_calls += 1;
        let mut transferred = None;
        for &c in &self.children[x.index()] {
            self.oracle_calls += 1;
            if self.space.toward(x, c) == toward_p {
                transferred = Some(c);
                break;
            }
        }

        match g {
            Some(g) => {
                remove_sorted(&mut self.children[g.index()], p);
                insert_sorted(&mut self.children[g.index()], x);
            }
            None => self.root = x,
        }
        self.parent[x.index()] = g;
        remove_sorted(&mut self.children[p.index()], x);
        insert_sorted(&mut self.children[x.index()], p);
        self.parent[p.index()] = Some(x);
        if let Some(y) = transferred {
            remove_sorted(&mut self.children[x.index()], y);
            insert_sorted(&mut self.children[p.index()], y);
            self.parent[y.index()] = Some(p);
        }

        let old = core::mem::take(&mut self.boundary[p.index()]);
        self.boundary[x.index()] = old;
        let fresh = self.child_boundary(x, p);
        self.boundary[p.index()] = fresh;

        Ok(Rotation {
            node: x,
            parent: p,
            transferred,
        })
    }

    /// Whether every subtree has boundary size at most `k`.
    pub fn is_k_cut(&self, k: usize) -> Result<bool> {
        if k < 1 {
            return Err(Error::InvalidK { k, min: 1 });
        }
        Ok(self.max_boundary_size() <= k)
    }

    /// Steiner-closed, decided through the 2-cut characterization.
    pub fn is_steiner_closed(&self) -> bool {
        self.max_boundary_size() <= 2
    }

    /// Steiner-closed, decided from the definition: for every search path
    /// `P`, each hull node outside `P` has exactly two neighbors in the hull.
    /// Quadratic; a test oracle for [`SearchTree::is_steiner_closed`].
    pub fn steiner_closed_direct(&self) -> bool {
        let s = self.space;
        s.nodes().all(|x| {
            let path = NodeSet::from_nodes(s.len(), self.search_path(x));
            let hull = s.convex_hull(&path).expect("search path is nonempty");
            hull.iter()
                .filter(|&v| !path.contains(v))
                .all(|v| s.neighbors(v).iter().filter(|&&w| hull.contains(w)).count() == 2)
        })
    }

    /// Checks the recursive definition directly. Quadratic; a test oracle.
    pub fn validate_stt(&self) -> bool {
        is_valid_search_tree(self.space, &self.parent)
    }

    /// Compares the maintained boundary table with a recomputation from the
    /// edges of `S`.
    pub fn boundaries_consistent(&self) -> bool {
        self.space
            .nodes()
            .all(|x| self.space.boundary_of(&self.subtree_nodes(x)) == self.boundary(x))
    }
}

fn insert_sorted(list: &mut Vec<NodeId>, v: NodeId) {
    let pos = list.partition_point(|&w| w < v);
    list.insert(pos, v);
}

fn remove_sorted(list: &mut Vec<NodeId>, v: NodeId) {
    if let Ok(pos) = list.binary_search(&v) {
        list.remove(pos);
    }
}

/// Whether `parent` describes a search tree on `space`, checked against the
/// recursive definition: the children of each node `x` are exactly one node
/// per component of `S[V(T_x)] \ x`, each heading that component's subtree.
pub fn is_valid_search_tree(space: &UnrootedTree, parent: &[Option<NodeId>]) -> bool {
    let n = space.len();
    if parent.len() != n || parent.iter().filter(|p| p.is_none()).count() != 1 {
        return false;
    }
    if parent.iter().flatten().any(|p| p.index() >= n) {
        return false;
    }
    let mut children = vec![Vec::new(); n];
    for (i, p) in parent.iter().enumerate() {
        if let Some(p) = p {
            children[p.index()].push(NodeId::new(i));
        }
    }
    let root = NodeId::new(parent.iter().position(Option::is_none).expect("one root"));
    let subtree = |x: NodeId| {
        let mut set = NodeSet::empty(n);
        let mut stack = vec![x];
        while let Some(v) = stack.pop() {
            if !set.insert(v) {
                return None;
            }
            stack.extend_from_slice(&children[v.index()]);
        }
        Some(set)
    };
    let Some(all) = subtree(root) else {
        return false;
    };
    if all.len() != n {
        return false;
    }
    for x in space.nodes() {
        let Some(set) = subtree(x) else { return false };
        let Ok(parts) = space.components_of_induced(&set, x) else {
            return false;
        };
        let mut kids: Vec<NodeSet> = match children[x.index()].iter().map(|&c| subtree(c)).collect()
        {
            Some(k) => k,
            None => return false,
        };
        kids.sort_by_key(|k| k.first());
        if kids != parts {
            return false;
        }
    }
    true
}
