//! The unrooted search space and its structural queries.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::node::{NodeId, NodeSet};

/// An immutable unrooted tree on nodes `0..n`.
///
/// Besides adjacency, the tree keeps a fixed rooting at node 0 (preorder
/// entry/exit times and ordered child lists). This answers "which neighbor
/// of `z` leads towards `x`" in `O(log deg)`, which is the only oracle the
/// search-tree algorithms need.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnrootedTree {
    adjacency: Vec<Vec<NodeId>>,
    up: Vec<Option<NodeId>>,
    down: Vec<Vec<NodeId>>,
    tin: Vec<u32>,
    tout: Vec<u32>,
    preorder: Vec<NodeId>,
}

impl UnrootedTree {
    /// Builds a tree from `n` and its edge list, rejecting anything that is
    /// not a tree on `[0, n)`.
    pub fn new<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyTree);
        }
        let mut adjacency = vec![Vec::new(); n];
        let mut dsu = Dsu::new(n);
        let mut seen = Vec::new();
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::NodeOutOfRange { node: w, len: n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop { node: u });
            }
            seen.push((u.min(v), u.max(v)));
            adjacency[u].push(NodeId::new(v));
            adjacency[v].push(NodeId::new(u));
        }
        let mut sorted = seen.clone();
        sorted.sort_unstable();
        if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge {
                u: w[0].0,
                v: w[0].1,
            });
        }
        for &(u, v) in &seen {
            if !dsu.union(u, v) {
                return Err(Error::Cycle { u, v });
            }
        }
        if dsu.components > 1 {
            return Err(Error::Disconnected {
                components: dsu.components,
            });
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Ok(Self::index(adjacency))
    }

    fn index(adjacency: Vec<Vec<NodeId>>) -> Self {
        let n = adjacency.len();
        let mut up = vec![None; n];
        let mut down = vec![Vec::new(); n];
        let mut tin = vec![0u32; n];
        let mut tout = vec![0u32; n];
        let mut preorder = Vec::with_capacity(n);
        // (node, next neighbor position)
        let mut stack = vec![(NodeId::new(0), 0usize)];
        tin[0] = 0;
        preorder.push(NodeId::new(0));
        let mut clock = 1u32;
        while let Some(&mut (v, ref mut pos)) = stack.last_mut() {
            if let Some(&w) = adjacency[v.index()].get(*pos) {
                *pos += 1;
                if Some(w) == up[v.index()] {
                    continue;
                }
                up[w.index()] = Some(v);
                down[v.index()].push(w);
                tin[w.index()] = clock;
                clock += 1;
                preorder.push(w);
                stack.push((w, 0));
            } else {
                tout[v.index()] = clock;
                stack.pop();
            }
        }
        UnrootedTree {
            adjacency,
            up,
            down,
            tin,
            tout,
            preorder,
        }
    }

    pub fn len(&self) -> usize {
        self.adjacency.len()
    }

    /// Always false; a tree has at least one node.
    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeId> + '_ {
        (0..self.len()).map(NodeId::new)
    }

    /// Sorted neighbor list of `v`.
    pub fn neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.adjacency[v.index()]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v.index()].len()
    }

    pub fn are_adjacent(&self, u: NodeId, v: NodeId) -> bool {
        self.adjacency[u.index()].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId)> + '_ {
        self.nodes().flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .filter(move |&&v| u < v)
                .map(move |&v| (u, v))
        })
    }

    #[inline]
    fn is_proper_ancestor0(&self, a: NodeId, b: NodeId) -> bool {
        let (a, b) = (a.index(), b.index());
        self.tin[a] < self.tin[b] && self.tout[b] <= self.tout[a]
    }

    /// The neighbor of `z` on the path from `z` to `x`; identifies the
    /// component of `S \ z` that contains `x`.
    ///
    /// # Panics
    /// If `z == x`.
    pub fn toward(&self, z: NodeId, x: NodeId) -> NodeId {
        assert_ne!(z, x, "toward() needs distinct nodes");
        if self.is_proper_ancestor0(z, x) {
            let kids = &self.down[z.index()];
            let t = self.tin[x.index()];
            let pos = kids.partition_point(|c| self.tin[c.index()] <= t);
            kids[pos - 1]
        } else {
            self.up[z.index()].expect("non-ancestor of x has a parent")
        }
    }

    /// Whether `z` lies on the path between `x` and `y` (with `x, y != z`).
    /// Returns false when `z` is one of `x`, `y`.
    pub fn separates(&self, z: NodeId, x: NodeId, y: NodeId) -> bool {
        if z == x || z == y || x == y {
            return false;
        }
        self.toward(z, x) != self.toward(z, y)
    }

    /// The node set of the component of `S \ removed` containing `target`.
    pub fn component_with(&self, removed: NodeId, target: NodeId) -> Result<NodeSet> {
        self.check(removed)?;
        self.check(target)?;
        if removed == target {
            return Err(Error::TargetRemoved { node: target });
        }
        let mut allowed = NodeSet::full(self.len());
        allowed.remove(removed);
        Ok(self.flood(target, &allowed))
    }

    /// Connected components of `S[set] \ r`, ordered by smallest member.
    pub fn components_of_induced(&self, set: &NodeSet, r: NodeId) -> Result<Vec<NodeSet>> {
        if !set.contains(r) {
            return Err(Error::NotMember { node: r });
        }
        if !self.is_connected_set(set) {
            return Err(Error::NotConnected);
        }
        let mut allowed = set.clone();
        allowed.remove(r);
        let mut parts: Vec<NodeSet> = self
            .neighbors(r)
            .iter()
            .filter(|&&c| allowed.contains(c))
            .map(|&c| self.flood(c, &allowed))
            .collect();
        parts.sort_by_key(|p| p.first());
        Ok(parts)
    }

    /// Nodes reachable from `start` inside `allowed`.
    fn flood(&self, start: NodeId, allowed: &NodeSet) -> NodeSet {
        let mut out = NodeSet::empty(self.len());
        out.insert(start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if allowed.contains(w) && out.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        out
    }

    /// Whether `set` is nonempty and induces a connected subgraph.
    pub fn is_connected_set(&self, set: &NodeSet) -> bool {
        match set.first() {
            None => false,
            Some(start) => self.flood(start, set).len() == set.len(),
        }
    }

    /// The smallest subtree of `S` containing every node of `set`.
    pub fn convex_hull(&self, set: &NodeSet) -> Result<NodeSet> {
        let total = set.len();
        if total == 0 {
            return Err(Error::EmptySet);
        }
        // count[v] = members of `set` below v in the rooting at node 0
        let mut count = vec![0usize; self.len()];
        for &v in self.preorder.iter().rev() {
            if set.contains(v) {
                count[v.index()] += 1;
            }
            if let Some(p) = self.up[v.index()] {
                count[p.index()] += count[v.index()];
            }
        }
        // The deepest node holding every member is the top of the hull.
        let top = self
            .preorder
            .iter()
            .rev()
            .find(|v| count[v.index()] == total)
            .copied()
            .expect("node 0 holds all members");
        let mut hull = NodeSet::empty(self.len());
        for v in self.nodes() {
            let c = count[v.index()];
            if c > 0 && (c < total || v == top) {
                hull.insert(v);
            }
        }
        Ok(hull)
    }

    /// The boundary `δ(A)`: nodes outside `set` adjacent to a node of `set`,
    /// ascending.
    pub fn boundary_of(&self, set: &NodeSet) -> Vec<NodeId> {
        let mut out = NodeSet::empty(self.len());
        for v in set {
            for &u in self.neighbors(v) {
                if !set.contains(u) {
                    out.insert(u);
                }
            }
        }
        out.to_vec()
    }

    /// The cut of `set`: directed pairs `(outside, inside)` over edges leaving
    /// the set, sorted lexicographically.
    pub fn cut_of(&self, set: &NodeSet) -> Vec<(NodeId, NodeId)> {
        let mut cut: Vec<_> = set
            .iter()
            .flat_map(|v| {
                self.neighbors(v)
                    .iter()
                    .filter(|&&u| !set.contains(u))
                    .map(move |&u| (u, v))
            })
            .collect();
        cut.sort_unstable();
        cut
    }

    /// A leaf centroid of the subtree `S[set]`: a non-leaf node `v` such that
    /// each component of `S[set] \ v` holds at most `⌊ℓ/2⌋` leaves of
    /// `S[set]` (`ℓ` its leaf count).
    ///
    /// Descends from the smallest-id non-leaf node, always moving to the
    /// neighbor whose largest component (by leaf count, then size) is
    /// lexicographically smallest. Linear in `|set|` after the initial
    /// `O(n)` index setup.
    pub fn leaf_centroid(&self, set: &NodeSet) -> Result<NodeId> {
        let size = set.len();
        if size < 3 {
            return Err(Error::TooFewNodes {
                needed: 3,
                found: size,
            });
        }
        if !self.is_connected_set(set) {
            return Err(Error::NotConnected);
        }
        let members = set.to_vec();
        let inside_degree = |v: NodeId| {
            self.neighbors(v)
                .iter()
                .filter(|&&u| set.contains(u))
                .count()
        };
        let is_leaf: Vec<bool> = members.iter().map(|&v| inside_degree(v) <= 1).collect();
        let mut local = vec![usize::MAX; self.len()];
        for (i, &v) in members.iter().enumerate() {
            local[v.index()] = i;
        }
        let total_leaves = is_leaf.iter().filter(|&&b| b).count();

        // Root S[set] at its first member; collect an order with parents first.
        let mut parent = vec![usize::MAX; size];
        let mut order = Vec::with_capacity(size);
        let mut seen = vec![false; size];
        seen[0] = true;
        order.push(0);
        let mut head = 0;
        while head < order.len() {
            let i = order[head];
            head += 1;
            for &w in self.neighbors(members[i]) {
                let j = local[w.index()];
                if j != usize::MAX && !seen[j] {
                    seen[j] = true;
                    parent[j] = i;
                    order.push(j);
                }
            }
        }
        let mut sub_leaves = vec![0usize; size];
        let mut sub_size = vec![0usize; size];
        for &i in order.iter().rev() {
            sub_leaves[i] += usize::from(is_leaf[i]);
            sub_size[i] += 1;
            if parent[i] != usize::MAX {
                sub_leaves[parent[i]] += sub_leaves[i];
                sub_size[parent[i]] += sub_size[i];
            }
        }
        // worst[i] = lexicographically largest (leaves, size) over components of S[set] \ i
        let mut worst = vec![(0usize, 0usize); size];
        for i in 0..size {
            let mut best = if parent[i] == usize::MAX {
                (0, 0)
            } else {
                (total_leaves - sub_leaves[i], size - sub_size[i])
            };
            for &w in self.neighbors(members[i]) {
                let j = local[w.index()];
                if j != usize::MAX && parent[j] == i {
                    best = best.max((sub_leaves[j], sub_size[j]));
                }
            }
            worst[i] = best;
        }

        let mut at = (0..size)
            .find(|&i| !is_leaf[i])
            .expect("a tree on 3+ nodes has an inner node");
        for _ in 0..size {
            if worst[at].0 <= total_leaves / 2 {
                return Ok(members[at]);
            }
            at = self
                .neighbors(members[at])
                .iter()
                .map(|w| local[w.index()])
                .filter(|&j| j != usize::MAX)
                .min_by_key(|&j| (worst[j], j))
                .expect("inner node has neighbors");
        }
        unreachable!("leaf-centroid descent strictly decreases and must terminate")
    }

    pub(crate) fn check(&self, v: NodeId) -> Result<()> {
        if v.index() < self.len() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: v.index(),
                len: self.len(),
            })
        }
    }
}

struct Dsu {
    parent: Vec<usize>,
    components: usize,
}

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            components: n,
        }
    }

    fn find(&mut self, mut v: usize) -> usize {
        while self.parent[v] != v {
            self.parent[v] = self.parent[self.parent[v]];
            v = self.parent[v];
        }
        v
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        self.parent[a] = b;
        self.components -= 1;
        true
    }
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn path(n: usize) -> UnrootedTree {
    UnrootedTree::new(n, (1..n).map(|i| (i - 1, i))).expect("path is a tree")
}

/// Star with center 0.
pub fn star(n: usize) -> UnrootedTree {
    UnrootedTree::new(n, (1..n).map(|i| (0, i))).expect("star is a tree")
}
