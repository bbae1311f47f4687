//! SplayTT: splaying generalized to Steiner-closed search trees on trees.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::fix::steinerize;
use crate::machine::{CostLedger, PointerMachine};
use crate::node::{NodeId, NodeSet};
use crate::stt::{Rotation, SearchTree};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StepKind {
    /// One rotation at `x`.
    Zig,
    /// `p` lies between `x` and `g`: rotate at `p`, then at `x`.
    ZigZig,
    /// `x` lies between `p` and `g`: rotate at `x` twice.
    ZigZag,
}

/// The next step of splaying `x` up to become a child of `stop` (or the
/// root when `stop` is `None`).
pub fn classify_step(tree: &SearchTree<'_>, x: NodeId, stop: Option<NodeId>) -> Result<StepKind> {
    let p = tree.parent(x).ok_or(Error::RootRotation { node: x })?;
    let g = tree.parent(p);
    if g == stop {
        return Ok(StepKind::Zig);
    }
    let g = g.expect("stop is an ancestor of x");
    let s = tree.space();
    if s.separates(p, x, g) {
        Ok(StepKind::ZigZig)
    } else if s.separates(x, p, g) {
        Ok(StepKind::ZigZag)
    } else {
        Err(Error::NonSeparatingTriple { x, p, g })
    }
}

/// Splays `x` on a bare tree (no pointer, no costs). Returns the steps
/// taken.
pub fn splay(tree: &mut SearchTree<'_>, x: NodeId, stop: Option<NodeId>) -> Result<Vec<StepKind>> {
    let mut steps = Vec::new();
    while tree.parent(x) != stop {
        let kind = classify_step(tree, x, stop)?;
        match kind {
            StepKind::Zig => {
                tree.rotate(x)?;
            }
            StepKind::ZigZig => {
                let p = tree.parent(x).expect("x has a parent");
                tree.rotate(p)?;
                tree.rotate(x)?;
            }
            StepKind::ZigZag => {
                tree.rotate(x)?;
                tree.rotate(x)?;
            }
        }
        steps.push(kind);
    }
    Ok(steps)
}

/// Branching nodes on the search path of `x`, root first: nodes `p` with
/// boundary size 2 whose child `q` on the path has boundary size 1.
pub fn branching_nodes(tree: &SearchTree<'_>, x: NodeId) -> Vec<NodeId> {
    let path = tree.search_path(x);
    path.windows(2)
        .filter(|w| tree.boundary_size(w[0]) == 2 && tree.boundary_size(w[1]) == 1)
        .map(|w| w[0])
        .collect()
}

/// Branching nodes from the definition: search-path nodes with three or
/// more neighbors in the hull of the path. A test oracle for
/// [`branching_nodes`].
pub fn branching_nodes_direct(tree: &SearchTree<'_>, x: NodeId) -> Vec<NodeId> {
    let s = tree.space();
    let path = tree.search_path(x);
    let hull = s
        .convex_hull(&NodeSet::from_nodes(s.len(), path.iter().copied()))
        .expect("nonempty path");
    path.into_iter()
        .filter(|&v| s.neighbors(v).iter().filter(|&&w| hull.contains(w)).count() >= 3)
        .collect()
}

/// Hooks into a search. All methods default to doing nothing.
pub trait SplayObserver {
    /// After every rotation.
    fn rotated(&mut self, _tree: &SearchTree<'_>, _rotation: &Rotation) {}
    /// Before an elementary step at `x`.
    fn step_started(&mut self, _tree: &SearchTree<'_>, _x: NodeId, _kind: StepKind) {}
    fn step_finished(&mut self, _tree: &SearchTree<'_>, _x: NodeId, _kind: StepKind) {}
    fn splay_started(&mut self, _tree: &SearchTree<'_>, _x: NodeId, _stop: Option<NodeId>) {}
    fn splay_finished(&mut self, _tree: &SearchTree<'_>, _x: NodeId, _zig_zigs_and_zags: usize) {}
    /// After phase 1, with the branching nodes it removed.
    fn phase_one_finished(&mut self, _tree: &SearchTree<'_>, _x: NodeId, _branching: &[NodeId]) {}
}

impl SplayObserver for () {}

/// What one search did.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub node: NodeId,
    /// Depth of the node before the search.
    pub depth: usize,
    pub rotations: u64,
    pub moves: u64,
    pub zig: usize,
    pub zigzig: usize,
    pub zigzag: usize,
    pub branching: usize,
}

/// A self-adjusting search tree. Every search walks down to its target,
/// splays each branching node of the path up to the next branching node
/// above it (deepest first), then splays the target to the root.
#[derive(Clone, Debug)]
pub struct SplayTT<'s> {
    machine: PointerMachine<'s>,
}

impl<'s> SplayTT<'s> {
    /// Starts from a Steiner-closed tree.
    pub fn new(tree: SearchTree<'s>) -> Result<Self> {
        if !tree.is_steiner_closed() {
            return Err(Error::NotSteinerClosed);
        }
        Ok(SplayTT {
            machine: PointerMachine::new(tree),
        })
    }

    /// Starts from any search tree, making it Steiner-closed first. The
    /// preparation is not charged to the ledger.
    pub fn with_steinerize(tree: SearchTree<'s>) -> Self {
        let tree = if tree.is_steiner_closed() {
            tree
        } else {
            steinerize(&tree)
        };
        SplayTT {
            machine: PointerMachine::new(tree),
        }
    }

    pub fn tree(&self) -> &SearchTree<'s> {
        self.machine.tree()
    }

    pub fn into_tree(self) -> SearchTree<'s> {
        self.machine.into_tree()
    }

    /// Costs since construction. Oracle calls made while building the
    /// initial tree are included in `oracle_calls` only.
    pub fn ledger(&self) -> CostLedger {
        self.machine.ledger()
    }

    pub fn search(&mut self, x: NodeId) -> Result<SearchStats> {
        self.search_with(x, &mut ())
    }

    pub fn search_with(
        &mut self,
        x: NodeId,
        observer: &mut impl SplayObserver,
    ) -> Result<SearchStats> {
        self.tree().space().check(x)?;
        let before = self.machine.ledger();
        let m = &mut self.machine;
        m.begin_search();
        let path = m.tree().search_path(x);
        let mut branching = Vec::new();
        for w in path.windows(2) {
            m.move_to_child(w[1])?;
            let t = m.tree();
            if t.boundary_size(w[0]) == 2 && t.boundary_size(w[1]) == 1 {
                branching.push(w[0]);
            }
        }
        let mut stats = SearchStats {
            node: x,
            depth: path.len(),
            branching: branching.len(),
            ..Default::default()
        };

        if let Some(&deepest) = branching.last() {
            while m.pointer() != deepest {
                m.move_to_parent()?;
            }
            for i in (0..branching.len()).rev() {
                let stop = i.checked_sub(1).map(|j| branching[j]);
                splay_at_pointer(m, stop, &mut stats, observer)?;
                if stop.is_some() {
                    m.move_to_parent()?;
                }
            }
            observer.phase_one_finished(m.tree(), x, &branching);
            m.walk_to(x)?;
        } else {
            observer.phase_one_finished(m.tree(), x, &branching);
        }
        splay_at_pointer(m, None, &mut stats, observer)?;

        let used = m.ledger() - before;
        stats.rotations = used.rotations;
        stats.moves = used.pointer_moves;
        Ok(stats)
    }

    /// Serves a whole sequence.
    pub fn serve(&mut self, sequence: &[NodeId]) -> Result<CostLedger> {
        for &x in sequence {
            self.search(x)?;
        }
        Ok(self.ledger())
    }
}

/// Splays the node at the pointer until its parent is `stop`, rotating
/// only at the pointer. A ZIG-ZIG costs two pointer moves (up to the
/// parent and back down).
fn splay_at_pointer(
    m: &mut PointerMachine<'_>,
    stop: Option<NodeId>,
    stats: &mut SearchStats,
    observer: &mut impl SplayObserver,
) -> Result<()> {
    let x = m.pointer();
    observer.splay_started(m.tree(), x, stop);
    let mut z = 0;
    while m.tree().parent(x) != stop {
        let kind = classify_step(m.tree(), x, stop)?;
        observer.step_started(m.tree(), x, kind);
        match kind {
            StepKind::Zig => {
                let r = m.rotate_at_pointer()?;
                observer.rotated(m.tree(), &r);
                stats.zig += 1;
            }
            StepKind::ZigZig => {
                m.move_to_parent()?;
                let r = m.rotate_at_pointer()?;
                observer.rotated(m.tree(), &r);
                m.move_to_child(x)?;
                let r = m.rotate_at_pointer()?;
                observer.rotated(m.tree(), &r);
                stats.zigzig += 1;
                z += 1;
            }
            StepKind::ZigZag => {
                for _ in 0..2 {
                    let r = m.rotate_at_pointer()?;
                    observer.rotated(m.tree(), &r);
                }
                stats.zigzag += 1;
                z += 1;
            }
        }
        observer.step_finished(m.tree(), x, kind);
    }
    observer.splay_finished(m.tree(), x, z);
    Ok(())
}
