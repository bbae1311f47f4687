//! The dynamic cost model: a single pointer walking a search tree, with
//! unit-cost moves and rotations plus one unit per search.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::node::NodeId;
use crate::stt::{Rotation, SearchTree};

/// Counters for the dynamic model. `oracle_calls` is diagnostic and not
/// part of [`CostLedger::model_cost`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CostLedger {
    pub pointer_moves: u64,
    pub rotations: u64,
    pub searches: u64,
    pub oracle_calls: u64,
}

impl CostLedger {
    pub fn model_cost(&self) -> u64 {
        self.pointer_moves + self.rotations + self.searches
    }

    pub const CSV_HEADER: &'static str = "moves,rotations,searches,oracle_calls";
}

impl fmt::Display for CostLedger {
    /// One CSV row matching [`CostLedger::CSV_HEADER`].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            self.pointer_moves, self.rotations, self.searches, self.oracle_calls
        )
    }
}

impl core::ops::Sub for CostLedger {
    type Output = CostLedger;

    fn sub(self, rhs: CostLedger) -> CostLedger {
        CostLedger {
            pointer_moves: self.pointer_moves - rhs.pointer_moves,
            rotations: self.rotations - rhs.rotations,
            searches: self.searches - rhs.searches,
            oracle_calls: self.oracle_calls - rhs.oracle_calls,
        }
    }
}

/// One pointer primitive, recorded with enough context to undo it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointerStep {
    ToParent {
        from: NodeId,
    },
    ToChild(NodeId),
    /// The node at the pointer rotated above its parent.
    RotateUp {
        node: NodeId,
        parent: NodeId,
    },
    /// A child of the node at the pointer rotated above it; the pointer
    /// stays on its node, which is now one level lower.
    RotateChild {
        node: NodeId,
        child: NodeId,
    },
}

impl PointerStep {
    /// The step that undoes `self` when applied right after it.
    pub fn inverse(self) -> PointerStep {
        match self {
            PointerStep::ToParent { from } => PointerStep::ToChild(from),
            PointerStep::ToChild(c) => PointerStep::ToParent { from: c },
            PointerStep::RotateUp { node, parent } => PointerStep::RotateChild {
                node,
                child: parent,
            },
            PointerStep::RotateChild { node, child } => PointerStep::RotateUp {
                node,
                parent: child,
            },
        }
    }
}

/// A search tree with a pointer and a cost ledger. All tree changes go
/// through the pointer primitives.
#[derive(Clone, Debug)]
pub struct PointerMachine<'s> {
    tree: SearchTree<'s>,
    pointer: NodeId,
    ledger: CostLedger,
    trace: Option<Vec<PointerStep>>,
}

impl<'s> PointerMachine<'s> {
    /// Wraps `tree` with the pointer at its root.
    pub fn new(tree: SearchTree<'s>) -> Self {
        let pointer = tree.root();
        let mut machine = PointerMachine {
            tree,
            pointer,
            ledger: CostLedger::default(),
            trace: None,
        };
        machine.ledger.oracle_calls = machine.tree.oracle_calls();
        machine
    }

    pub fn tree(&self) -> &SearchTree<'s> {
        &self.tree
    }

    pub fn into_tree(self) -> SearchTree<'s> {
        self.tree
    }

    pub fn pointer(&self) -> NodeId {
        self.pointer
    }

    pub fn ledger(&self) -> CostLedger {
        self.ledger
    }

    /// Starts recording primitives (discarding any earlier recording).
    pub fn record(&mut self) {
        self.trace = Some(Vec::new());
    }

    pub fn take_trace(&mut self) -> Vec<PointerStep> {
        self.trace.take().unwrap_or_default()
    }

    fn log(&mut self, step: PointerStep) {
        if let Some(trace) = &mut self.trace {
            trace.push(step);
        }
    }

    fn sync_oracle(&mut self) {
        self.ledger.oracle_calls = self.tree.oracle_calls();
    }

    /// Resets the pointer to the root and charges one search.
    pub fn begin_search(&mut self) {
        self.pointer = self.tree.root();
        self.ledger.searches += 1;
    }

    pub fn move_to_parent(&mut self) -> Result<()> {
        let from = self.pointer;
        let p = self
            .tree
            .parent(from)
            .ok_or(Error::IllegalMove("pointer is at the root"))?;
        self.pointer = p;
        self.ledger.pointer_moves += 1;
        self.log(PointerStep::ToParent { from });
        Ok(())
    }

    pub fn move_to_child(&mut self, c: NodeId) -> Result<()> {
        self.tree.space().check(c)?;
        if self.tree.parent(c) != Some(self.pointer) {
            return Err(Error::IllegalMove(
                "target is not a child of the pointer node",
            ));
        }
        self.pointer = c;
        self.ledger.pointer_moves += 1;
        self.log(PointerStep::ToChild(c));
        Ok(())
    }

    /// Rotates the pointer node above its parent; the pointer follows its
    /// node.
    pub fn rotate_at_pointer(&mut self) -> Result<Rotation> {
        let r = self.tree.rotate(self.pointer)?;
        self.ledger.rotations += 1;
        self.sync_oracle();
        self.log(PointerStep::RotateUp {
            node: r.node,
            parent: r.parent,
        });
        Ok(r)
    }

    /// Rotates the edge between the pointer node and its child `c`, moving
    /// `c` above it. The pointer stays on its node.
    pub fn rotate_child_edge(&mut self, c: NodeId) -> Result<Rotation> {
        self.tree.space().check(c)?;
        if self.tree.parent(c) != Some(self.pointer) {
            return Err(Error::IllegalMove(
                "rotation target is not a child of the pointer node",
            ));
        }
        let r = self.tree.rotate(c)?;
        self.ledger.rotations += 1;
        self.sync_oracle();
        self.log(PointerStep::RotateChild {
            node: self.pointer,
            child: c,
        });
        Ok(r)
    }

    /// Walks the pointer from its current node to `target` through their
    /// lowest common ancestor.
    pub fn walk_to(&mut self, target: NodeId) -> Result<()> {
        self.tree.space().check(target)?;
        let down = self.tree.search_path(target);
        while !down.contains(&self.pointer) {
            self.move_to_parent()?;
        }
        let at = down
            .iter()
            .position(|&v| v == self.pointer)
            .expect("pointer is on the path");
        for &v in &down[at + 1..] {
            self.move_to_child(v)?;
        }
        Ok(())
    }

    /// Applies a recorded step, checking that the pointer is where the step
    /// expects it.
    pub fn apply_step(&mut self, step: PointerStep) -> Result<()> {
        match step {
            PointerStep::ToParent { from } => {
                if self.pointer != from {
                    return Err(Error::IllegalMove("recorded move starts elsewhere"));
                }
                self.move_to_parent()
            }
            PointerStep::ToChild(c) => self.move_to_child(c),
            PointerStep::RotateUp { node, parent } => {
                if self.pointer != node || self.tree.parent(node) != Some(parent) {
                    return Err(Error::IllegalMove("recorded rotation does not match"));
                }
                self.rotate_at_pointer().map(|_| ())
            }
            PointerStep::RotateChild { node, child } => {
                if self.pointer != node {
                    return Err(Error::IllegalMove("recorded rotation does not match"));
                }
                self.rotate_child_edge(child).map(|_| ())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::path;

    #[test]
    fn moves_and_search_charges() {
        let p = path(3);
        let t = SearchTree::rooted_at(&p, NodeId::new(0)).unwrap();
        let mut m = PointerMachine::new(t);
        m.begin_search();
        m.move_to_child(NodeId::new(1)).unwrap();
        m.move_to_child(NodeId::new(2)).unwrap();
        assert_eq!(m.pointer(), NodeId::new(2));
        let l = m.ledger();
        assert_eq!((l.pointer_moves, l.rotations, l.searches), (2, 0, 1));
        assert_eq!(l.model_cost(), 3);
        assert!(m.move_to_child(NodeId::new(0)).is_err());
    }

    #[test]
    fn rotation_keeps_pointer_on_its_node() {
        let p = path(3);
        let t = SearchTree::rooted_at(&p, NodeId::new(0)).unwrap();
        let mut m = PointerMachine::new(t);
        assert!(m.rotate_at_pointer().is_err());
        m.move_to_child(NodeId::new(1)).unwrap();
        m.rotate_at_pointer().unwrap();
        assert_eq!(m.pointer(), NodeId::new(1));
        assert_eq!(m.tree().root(), NodeId::new(1));
        assert_eq!(m.tree().depth(m.pointer()), 1);
    }

    #[test]
    fn inverse_steps_restore_state() {
        let p = path(4);
        let t = SearchTree::rooted_at(&p, NodeId::new(0)).unwrap();
        let start = t.clone();
        let mut m = PointerMachine::new(t);
        m.record();
        m.move_to_child(NodeId::new(1)).unwrap();
        m.rotate_child_edge(NodeId::new(2)).unwrap();
        m.rotate_at_pointer().unwrap();
        m.move_to_parent().unwrap();
        let trace = m.take_trace();
        for step in trace.iter().rev() {
            m.apply_step(step.inverse()).unwrap();
        }
        assert_eq!(m.pointer(), NodeId::new(0));
        assert_eq!(m.tree(), &start);
    }

    #[test]
    fn ledger_csv_row() {
        let l = CostLedger {
            pointer_moves: 3,
            rotations: 2,
            searches: 1,
            oracle_calls: 9,
        };
        assert_eq!(alloc::format!("{l}"), "3,2,1,9");
    }
}
