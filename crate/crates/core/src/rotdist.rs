//! Rotation sequences between k-cut trees: reduce both trees level by level
//! to rooted copies of `S`, connect those, and undo the target's reduction.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::machine::{PointerMachine, PointerStep};
use crate::node::NodeId;
use crate::stt::{same_space, SearchTree};

/// One rotation: `node` moves above `parent`. Stored with both endpoints so
/// the step can be undone by rotating `parent` back above `node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScriptStep {
    pub node: NodeId,
    pub parent: NodeId,
}

impl ScriptStep {
    pub fn reversed(self) -> ScriptStep {
        ScriptStep {
            node: self.parent,
            parent: self.node,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RotationScript {
    pub steps: Vec<ScriptStep>,
}

impl RotationScript {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// The rotated node of every step.
    pub fn nodes(&self) -> Vec<NodeId> {
        self.steps.iter().map(|s| s.node).collect()
    }

    /// The script that undoes this one.
    pub fn reversed(&self) -> RotationScript {
        RotationScript {
            steps: self.steps.iter().rev().map(|s| s.reversed()).collect(),
        }
    }

    /// Drops every step that is immediately undone by the next one
    /// (repeatedly, so nested pairs vanish too).
    pub fn cancel_inverse_pairs(self) -> RotationScript {
        let mut kept: Vec<ScriptStep> = Vec::with_capacity(self.steps.len());
        for step in self.steps {
            if kept.last() == Some(&step.reversed()) {
                kept.pop();
            } else {
                kept.push(step);
            }
        }
        RotationScript { steps: kept }
    }

    pub fn append(&mut self, other: RotationScript) {
        self.steps.extend(other.steps);
    }

    /// Replays the script, failing if some step's node is not a child of
    /// the recorded parent at that point.
    pub fn apply(&self, tree: &mut SearchTree<'_>) -> Result<()> {
        self.apply_with(tree, |_| {})
    }

    /// Like [`RotationScript::apply`], calling `after` on every
    /// intermediate tree.
    pub fn apply_with(
        &self,
        tree: &mut SearchTree<'_>,
        mut after: impl FnMut(&SearchTree<'_>),
    ) -> Result<()> {
        for (i, s) in self.steps.iter().enumerate() {
            if tree.parent(s.node) != Some(s.parent) {
                return Err(Error::ScriptMismatch { step: i });
            }
            tree.rotate(s.node)?;
            after(tree);
        }
        Ok(())
    }
}

fn rotate_logged(tree: &mut SearchTree<'_>, x: NodeId, script: &mut RotationScript) {
    let r = tree.rotate(x).expect("scripted node has a parent");
    script.steps.push(ScriptStep {
        node: r.node,
        parent: r.parent,
    });
}

/// Re-roots a 1-cut tree at `target` by rotating each node of the search
/// path of `target` (below the root) in order. At most `n - 1` rotations;
/// every intermediate tree is 1-cut.
pub fn transform_1cut(tree: &mut SearchTree<'_>, target: NodeId) -> Result<RotationScript> {
    tree.space().check(target)?;
    if !tree.is_k_cut(1)? {
        return Err(Error::NotKCut { k: 1 });
    }
    let mut script = RotationScript::default();
    for &x in &tree.search_path(target)[1..] {
        rotate_logged(tree, x, &mut script);
    }
    Ok(script)
}

/// Turns a k-cut tree into a (k-1)-cut tree with at most `n - k`
/// rotations. Each rotation is at the first node `q` in preorder (smallest
/// child first) with boundary size `k`; its parent then has boundary size
/// `k - 1`.
pub fn reduce_cut(tree: &mut SearchTree<'_>, k: usize) -> Result<RotationScript> {
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    if !tree.is_k_cut(k)? {
        return Err(Error::NotKCut { k });
    }
    let mut script = RotationScript::default();
    while let Some(q) = tree
        .preorder()
        .into_iter()
        .find(|&q| tree.boundary_size(q) == k)
    {
        debug_assert_eq!(tree.parent(q).map(|p| tree.boundary_size(p)), Some(k - 1));
        rotate_logged(tree, q, &mut script);
    }
    Ok(script)
}

/// Reduces a k-cut tree to a 1-cut tree, one level at a time.
fn reduce_to_rooted(tree: &mut SearchTree<'_>, k: usize) -> Result<RotationScript> {
    let mut script = RotationScript::default();
    for level in (2..=k).rev() {
        script.append(reduce_cut(tree, level)?);
    }
    Ok(script)
}

/// A script turning `source` into `target`, both k-cut trees on the same
/// space; every intermediate tree is k-cut and the length is at most
/// [`rotation_bound`].
pub fn transform(
    source: &SearchTree<'_>,
    target: &SearchTree<'_>,
    k: usize,
) -> Result<RotationScript> {
    if k < 1 {
        return Err(Error::InvalidK { k, min: 1 });
    }
    if !same_space(source.space(), target.space()) {
        return Err(Error::MismatchedSpace);
    }
    for t in [source, target] {
        if !t.is_k_cut(k)? {
            return Err(Error::NotKCut { k });
        }
    }
    let mut a = source.clone();
    let mut b = target.clone();
    let mut script = reduce_to_rooted(&mut a, k)?;
    let back = reduce_to_rooted(&mut b, k)?;
    script.append(transform_1cut(&mut a, b.root())?);
    script.append(back.reversed());
    Ok(script.cancel_inverse_pairs())
}

/// Worst-case script length: `n - 1` to re-root plus `2 (n - j)` for every
/// level `j` from `k` down to 2. For `n >= k` this is
/// `(2k - 1) n - (k + 1) k + 1`; levels with `j > n` need no rotations.
pub fn rotation_bound(n: usize, k: usize) -> usize {
    let reroot = n.saturating_sub(1);
    reroot + (2..=k).map(|j| 2 * n.saturating_sub(j)).sum::<usize>()
}

/// Depth-first marking state of the pointer-based reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mark {
    Unvisited,
    Visited,
    Finished,
}

/// Cost of one reduction level run through the pointer machine.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct LevelStats {
    pub k: usize,
    pub moves: u64,
    pub rotations: u64,
}

/// The depth-first reduction of a k-cut tree to a (k-1)-cut tree through
/// pointer primitives. Starts and ends with the pointer at the root.
/// `observe` sees the machine and the marks after every primitive.
pub fn reduce_cut_pointer(
    machine: &mut PointerMachine<'_>,
    k: usize,
    mut observe: impl FnMut(&PointerMachine<'_>, &[Mark]),
) -> Result<LevelStats> {
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    if !machine.tree().is_k_cut(k)? {
        return Err(Error::NotKCut { k });
    }
    if machine.pointer() != machine.tree().root() {
        return Err(Error::IllegalMove("reduction must start at the root"));
    }
    let before = machine.ledger();
    let mut mark = vec![Mark::Unvisited; machine.tree().len()];
    loop {
        let y = machine.pointer();
        if mark[y.index()] == Mark::Unvisited {
            mark[y.index()] = Mark::Visited;
        }
        let tree = machine.tree();
        let next = tree
            .children(y)
            .iter()
            .copied()
            .find(|c| mark[c.index()] == Mark::Unvisited);
        match next {
            None => {
                debug_assert!(tree
                    .children(y)
                    .iter()
                    .all(|c| mark[c.index()] == Mark::Finished));
                mark[y.index()] = Mark::Finished;
                if tree.parent(y).is_none() {
                    observe(machine, &mark);
                    break;
                }
                machine.move_to_parent()?;
            }
            Some(x) if tree.boundary_size(x) < k => machine.move_to_child(x)?,
            Some(x) => {
                machine.rotate_child_edge(x)?;
                mark[x.index()] = Mark::Visited;
            }
        }
        observe(machine, &mark);
    }
    let used = machine.ledger() - before;
    Ok(LevelStats {
        k,
        moves: used.pointer_moves,
        rotations: used.rotations,
    })
}

/// Checks the marking invariants of the depth-first reduction at level
/// `k`: finished and unvisited marks are closed downward, the children of a
/// visited pointer node are finished or unvisited, and every visited or
/// finished node has boundary size below `k`.
pub fn marks_consistent(machine: &PointerMachine<'_>, marks: &[Mark], k: usize) -> bool {
    let t = machine.tree();
    let closed = t.space().nodes().all(|x| {
        let m = marks[x.index()];
        m == Mark::Visited || t.children(x).iter().all(|c| marks[c.index()] == m)
    });
    let y = machine.pointer();
    let at_pointer = marks[y.index()] != Mark::Visited
        || t.children(y)
            .iter()
            .all(|c| marks[c.index()] != Mark::Visited);
    let small = t
        .space()
        .nodes()
        .all(|x| marks[x.index()] == Mark::Unvisited || t.boundary_size(x) < k);
    closed && at_pointer && small
}

/// Summary of a pointer-machine transformation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PointerTransform {
    /// Levels reduced on the source side, then the target side.
    pub source_levels: Vec<LevelStats>,
    pub target_levels: Vec<LevelStats>,
    pub reroot_moves: u64,
    pub reroot_rotations: u64,
    /// Pointer primitives applied to the source, in order.
    pub steps: Vec<PointerStep>,
}

impl PointerTransform {
    pub fn moves(&self) -> u64 {
        self.steps
            .iter()
            .filter(|s| matches!(s, PointerStep::ToParent { .. } | PointerStep::ToChild(_)))
            .count() as u64
    }

    pub fn rotations(&self) -> u64 {
        self.steps.len() as u64 - self.moves()
    }
}

/// Transforms the machine's tree into `target` (both k-cut) using only
/// pointer primitives, starting and ending with the pointer at the root.
/// The target side is reduced on a scratch machine whose recorded
/// primitives are then undone in reverse on the real one.
pub fn transform_pointer(
    machine: &mut PointerMachine<'_>,
    target: &SearchTree<'_>,
    k: usize,
) -> Result<PointerTransform> {
    if k < 2 {
        return Err(Error::InvalidK { k, min: 2 });
    }
    if !same_space(machine.tree().space(), target.space()) {
        return Err(Error::MismatchedSpace);
    }
    if !target.is_k_cut(k)? {
        return Err(Error::NotKCut { k });
    }
    let mut out = PointerTransform::default();
    machine.record();
    for level in (2..=k).rev() {
        out.source_levels
            .push(reduce_cut_pointer(machine, level, |_, _| {})?);
    }

    let mut scratch = PointerMachine::new(target.clone());
    scratch.record();
    for level in (2..=k).rev() {
        out.target_levels
            .push(reduce_cut_pointer(&mut scratch, level, |_, _| {})?);
    }
    let undo = scratch.take_trace();
    let meet = scratch.tree().root();

    let before = machine.ledger();
    let path = machine.tree().search_path(meet);
    for &x in &path[1..] {
        machine.move_to_child(x)?;
        machine.rotate_at_pointer()?;
    }
    let used = machine.ledger() - before;
    out.reroot_moves = used.pointer_moves;
    out.reroot_rotations = used.rotations;

    for step in undo.iter().rev() {
        machine.apply_step(step.inverse())?;
    }
    out.steps = machine.take_trace();
    Ok(out)
}
