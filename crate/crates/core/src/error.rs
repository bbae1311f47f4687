use core::fmt;

use crate::node::NodeId;

/// Errors reported by the search-tree-on-tree algorithms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A tree must have at least one node.
    EmptyTree,
    NodeOutOfRange {
        node: usize,
        len: usize,
    },
    SelfLoop {
        node: usize,
    },
    DuplicateEdge {
        u: usize,
        v: usize,
    },
    /// The edge closes a cycle.
    Cycle {
        u: usize,
        v: usize,
    },
    /// The edges do not connect all nodes.
    Disconnected {
        components: usize,
    },
    EmptySet,
    /// The node set does not induce a connected subtree.
    NotConnected,
    NotMember {
        node: NodeId,
    },
    /// `component_with` was asked for the component of the removed node itself.
    TargetRemoved {
        node: NodeId,
    },
    TooFewNodes {
        needed: usize,
        found: usize,
    },
    RootRotation {
        node: NodeId,
    },
    InvalidK {
        k: usize,
        min: usize,
    },
    NotKCut {
        k: usize,
    },
    NotSteinerClosed,
    /// None of `x`, `p`, `g` separates the other two.
    NonSeparatingTriple {
        x: NodeId,
        p: NodeId,
        g: NodeId,
    },
    InvalidSearchTree(&'static str),
    MismatchedSpace,
    TooLarge {
        n: usize,
        cap: usize,
    },
    IllegalMove(&'static str),
    ScriptMismatch {
        step: usize,
    },
    LengthMismatch {
        expected: usize,
        found: usize,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyTree => write!(f, "a tree needs at least one node"),
            Error::NodeOutOfRange { node, len } => {
                write!(f, "node {node} out of range for {len} nodes")
            }
            Error::SelfLoop { node } => write!(f, "self-loop at node {node}"),
            Error::DuplicateEdge { u, v } => write!(f, "duplicate edge {u}-{v}"),
            Error::Cycle { u, v } => write!(f, "edge {u}-{v} closes a cycle"),
            Error::Disconnected { components } => {
                write!(f, "graph is disconnected ({components} components)")
            }
            Error::EmptySet => write!(f, "node set is empty"),
            Error::NotConnected => write!(f, "node set does not induce a connected subtree"),
            Error::NotMember { node } => write!(f, "node {node} is not in the set"),
            Error::TargetRemoved { node } => {
                write!(f, "target node {node} is the removed node")
            }
            Error::TooFewNodes { needed, found } => {
                write!(f, "need at least {needed} nodes, found {found}")
            }
            Error::RootRotation { node } => write!(f, "cannot rotate at root {node}"),
            Error::InvalidK { k, min } => write!(f, "k = {k} is invalid here (minimum {min})"),
            Error::NotKCut { k } => write!(f, "search tree is not {k}-cut"),
            Error::NotSteinerClosed => write!(f, "search tree is not Steiner-closed"),
            Error::NonSeparatingTriple { x, p, g } => {
                write!(f, "non-separating triple x={x} p={p} g={g}")
            }
            Error::InvalidSearchTree(why) => write!(f, "invalid search tree: {why}"),
            Error::MismatchedSpace => write!(f, "search trees are over different spaces"),
            Error::TooLarge { n, cap } => write!(f, "{n} nodes exceeds the cap of {cap}"),
            Error::IllegalMove(why) => write!(f, "illegal pointer move: {why}"),
            Error::ScriptMismatch { step } => {
                write!(f, "rotation script does not match the tree at step {step}")
            }
            Error::LengthMismatch { expected, found } => {
                write!(f, "expected {expected} entries, found {found}")
            }
        }
    }
}

impl core::error::Error for Error {}
