//! Search trees on trees.
//!
//! A search tree on an unrooted tree `S` is a rooted tree over the same
//! nodes whose every subtree induces a connected subgraph of `S`. This crate
//! provides the search-space queries, search trees with rotations, k-cut
//! transformations, optimal static trees, rotation-distance scripts, and the
//! SplayTT self-adjusting tree on a pointer-machine cost model.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod bst;
mod error;
pub mod fix;
pub mod machine;
mod node;
pub mod opt;
pub mod rotdist;
pub mod splay;
mod stt;
mod tree;

pub use error::{Error, Result};
pub use machine::{CostLedger, PointerMachine, PointerStep};
pub use node::{ids, NodeId, NodeSet, NodeSetIter};
pub use opt::FrequencyMap;
pub use splay::SplayTT;
pub use stt::{is_valid_search_tree, Rotation, SearchTree};
pub use tree::{path, star, UnrootedTree};
