//! A plain bottom-up splay tree over the keys `0..n`, written against
//! left/right child pointers with no knowledge of search trees on trees.

use alloc::vec;
use alloc::vec::Vec;

use crate::node::NodeId;

const NIL: usize = usize::MAX;

#[derive(Clone, Debug)]
pub struct ClassicSplay {
    left: Vec<usize>,
    right: Vec<usize>,
    up: Vec<usize>,
    root: usize,
}

impl ClassicSplay {
    /// Builds the tree from a parent array, placing each child left or
    /// right of its parent by key order.
    pub fn from_parents(parents: &[Option<NodeId>]) -> Self {
        let n = parents.len();
        let mut t = ClassicSplay {
            left: vec![NIL; n],
            right: vec![NIL; n],
            up: vec![NIL; n],
            root: NIL,
        };
        for (i, p) in parents.iter().enumerate() {
            match p {
                None => t.root = i,
                Some(p) => {
                    let p = p.index();
                    t.up[i] = p;
                    if i < p {
                        t.left[p] = i;
                    } else {
                        t.right[p] = i;
                    }
                }
            }
        }
        t
    }

    pub fn parents(&self) -> Vec<Option<NodeId>> {
        self.up
            .iter()
            .map(|&p| (p != NIL).then(|| NodeId::new(p)))
            .collect()
    }

    pub fn root(&self) -> NodeId {
        NodeId::new(self.root)
    }

    fn rotate(&mut self, x: usize) {
        let p = self.up[x];
        let g = self.up[p];
        if self.left[p] == x {
            let b = self.right[x];
            self.left[p] = b;
            if b != NIL {
                self.up[b] = p;
            }
            self.right[x] = p;
        } else {
            let b = self.left[x];
            self.right[p] = b;
            if b != NIL {
                self.up[b] = p;
            }
            self.left[x] = p;
        }
        self.up[p] = x;
        self.up[x] = g;
        if g == NIL {
            self.root = x;
        } else if self.left[g] == p {
            self.left[g] = x;
        } else {
            self.right[g] = x;
        }
    }

    /// Splays `key` to the root, returning the number of rotations.
    pub fn splay(&mut self, key: NodeId) -> usize {
        let x = key.index();
        let mut rotations = 0;
        while self.up[x] != NIL {
            let p = self.up[x];
            let g = self.up[p];
            if g == NIL {
                self.rotate(x);
                rotations += 1;
            } else if (self.left[g] == p) == (self.left[p] == x) {
                self.rotate(p);
                self.rotate(x);
                rotations += 2;
            } else {
                self.rotate(x);
                self.rotate(x);
                rotations += 2;
            }
        }
        rotations
    }
}
