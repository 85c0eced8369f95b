//! Leaf marking and the division of a tree into small blocks around marked
//! nodes.
//!
//! The same procedure partitions the suffix tree into groups (stride `tau`)
//! and each group into micro-blocks for the compact heavy-path encoding.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::OrderedTree;

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Marking {
    pub stride: usize,
    pub marked: Vec<bool>,
    /// Whether the subtree of a node contains a marked leaf.
    pub has_marked: Vec<bool>,
    pub marked_leaves: usize,
    pub marked_internal: usize,
}

impl Marking {
    pub fn is_marked(&self, v: usize) -> bool {
        self.marked[v]
    }
}

/// Marks every `stride`-th leaf from the left, starting with the leftmost,
/// then every internal node with at least two children that have marked
/// descendants, then the root.
pub fn mark<T: OrderedTree>(t: &T, stride: usize) -> Result<Marking> {
    if stride < 2 {
        return Err(Error::Parameter("marking stride must be at least 2"));
    }
    let k = t.node_count();
    let mut marked = alloc::vec![false; k];
    let mut has_marked = alloc::vec![false; k];
    let mut leaf_index = 0;
    let mut marked_leaves = 0;
    for (v, m) in marked.iter_mut().enumerate() {
        if t.is_leaf(v) {
            if leaf_index % stride == 0 {
                *m = true;
                has_marked[v] = true;
                marked_leaves += 1;
            }
            leaf_index += 1;
        }
    }
    let mut marked_internal = 0;
    for v in (0..k).rev() {
        if t.is_leaf(v) {
            continue;
        }
        let with = t.children(v).iter().filter(|&&c| has_marked[c as usize]).count();
        has_marked[v] = with > 0;
        if with >= 2 || v == 0 {
            marked[v] = true;
            marked_internal += 1;
        }
    }
    Ok(Marking {
        stride,
        marked,
        has_marked,
        marked_leaves,
        marked_internal,
    })
}

/// A run of consecutive children of a marked node, exactly one of which has
/// marked descendants.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Block {
    pub top: usize,
    /// Child index range `first..end` within `children(top)`.
    pub first: usize,
    pub end: usize,
    /// Child index of the child with marked descendants.
    pub special: usize,
    /// Topmost marked node inside the special child.
    pub lower: usize,
}

impl Block {
    /// Preorder range covered by the run's children, including the nodes
    /// below `lower`.
    pub fn range<T: OrderedTree>(&self, t: &T) -> (usize, usize) {
        let kids = t.children(self.top);
        (kids[self.first] as usize, t.subtree_end(kids[self.end - 1] as usize))
    }

    /// Whether `lower` is an internal node, so that the block is cut there.
    pub fn is_split<T: OrderedTree>(&self, t: &T) -> bool {
        !t.is_leaf(self.lower)
    }

    /// Whether `v` is owned by this block: inside the range and not a
    /// proper descendant of `lower`.
    pub fn owns<T: OrderedTree>(&self, t: &T, v: usize) -> bool {
        let (s, e) = self.range(t);
        s <= v && v < e && !(self.lower < v && v < t.subtree_end(self.lower))
    }
}

pub fn topmost_marked<T: OrderedTree>(t: &T, m: &Marking, mut v: usize) -> usize {
    debug_assert!(m.has_marked[v]);
    while !m.marked[v] {
        v = t
            .children(v)
            .iter()
            .map(|&c| c as usize)
            .find(|&c| m.has_marked[c])
            .expect("unmarked node with marked descendants has a marked child path");
    }
    v
}

/// Splits the children of every marked internal node into runs. Children
/// without marked descendants join the run of the nearest special child to
/// their left, or the first run if there is none.
pub fn partition<T: OrderedTree>(t: &T, m: &Marking) -> Vec<Block> {
    let mut blocks = Vec::new();
    for u in 0..t.node_count() {
        if !m.marked[u] || t.is_leaf(u) {
            continue;
        }
        let kids = t.children(u);
        let specials: Vec<usize> = (0..kids.len()).filter(|&i| m.has_marked[kids[i] as usize]).collect();
        debug_assert!(!specials.is_empty());
        for (k, &s) in specials.iter().enumerate() {
            let first = if k == 0 { 0 } else { s };
            let end = specials.get(k + 1).copied().unwrap_or(kids.len());
            blocks.push(Block {
                top: u,
                first,
                end,
                special: s,
                lower: topmost_marked(t, m, kids[s] as usize),
            });
        }
    }
    blocks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{banana_index, build_index, random_text};
    use crate::tree::SuffixTree;
    use proptest::prelude::*;

    #[test]
    fn banana_tau_two() {
        let (idx, tree) = banana_index();
        let m = mark(&tree, 2).unwrap();
        let leaves: Vec<usize> = (0..tree.node_count())
            .filter(|&v| tree.is_leaf(v) && m.marked[v])
            .map(|v| tree.witness(v))
            .collect();
        assert_eq!(leaves, [6, 3, 0, 2]);
        let internal: Vec<usize> = (0..tree.node_count())
            .filter(|&v| !tree.is_leaf(v) && m.marked[v])
            .collect();
        assert_eq!(internal, [0]);
        let blocks = partition(&tree, &m);
        assert_eq!(blocks.len(), 4);
        let firsts: Vec<u16> = blocks
            .iter()
            .map(|b| tree.first_symbol(&idx, tree.children(0)[b.first] as usize))
            .collect();
        // children of the root start with $, a, b, n
        assert_eq!(firsts, [0, 1, 2, 3]);
        assert!(blocks.iter().all(|b| tree.is_leaf(b.lower)));
    }

    #[test]
    fn stride_larger_than_leaf_count() {
        let (_, tree) = banana_index();
        let m = mark(&tree, 100).unwrap();
        assert_eq!(m.marked_leaves, 1);
        assert_eq!(m.marked_internal, 1);
        assert!(m.marked[0]);
        assert!(m.marked[tree.leaf_of_rank(0)]);
        assert!(mark(&tree, 1).is_err());
    }

    proptest! {
        #[test]
        fn blocks_cover_every_non_root_node((raw, _) in random_text(1..300, 3), stride in 2usize..7) {
            let (_, tree): (_, SuffixTree) = build_index(&raw);
            let m = mark(&tree, stride).unwrap();
            prop_assert!(m.marked_internal <= m.marked_leaves);
            let blocks = partition(&tree, &m);
            let mut owners = alloc::vec![0usize; tree.node_count()];
            for b in &blocks {
                for v in 0..tree.node_count() {
                    if b.owns(&tree, v) {
                        owners[v] += 1;
                    }
                }
            }
            prop_assert_eq!(owners[0], 0);
            prop_assert!(owners[1..].iter().all(|&c| c == 1));
        }
    }
}
