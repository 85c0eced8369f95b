//! Induced subtrees and heavy-path decompositions over them.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::{Location, NodeId, OrderedTree, SuffixTree, NONE};
use crate::error::{Error, Result};
use crate::suffix::TextIndex;
use crate::symbols::Symbol;

/// The compressed tree induced by a set of suffix tree nodes.
///
/// The parent of a member is its nearest member ancestor, so an edge of the
/// subtree may span several edges of the suffix tree. Subtree ids follow the
/// preorder of the suffix tree, which also keeps children in symbol order.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SubTree {
    full: Vec<u32>,
    parent: Vec<u32>,
    child_start: Vec<u32>,
    child_list: Vec<u32>,
    end: Vec<u32>,
    leaf_start: Vec<u32>,
    leaf_count: Vec<u32>,
    leaves: Vec<u32>,
}

impl SubTree {
    /// Builds the subtree induced by `members`. The smallest member must be
    /// an ancestor of every other member, and no two children of a member may
    /// branch off the same suffix tree edge.
    pub fn induced(tree: &SuffixTree, members: &[NodeId]) -> Result<Self> {
        let mut full: Vec<u32> = members.iter().map(|&v| v as u32).collect();
        full.sort_unstable();
        full.dedup();
        if full.is_empty() {
            return Err(Error::Contract("induced subtree needs at least one member"));
        }
        let k = full.len();
        let root = full[0] as usize;
        let mut parent = alloc::vec![NONE; k];
        let mut kids: Vec<Vec<u32>> = alloc::vec![Vec::new(); k];
        let mut stack: Vec<u32> = Vec::new();
        for i in 0..k {
            let v = full[i] as usize;
            if !tree.is_ancestor(root, v) {
                return Err(Error::Contract("subtree members do not share the first member as ancestor"));
            }
            while let Some(&top) = stack.last() {
                if tree.is_ancestor(full[top as usize] as usize, v) {
                    break;
                }
                stack.pop();
            }
            if let Some(&top) = stack.last() {
                parent[i] = top;
                kids[top as usize].push(i as u32);
            }
            stack.push(i as u32);
        }
        for (i, ks) in kids.iter().enumerate() {
            for w in ks.windows(2) {
                let a = full[w[0] as usize] as usize;
                let b = full[w[1] as usize] as usize;
                if tree.lca(a, b) != full[i] as usize {
                    return Err(Error::Contract("subtree children share a suffix tree edge"));
                }
            }
        }
        let mut child_start = Vec::with_capacity(k + 1);
        let mut child_list = Vec::with_capacity(k.saturating_sub(1));
        for ks in &kids {
            child_start.push(child_list.len() as u32);
            child_list.extend_from_slice(ks);
        }
        child_start.push(child_list.len() as u32);

        let mut end = alloc::vec![0u32; k];
        let mut leaf_count = alloc::vec![0u32; k];
        for i in (0..k).rev() {
            end[i] = i as u32 + 1;
            if kids[i].is_empty() {
                leaf_count[i] = 1;
            }
            if let Some(&last) = kids[i].last() {
                end[i] = end[last as usize];
            }
            let p = parent[i];
            if p != NONE {
                leaf_count[p as usize] += leaf_count[i];
            }
        }
        let mut leaves = Vec::new();
        let mut leaf_start = alloc::vec![0u32; k];
        for i in 0..k {
            leaf_start[i] = leaves.len() as u32;
            if kids[i].is_empty() {
                leaves.push(i as u32);
            }
        }
        Ok(SubTree {
            full,
            parent,
            child_start,
            child_list,
            end,
            leaf_start,
            leaf_count,
            leaves,
        })
    }

    pub fn len(&self) -> usize {
        self.full.len()
    }

    pub fn is_empty(&self) -> bool {
        self.full.is_empty()
    }

    /// Suffix tree node of subtree node `i`.
    pub fn full_id(&self, i: usize) -> NodeId {
        self.full[i] as usize
    }

    pub fn members(&self) -> &[u32] {
        &self.full
    }

    /// Subtree id of a suffix tree node, if it is a member.
    pub fn index_of(&self, v: NodeId) -> Option<usize> {
        self.full.binary_search(&(v as u32)).ok()
    }

    pub fn parent(&self, i: usize) -> Option<usize> {
        match self.parent[i] {
            NONE => None,
            p => Some(p as usize),
        }
    }

    pub fn depth(&self, tree: &SuffixTree, i: usize) -> usize {
        tree.depth(self.full_id(i))
    }

    pub fn leaf_count(&self, i: usize) -> usize {
        self.leaf_count[i] as usize
    }

    /// Subtree leaves in left-to-right order.
    pub fn leaves(&self) -> &[u32] {
        &self.leaves
    }

    /// Leaves below `i`, left to right.
    pub fn leaves_below(&self, i: usize) -> &[u32] {
        let s = self.leaf_start[i] as usize;
        &self.leaves[s..s + self.leaf_count[i] as usize]
    }

    pub fn is_ancestor(&self, a: usize, b: usize) -> bool {
        a <= b && b < self.end[a] as usize
    }

    /// Child of `i` whose edge starts with `c`.
    pub fn child_by_symbol(&self, tree: &SuffixTree, idx: &TextIndex, i: usize, c: Symbol) -> Option<usize> {
        let d = self.depth(tree, i);
        let kids = self.children(i);
        kids.binary_search_by_key(&c, |&k| tree.symbol_at(idx, self.full_id(k as usize), d))
            .ok()
            .map(|p| kids[p] as usize)
    }

    /// Symbol-by-symbol descent from subtree node `from` that only follows
    /// subtree edges. This is the reference answer for restricted unrooted
    /// LCP queries.
    pub fn naive_descend(&self, tree: &SuffixTree, idx: &TextIndex, from: usize, s: &[Symbol]) -> (Location, usize) {
        let mut at = from;
        let mut matched = 0;
        loop {
            if matched == s.len() {
                return (Location::Node(self.full_id(at)), matched);
            }
            let d = self.depth(tree, at);
            let Some(b) = self.child_by_symbol(tree, idx, at, s[matched]) else {
                return (Location::Node(self.full_id(at)), matched);
            };
            let fb = self.full_id(b);
            let el = tree.depth(fb) - d;
            let mut k = 0;
            while k < el && matched + k < s.len() && tree.symbol_at(idx, fb, d + k) == s[matched + k] {
                k += 1;
            }
            matched += k;
            if k < el {
                return (tree.location_at_depth(fb, d + k), matched);
            }
            at = b;
        }
    }
}

impl OrderedTree for SubTree {
    fn node_count(&self) -> usize {
        self.full.len()
    }

    fn children(&self, v: usize) -> &[u32] {
        &self.child_list[self.child_start[v] as usize..self.child_start[v + 1] as usize]
    }

    fn subtree_end(&self, v: usize) -> usize {
        self.end[v] as usize
    }
}

/// Disjoint root-to-leaf paths, each following a child with the most leaves
/// (the leftmost such child on ties).
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct HeavyPathDecomposition {
    heavy_child: Vec<u32>,
    path_of: Vec<u32>,
    pos_in_path: Vec<u32>,
    path_start: Vec<u32>,
    path_nodes: Vec<u32>,
}

impl HeavyPathDecomposition {
    pub fn of(sub: &SubTree) -> Self {
        let k = sub.len();
        let mut heavy_child = alloc::vec![NONE; k];
        for (v, hc) in heavy_child.iter_mut().enumerate() {
            for &c in sub.children(v) {
                if *hc == NONE || sub.leaf_count(c as usize) > sub.leaf_count(*hc as usize) {
                    *hc = c;
                }
            }
        }
        let mut path_of = alloc::vec![0u32; k];
        let mut pos_in_path = alloc::vec![0u32; k];
        let mut path_start = Vec::new();
        let mut path_nodes = Vec::with_capacity(k);
        for v in 0..k {
            let head = match sub.parent(v) {
                None => true,
                Some(p) => heavy_child[p] != v as u32,
            };
            if !head {
                continue;
            }
            let pid = path_start.len() as u32;
            path_start.push(path_nodes.len() as u32);
            let mut x = v as u32;
            let mut pos = 0;
            while x != NONE {
                path_of[x as usize] = pid;
                pos_in_path[x as usize] = pos;
                pos += 1;
                path_nodes.push(x);
                x = heavy_child[x as usize];
            }
        }
        path_start.push(path_nodes.len() as u32);
        HeavyPathDecomposition {
            heavy_child,
            path_of,
            pos_in_path,
            path_start,
            path_nodes,
        }
    }

    pub fn heavy_child(&self, v: usize) -> Option<usize> {
        match self.heavy_child[v] {
            NONE => None,
            c => Some(c as usize),
        }
    }

    pub fn path_id(&self, v: usize) -> usize {
        self.path_of[v] as usize
    }

    pub fn pos_in_path(&self, v: usize) -> usize {
        self.pos_in_path[v] as usize
    }

    pub fn path_count(&self) -> usize {
        self.path_start.len() - 1
    }

    pub fn path(&self, pid: usize) -> &[u32] {
        &self.path_nodes[self.path_start[pid] as usize..self.path_start[pid + 1] as usize]
    }

    pub fn head(&self, v: usize) -> usize {
        self.path(self.path_id(v))[0] as usize
    }

    /// The leaf terminating the path through `v`.
    pub fn leaf(&self, v: usize) -> usize {
        *self.path(self.path_id(v)).last().unwrap() as usize
    }

    /// Number of distinct paths met on the way from the root to `v`.
    pub fn crossings(&self, sub: &SubTree, mut v: usize) -> usize {
        let mut count = 1;
        loop {
            let h = self.head(v);
            match sub.parent(h) {
                Some(p) => {
                    count += 1;
                    v = p;
                }
                None => return count,
            }
        }
    }
}

/// Heavy-path decomposition of the member nodes below `root`. Every member
/// other than `root` must have its suffix tree parent as a member.
pub fn heavy_path_decompose(
    tree: &SuffixTree,
    root: NodeId,
    membership: impl Fn(NodeId) -> bool,
) -> Result<(SubTree, HeavyPathDecomposition)> {
    if !membership(root) {
        return Err(Error::Contract("subtree root is not a member"));
    }
    let members: Vec<NodeId> = (root..tree.subtree_end(root)).filter(|&v| membership(v)).collect();
    for &v in &members[1..] {
        if !membership(tree.parent_raw(v)) {
            return Err(Error::Contract("membership does not induce a connected subtree"));
        }
    }
    let sub = SubTree::induced(tree, &members)?;
    let hpd = HeavyPathDecomposition::of(&sub);
    Ok((sub, hpd))
}
