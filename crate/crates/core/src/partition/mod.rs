//! The marked-node partition of the suffix tree.
//!
//! Every `tau`-th leaf is marked, and so is every internal node with two
//! children that have marked descendants. The marked nodes induce the marked
//! tree, and the children of each marked node are cut into blocks that each
//! contain exactly one child with marked descendants. A block becomes one
//! group when the topmost marked node inside it is a leaf, and two groups
//! (left and right of the path down to that node) otherwise.
//!
//! An unrooted LCP query from a marked node first searches the marked tree,
//! then finishes inside the block routed to by the next pattern symbol. A
//! query from an unmarked node starts in the group that owns it. Whenever the
//! answer reaches the marked node at the bottom of a block, the query
//! restarts there.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::bits::RankBitVec;
use crate::error::{Error, Result};
use crate::group::{Env, GroupLcp, LcpLevel, SubtreeLcp};
use crate::marking::{self, Block, Marking};
use crate::pred::KeySet;
use crate::stats::QueryStats;
use crate::suffix::{PatternHandle, TextIndex};
use crate::symbols::Symbol;
use crate::tree::compact::TopologyTable;
use crate::tree::{Location, NodeId, OrderedTree, SubTree, SuffixTree, NONE};

/// Where a node sits inside the block that owns it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum Side {
    /// The block is a single group.
    Run,
    /// Left of the path from the top of the block to its lower marked node.
    Left,
    /// Right of that path.
    Right,
    /// On the path, strictly between the top and the lower node.
    Path,
}

/// The group structure of one block.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum BlockGroups {
    Run(GroupLcp),
    Split { left: GroupLcp, right: GroupLcp },
}

impl BlockGroups {
    pub fn groups(&self) -> impl Iterator<Item = &GroupLcp> {
        let (a, b) = match self {
            BlockGroups::Run(g) => (g, None),
            BlockGroups::Split { left, right } => (left, Some(right)),
        };
        core::iter::once(a).chain(b)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct PartitionIndex {
    tau: usize,
    level: LcpLevel,
    marking: Marking,
    b: RankBitVec,
    // marked ordinal -> marked-tree node
    a_m: Vec<u32>,
    tm: SubtreeLcp,
    blocks: Vec<Block>,
    groups: Vec<BlockGroups>,
    owner: Vec<u32>,
    side: Vec<Side>,
    // blocks of the marked node with ordinal k are
    // `block_start[k]..block_start[k + 1]`
    block_start: Vec<u32>,
    // first symbol of each block, one key set per marked internal node
    routers: Vec<KeySet>,
    table: TopologyTable,
}

/// Members of the groups of block `b`: one list for a run, left and right
/// lists for a split block.
pub fn group_members(tree: &SuffixTree, b: &Block) -> (Vec<NodeId>, Option<Vec<NodeId>>) {
    let (s, e) = b.range(tree);
    if !b.is_split(tree) {
        let mut m = Vec::with_capacity(e - s + 1);
        m.push(b.top);
        m.extend(s..e);
        return (m, None);
    }
    let v = b.lower;
    let mut left = Vec::with_capacity(v - s + 3);
    left.push(b.top);
    left.extend(s..=v);
    left.push(tree.leaf_of_rank(tree.lb(v)));
    let mut right = Vec::new();
    right.push(b.top);
    right.extend((s..=v).filter(|&x| tree.is_ancestor(x, v)));
    right.push(tree.leaf_of_rank(tree.rb(v)));
    right.extend(tree.subtree_end(v)..e);
    (left, Some(right))
}

impl PartitionIndex {
    pub fn build(idx: &TextIndex, tree: &SuffixTree, tau: usize, level: LcpLevel, micro_block: usize) -> Result<Self> {
        let marking = marking::mark(tree, tau)?;
        let k = tree.node_count();
        let b = RankBitVec::from_bits(marking.marked.iter().copied());
        let marked: Vec<NodeId> = (0..k).filter(|&v| marking.marked[v]).collect();
        let mut table = TopologyTable::new();
        let tm = SubtreeLcp::build(idx, tree, &marked, LcpLevel::Ordered, micro_block, &mut table)?;
        let a_m: Vec<u32> = marked
            .iter()
            .map(|&v| tm.subtree().index_of(v).expect("marked node is in the marked tree") as u32)
            .collect();

        let blocks = marking::partition(tree, &marking);
        let mut owner = alloc::vec![NONE; k];
        let mut side = alloc::vec![Side::Run; k];
        let mut groups = Vec::with_capacity(blocks.len());
        for (bi, blk) in blocks.iter().enumerate() {
            let (s, e) = blk.range(tree);
            let split = blk.is_split(tree);
            let mut v = s;
            while v < e {
                if v == blk.lower && split {
                    owner[v] = bi as u32;
                    side[v] = Side::Path;
                    v = tree.subtree_end(v);
                    continue;
                }
                owner[v] = bi as u32;
                side[v] = if !split {
                    Side::Run
                } else if tree.is_ancestor(v, blk.lower) {
                    Side::Path
                } else if v < blk.lower {
                    Side::Left
                } else {
                    Side::Right
                };
                v += 1;
            }
            let (l, r) = group_members(tree, blk);
            let left = GroupLcp::build(idx, tree, &l, level, micro_block, &mut table)?;
            groups.push(match r {
                None => BlockGroups::Run(left),
                Some(r) => BlockGroups::Split {
                    left,
                    right: GroupLcp::build(idx, tree, &r, level, micro_block, &mut table)?,
                },
            });
        }

        let mut block_start = Vec::with_capacity(marked.len() + 1);
        let mut routers = Vec::with_capacity(marked.len());
        let mut next = 0;
        for &u in &marked {
            block_start.push(next as u32);
            let begin = next;
            while next < blocks.len() && blocks[next].top == u {
                next += 1;
            }
            let keys: Vec<u32> = blocks[begin..next]
                .iter()
                .map(|blk| tree.first_symbol(idx, tree.children(u)[blk.first] as usize) as u32)
                .collect();
            routers.push(KeySet::full(keys));
        }
        block_start.push(next as u32);
        debug_assert_eq!(next, blocks.len());

        Ok(PartitionIndex {
            tau,
            level,
            marking,
            b,
            a_m,
            tm,
            blocks,
            groups,
            owner,
            side,
            block_start,
            routers,
            table,
        })
    }

    pub fn tau(&self) -> usize {
        self.tau
    }

    pub fn level(&self) -> LcpLevel {
        self.level
    }

    pub fn marking(&self) -> &Marking {
        &self.marking
    }

    pub fn is_marked(&self, v: NodeId) -> bool {
        self.marking.marked[v]
    }

    pub fn marked_bits(&self) -> &RankBitVec {
        &self.b
    }

    /// Number of marked nodes with preorder id below `i`.
    pub fn rank1(&self, i: usize) -> usize {
        self.b.rank1(i)
    }

    pub fn marked_tree(&self) -> &SubtreeLcp {
        &self.tm
    }

    pub fn table(&self) -> &TopologyTable {
        &self.table
    }

    pub fn env<'a>(&'a self, idx: &'a TextIndex, tree: &'a SuffixTree) -> Env<'a> {
        Env {
            idx,
            tree,
            table: &self.table,
        }
    }

    /// Marked-tree node of the marked node `u`.
    pub fn marked_to_tm(&self, u: NodeId) -> Result<usize> {
        if u >= self.marking.marked.len() || !self.marking.marked[u] {
            return Err(Error::Contract("node is not marked"));
        }
        Ok(self.a_m[self.b.rank1(u)] as usize)
    }

    /// Suffix tree node of marked-tree node `t`.
    pub fn tm_to_node(&self, t: usize) -> NodeId {
        self.tm.subtree().full_id(t)
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block_groups(&self, b: usize) -> &BlockGroups {
        &self.groups[b]
    }

    pub fn groups(&self) -> impl Iterator<Item = &GroupLcp> {
        self.groups.iter().flat_map(|g| g.groups())
    }

    pub fn group_count(&self) -> usize {
        self.groups.iter().map(|g| g.groups().count()).sum()
    }

    /// Block owning the non-root node `v`, with its side; `None` for the root.
    pub fn owner(&self, v: NodeId) -> Option<(usize, Side)> {
        match self.owner[v] {
            NONE => None,
            b => Some((b as usize, self.side[v])),
        }
    }

    /// Blocks whose top is the marked node `u`.
    pub fn blocks_at(&self, u: NodeId) -> Result<core::ops::Range<usize>> {
        if !self.marking.marked[u] {
            return Err(Error::Contract("node is not marked"));
        }
        let k = self.b.rank1(u);
        Ok(self.block_start[k] as usize..self.block_start[k + 1] as usize)
    }

    /// The block at marked node `u` whose children span symbol `c`: the block
    /// with the largest first symbol at most `c`.
    pub fn route_child(&self, u: NodeId, c: Symbol, st: &mut QueryStats) -> Result<Option<usize>> {
        let range = self.blocks_at(u)?;
        let k = self.b.rank1(u);
        let found = self.routers[k].predecessor(c as u64, st, |_, _| unreachable!("router keys are stored"));
        Ok(found.map(|i| range.start + i))
    }

    /// Unrooted LCP query inside the marked tree, as `(location, matched)`.
    pub fn unrooted_lcp_marked(&self, idx: &TextIndex, tree: &SuffixTree, t: usize, h: &PatternHandle, j: usize, st: &mut QueryStats) -> Result<(Location, usize)> {
        if t >= self.tm.subtree().len() {
            return Err(Error::Contract("node is not in the marked tree"));
        }
        if j > h.len() {
            return Err(Error::OutOfRange {
                what: "pattern suffix",
                index: j,
                bound: h.len() + 1,
            });
        }
        let a = self.tm.query(&self.env(idx, tree), t, h, j, st);
        Ok((a.loc, a.matched))
    }

    /// Queries the groups of block `b` from its member `v`. From the top or
    /// a path node both halves of a split block are searched and the deeper
    /// answer wins.
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn query_block(&self, env: &Env, b: usize, v: NodeId, side: Side, h: &PatternHandle, j: usize, st: &mut QueryStats) -> Location {
        let one = |g: &GroupLcp, st: &mut QueryStats| {
            st.group_lcp += 1;
            let i = g.subtree().index_of(v).expect("start node is a member of its group");
            g.engine().query(env, i, h, j, st).loc
        };
        match (&self.groups[b], side) {
            (BlockGroups::Run(g), _) => one(g, st),
            (BlockGroups::Split { left, .. }, Side::Left) => one(left, st),
            (BlockGroups::Split { right, .. }, Side::Right) => one(right, st),
            (BlockGroups::Split { left, right }, _) => {
                let a = one(left, st);
                let b = one(right, st);
                if env.tree.loc_depth(b) > env.tree.loc_depth(a) {
                    b
                } else {
                    a
                }
            }
        }
    }

    /// One step of the full query from node `v` at pattern offset `j`:
    /// returns the location reached and, when that location lies at or
    /// below the lower marked node of a split block, that node.
    fn step(&self, env: &Env, v: NodeId, h: &PatternHandle, j: usize, st: &mut QueryStats) -> (Location, Option<NodeId>) {
        let tree = env.tree;
        let (b, loc) = if self.marking.marked[v] {
            st.marked_lcp += 1;
            let t = self.a_m[self.b.rank1(v)] as usize;
            let a = self.tm.query(env, t, h, j, st);
            let z = self.tm.subtree().full_id(a.upper);
            let mz = tree.depth(z) - tree.depth(v);
            if j + a.matched == h.len() || tree.is_leaf(z) {
                return (a.loc, None);
            }
            let c = h.pattern()[j + mz];
            let Some(b) = self.route_child(z, c, st).expect("marked tree nodes are marked") else {
                return (Location::Node(z), None);
            };
            (b, self.query_block(env, b, z, Side::Path, h, j + mz, st))
        } else {
            let (b, side) = self.owner(v).expect("unmarked node is owned by a block");
            (b, self.query_block(env, b, v, side, h, j, st))
        };
        let w = self.blocks[b].lower;
        if !tree.is_leaf(w) && tree.loc_depth(loc) >= tree.depth(w) && tree.is_ancestor(w, loc.lower()) {
            (loc, Some(w))
        } else {
            (loc, None)
        }
    }

    /// Unrooted LCP query on the whole suffix tree from `from` for `P[j..]`.
    pub fn lcp_from(&self, idx: &TextIndex, tree: &SuffixTree, from: Location, h: &PatternHandle, j: usize, st: &mut QueryStats) -> (Location, usize) {
        let env = self.env(idx, tree);
        let len = h.len() - j;
        let d0 = tree.loc_depth(from);
        if len == 0 {
            return (from, 0);
        }
        let mut v = match from {
            Location::Node(v) => v,
            Location::Edge { child, .. } => {
                let rest = tree.depth(child) - d0;
                let r = idx.isa_at(tree.witness(child) + d0, st);
                let m = h.lcp_rank(idx, j, r).min(rest);
                if m < rest {
                    let loc = if m == 0 { from } else { tree.location_on_edge(child, d0 + m) };
                    return (loc, m);
                }
                child
            }
        };
        loop {
            let matched = tree.depth(v) - d0;
            if matched == len || tree.is_leaf(v) {
                return (Location::Node(v), matched);
            }
            match self.step(&env, v, h, j + matched, st) {
                (_, Some(w)) => v = w,
                (loc, None) => return (loc, tree.loc_depth(loc) - d0),
            }
        }
    }

    /// Suffix tree nodes of each group, with the block it belongs to.
    pub fn group_subtrees(&self) -> impl Iterator<Item = (usize, &SubTree)> {
        self.groups
            .iter()
            .enumerate()
            .flat_map(|(b, g)| g.groups().map(move |g| (b, g.subtree())))
    }

    pub fn size_bits(&self) -> usize {
        self.b.size_bits()
            + 32 * self.a_m.len()
            + self.tm.size_bits()
            + self.groups().map(|g| g.engine().size_bits()).sum::<usize>()
            + self.routers.iter().map(|r| r.size_bits()).sum::<usize>()
            + 32 * self.block_start.len()
            + self.table.size_bits()
    }
}

#[cfg(test)]
mod tests;
