//! Compact heavy-path information for a small subtree.
//!
//! The subtree is cut into micro-blocks with the same marking rule used for
//! the suffix tree partition. Each block stores its shape as balanced
//! parentheses, two bits per node; heavy-path answers for unmarked nodes are
//! read from a decoding of that shape, and only marked nodes keep explicit
//! entries.
//! Decodings are memoized per distinct block shape in a [`TopologyTable`]
//! that can be shared by many encodings.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use super::heavy::{HeavyPathDecomposition, SubTree};
use super::{NodeId, OrderedTree, SuffixTree, NONE};
use crate::error::{Error, Result};
use crate::marking::{mark, partition};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TopologyKey {
    /// Balanced parentheses, bit `i` of word `i / 64` set for an opening one.
    pub bits: Vec<u64>,
    pub len: u16,
    /// Local index of the cut node, or `u16::MAX` when the block is not cut.
    pub boundary: u16,
    /// Leaf count of the cut node.
    pub weight: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum Terminal {
    Local(u16),
    /// The heavy path leaves the block through the cut node.
    Boundary,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct DecodedNode {
    /// Topmost block node on the same heavy chain.
    pub chain_top: u16,
    pub terminal: Terminal,
}

/// Memoized decodings of block shapes.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct TopologyTable {
    index: BTreeMap<TopologyKey, u32>,
    entries: Vec<Vec<DecodedNode>>,
}

impl TopologyTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of distinct shapes decoded so far.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    fn intern(&mut self, key: TopologyKey) -> u32 {
        if let Some(&i) = self.index.get(&key) {
            return i;
        }
        let i = self.entries.len() as u32;
        self.entries.push(decode(&key));
        self.index.insert(key, i);
        i
    }

    pub fn size_bits(&self) -> usize {
        self.entries.iter().map(|e| e.len() * 32 + 32).sum::<usize>()
            + self.index.keys().map(|k| k.bits.len() * 64 + 64).sum::<usize>()
    }
}

fn decode(key: &TopologyKey) -> Vec<DecodedNode> {
    let mut parent: Vec<u16> = Vec::new();
    let mut kids: Vec<Vec<u16>> = Vec::new();
    let mut stack: Vec<u16> = Vec::new();
    for b in 0..key.len as usize {
        if key.bits[b / 64] >> (b % 64) & 1 == 1 {
            let id = parent.len() as u16;
            parent.push(stack.last().copied().unwrap_or(u16::MAX));
            if let Some(&p) = stack.last() {
                kids[p as usize].push(id);
            }
            kids.push(Vec::new());
            stack.push(id);
        } else {
            stack.pop();
        }
    }
    let k = parent.len();
    let mut weight = alloc::vec![0u64; k];
    for v in (0..k).rev() {
        if kids[v].is_empty() {
            weight[v] = if v as u16 == key.boundary { key.weight as u64 } else { 1 };
        }
        if parent[v] != u16::MAX {
            weight[parent[v] as usize] += weight[v];
        }
    }
    let heavy: Vec<u16> = (0..k)
        .map(|v| {
            let mut best = u16::MAX;
            for &c in &kids[v] {
                if best == u16::MAX || weight[c as usize] > weight[best as usize] {
                    best = c;
                }
            }
            best
        })
        .collect();
    let mut out = alloc::vec![DecodedNode { chain_top: 0, terminal: Terminal::Boundary }; k];
    for v in 0..k {
        let p = parent[v];
        out[v].chain_top = if p != u16::MAX && heavy[p as usize] == v as u16 {
            out[p as usize].chain_top
        } else {
            v as u16
        };
    }
    for v in (0..k).rev() {
        out[v].terminal = match heavy[v] {
            u16::MAX if v as u16 == key.boundary => Terminal::Boundary,
            u16::MAX => Terminal::Local(v as u16),
            h => out[h as usize].terminal,
        };
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
struct BlockRef {
    top: u32,
    start: u32,
    // cut node and one past its subtree; equal values mean no cut
    cut: u32,
    cut_end: u32,
    stop: u32,
    entry: u32,
}

impl BlockRef {
    fn to_sub(&self, local: usize) -> usize {
        let s = self.start as usize;
        let cut = self.cut as usize;
        if s + local <= cut {
            s + local
        } else {
            s + local + (self.cut_end - self.cut - 1) as usize
        }
    }

    fn node_count(&self) -> usize {
        (self.stop - self.start - (self.cut_end - self.cut - 1)) as usize
    }

    fn to_local(&self, v: usize) -> usize {
        if v <= self.cut as usize {
            v - self.start as usize
        } else {
            v - self.start as usize - (self.cut_end - self.cut - 1) as usize
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Explicit {
    pub head: u32,
    pub leaf: u32,
    pub heavy_child: u32,
    pub weight: u32,
}

/// Heavy-path answers for one subtree: block shapes by reference into a
/// [`TopologyTable`], plus explicit entries for marked nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct CompactHeavyPaths {
    micro_block: usize,
    blocks: Vec<BlockRef>,
    // disjoint preorder segments owned by blocks: (first node, block)
    segments: Vec<(u32, u32)>,
    marked: Vec<u32>,
    explicit: Vec<Explicit>,
}

impl CompactHeavyPaths {
    pub fn encode(sub: &SubTree, micro_block: usize, table: &mut TopologyTable) -> Result<Self> {
        if micro_block < 2 {
            return Err(Error::Parameter("micro-block size must be at least 2"));
        }
        let hpd = HeavyPathDecomposition::of(sub);
        let m = mark(sub, micro_block)?;
        let marked: Vec<u32> = (0..sub.len()).filter(|&v| m.marked[v]).map(|v| v as u32).collect();
        let explicit = marked
            .iter()
            .map(|&v| {
                let v = v as usize;
                Explicit {
                    head: hpd.head(v) as u32,
                    leaf: hpd.leaf(v) as u32,
                    heavy_child: hpd.heavy_child(v).map_or(NONE, |c| c as u32),
                    weight: sub.leaf_count(v) as u32,
                }
            })
            .collect();
        let mut blocks = Vec::new();
        for b in partition(sub, &m) {
            let (start, stop) = b.range(sub);
            let (cut, cut_end) = if b.is_split(sub) {
                (b.lower, sub.subtree_end(b.lower))
            } else {
                (b.lower, b.lower + 1)
            };
            let count = (stop - start) - (cut_end - cut - 1);
            let mut bits = alloc::vec![0u64; (2 * count).div_ceil(64)];
            let mut len = 0usize;
            let mut open: Vec<usize> = Vec::new();
            for v in (start..=cut).chain(cut_end..stop) {
                while let Some(&top) = open.last() {
                    let top_end = if top == cut { cut_end } else { sub.subtree_end(top) };
                    if v < top_end {
                        break;
                    }
                    open.pop();
                    len += 1;
                }
                bits[len / 64] |= 1 << (len % 64);
                len += 1;
                open.push(v);
            }
            len += open.len();
            let boundary = if b.is_split(sub) { (cut - start) as u16 } else { u16::MAX };
            let key = TopologyKey {
                bits,
                len: len as u16,
                boundary,
                weight: if b.is_split(sub) { sub.leaf_count(cut) as u32 } else { 0 },
            };
            blocks.push(BlockRef {
                top: b.top as u32,
                start: start as u32,
                cut: cut as u32,
                cut_end: cut_end as u32,
                stop: stop as u32,
                entry: table.intern(key),
            });
        }
        let mut segments = Vec::new();
        for (i, b) in blocks.iter().enumerate() {
            segments.push((b.start, i as u32));
            if b.cut_end < b.stop {
                segments.push((b.cut_end, i as u32));
            }
        }
        segments.sort_unstable();
        Ok(CompactHeavyPaths {
            micro_block,
            blocks,
            segments,
            marked,
            explicit,
        })
    }

    fn explicit(&self, v: usize) -> Option<&Explicit> {
        self.marked
            .binary_search(&(v as u32))
            .ok()
            .map(|i| &self.explicit[i])
    }

    /// `(path head, terminating leaf)` of subtree node `v`.
    pub fn heavy_info(&self, table: &TopologyTable, v: usize) -> (usize, usize) {
        if let Some(e) = self.explicit(v) {
            return (e.head as usize, e.leaf as usize);
        }
        let si = self.segments.partition_point(|s| s.0 as usize <= v) - 1;
        let b = &self.blocks[self.segments[si].1 as usize];
        let dec = table.entries[b.entry as usize][b.to_local(v)];
        let leaf = match dec.terminal {
            Terminal::Local(i) => b.to_sub(i as usize),
            Terminal::Boundary => self.explicit(b.cut as usize).unwrap().leaf as usize,
        };
        let top = b.to_sub(dec.chain_top as usize);
        let te = self.explicit(b.top as usize).unwrap();
        let head = if te.heavy_child as usize == top { te.head as usize } else { top };
        (head, leaf)
    }

    pub fn micro_block(&self) -> usize {
        self.micro_block
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Node count of the largest micro-block.
    pub fn max_block_nodes(&self) -> usize {
        self.blocks.iter().map(|b| b.node_count()).max().unwrap_or(0)
    }

    pub fn explicit_count(&self) -> usize {
        self.explicit.len()
    }

    /// Bits for block words and references plus explicit entries, not
    /// counting the shared table.
    pub fn size_bits(&self) -> usize {
        let words: usize = self.blocks.iter().map(|b| 2 * b.node_count()).sum();
        words + self.blocks.len() * (5 * 32) + self.segments.len() * 64 + self.explicit.len() * 4 * 32
    }
}

/// Encodes the heavy-path information of the subtree induced by `members`.
pub fn encode_group_topology(
    tree: &SuffixTree,
    members: &[NodeId],
    micro_block: usize,
    max_nodes: usize,
    table: &mut TopologyTable,
) -> Result<(SubTree, CompactHeavyPaths)> {
    if members.len() > max_nodes {
        return Err(Error::Contract("group exceeds the configured size bound"));
    }
    let sub = SubTree::induced(tree, members)?;
    let enc = CompactHeavyPaths::encode(&sub, micro_block, table)?;
    Ok((sub, enc))
}

/// `(path head, terminating leaf)` for subtree node `v`.
pub fn heavy_info(enc: &CompactHeavyPaths, table: &TopologyTable, v: usize) -> (usize, usize) {
    enc.heavy_info(table, v)
}
