//! Unrooted LCP queries restricted to an induced subtree.
//!
//! A [`SubtreeLcp`] answers "where does a search for `P[j..]` that starts at
//! node `u` and only follows subtree edges end". It keeps a heavy-path
//! decomposition of the subtree, the string depths of every heavy path in a
//! predecessor set `H`, and for every child `x` off its parent's heavy path a
//! predecessor set `D(x)` of global ranks: the rank of the suffix
//! `str(parent(x), leaf)` for every leaf below `x`.
//!
//! A query reads one suffix rank on the heavy path of `u`, finds the lowest
//! path node within reach with `H`, steps into the light child, and then only
//! needs the predecessor and successor of the pattern's rank in `D(x)`.

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pred::KeySet;
use crate::stats::QueryStats;
use crate::suffix::{PatternHandle, TextIndex};
use crate::tree::compact::{CompactHeavyPaths, TopologyTable};
use crate::tree::{HeavyPathDecomposition, Location, NodeId, OrderedTree, SubTree, SuffixTree};

/// How a [`SubtreeLcp`] stores its heavy paths and key sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub enum LcpLevel {
    /// Explicit heavy-path decomposition, every key stored.
    Full,
    /// Heavy paths from the compact block encoding, every key stored.
    Compact,
    /// Compact heavy paths; `D` sets keep every `d_step`-th rank and `H`
    /// sets every `h_step`-th depth. Missing elements are recomputed.
    Sampled { d_step: usize, h_step: usize },
    /// Explicit heavy paths with ordered-map key sets, for large subtrees.
    Ordered,
}

/// Shared read-only context for queries.
#[derive(Clone, Copy)]
pub struct Env<'a> {
    pub idx: &'a TextIndex,
    pub tree: &'a SuffixTree,
    pub table: &'a TopologyTable,
}

/// Result of a restricted query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubAnswer {
    pub loc: Location,
    /// Pattern symbols matched from the start node.
    pub matched: usize,
    /// Subtree id of the deepest subtree node at or above `loc`.
    pub upper: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
enum Heavy {
    Explicit(HeavyPathDecomposition),
    Compact(CompactHeavyPaths),
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
struct HeavyPath {
    nodes: Vec<u32>,
    depths: KeySet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SubtreeLcp {
    sub: SubTree,
    level: LcpLevel,
    heavy: Heavy,
    // paths sorted by head
    heads: Vec<u32>,
    paths: Vec<HeavyPath>,
    // light children sorted by subtree id, with their D sets
    light: Vec<u32>,
    d_sets: Vec<KeySet>,
    elements: usize,
}

/// Rank of the suffix `str(w, leaf)`: the suffix of `leaf` shifted by the
/// string depth of `w`.
pub fn global_rank(idx: &TextIndex, tree: &SuffixTree, w: NodeId, leaf: NodeId) -> Result<usize> {
    if !tree.is_leaf(leaf) {
        return Err(Error::Contract("global rank needs a leaf"));
    }
    if w == leaf || !tree.is_ancestor(w, leaf) {
        return Err(Error::Contract("leaf does not descend from the node"));
    }
    if tree.depth(w) + 1 > tree.depth(leaf) {
        return Err(Error::Contract("node depth exceeds the suffix length"));
    }
    Ok(idx.isa_raw(tree.witness(leaf) + tree.depth(w)))
}

impl SubtreeLcp {
    /// Builds the structure for the subtree induced by `members`. Every
    /// subtree leaf must be a suffix tree leaf.
    pub fn build(
        idx: &TextIndex,
        tree: &SuffixTree,
        members: &[NodeId],
        level: LcpLevel,
        micro_block: usize,
        table: &mut TopologyTable,
    ) -> Result<Self> {
        let sub = SubTree::induced(tree, members)?;
        Self::from_subtree(idx, tree, sub, level, micro_block, table)
    }

    pub fn from_subtree(
        idx: &TextIndex,
        tree: &SuffixTree,
        sub: SubTree,
        level: LcpLevel,
        micro_block: usize,
        table: &mut TopologyTable,
    ) -> Result<Self> {
        if sub.leaves().iter().any(|&l| !tree.is_leaf(sub.full_id(l as usize))) {
            return Err(Error::Contract("subtree leaves must be suffix tree leaves"));
        }
        if let LcpLevel::Sampled { d_step, h_step } = level {
            if d_step == 0 || h_step == 0 {
                return Err(Error::Parameter("sampling steps must be positive"));
            }
        }
        let hpd = HeavyPathDecomposition::of(&sub);
        let keys = |v: Vec<u32>, step: usize| match level {
            LcpLevel::Full | LcpLevel::Compact => KeySet::full(v),
            LcpLevel::Sampled { .. } => KeySet::sampled(&v, step),
            LcpLevel::Ordered => KeySet::tree(&v),
        };
        let (d_step, h_step) = match level {
            LcpLevel::Sampled { d_step, h_step } => (d_step, h_step),
            _ => (1, 1),
        };
        let mut heads = Vec::with_capacity(hpd.path_count());
        let mut paths = Vec::with_capacity(hpd.path_count());
        for p in 0..hpd.path_count() {
            let nodes = hpd.path(p).to_vec();
            let depths = nodes.iter().map(|&v| sub.depth(tree, v as usize) as u32).collect();
            heads.push(nodes[0]);
            paths.push(HeavyPath {
                nodes,
                depths: keys(depths, h_step),
            });
        }
        debug_assert!(heads.windows(2).all(|w| w[0] < w[1]));
        let mut light = Vec::new();
        let mut d_sets = Vec::new();
        let mut elements = 0;
        for v in 0..sub.len() {
            let dv = sub.depth(tree, v);
            for &c in sub.children(v) {
                if hpd.heavy_child(v) == Some(c as usize) {
                    continue;
                }
                let ranks: Vec<u32> = sub
                    .leaves_below(c as usize)
                    .iter()
                    .map(|&l| idx.isa_raw(tree.witness(sub.full_id(l as usize)) + dv) as u32)
                    .collect();
                if ranks.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::Contract("shifted leaf suffixes are not in leaf order"));
                }
                elements += ranks.len();
                light.push(c);
                d_sets.push(keys(ranks, d_step));
            }
        }
        let mut order: Vec<usize> = (0..light.len()).collect();
        order.sort_unstable_by_key(|&i| light[i]);
        let light: Vec<u32> = order.iter().map(|&i| light[i]).collect();
        let mut d_sets: Vec<Option<KeySet>> = d_sets.into_iter().map(Some).collect();
        let d_sets: Vec<KeySet> = order.iter().map(|&i| d_sets[i].take().unwrap()).collect();
        let f = sub.leaves().len();
        if elements > f * (crate::ceil_log2(f) + 1) {
            return Err(Error::Contract("light-child key sets exceed f(log f + 1) elements"));
        }
        let heavy = match level {
            LcpLevel::Full | LcpLevel::Ordered => Heavy::Explicit(hpd),
            LcpLevel::Compact | LcpLevel::Sampled { .. } => {
                Heavy::Compact(CompactHeavyPaths::encode(&sub, micro_block, table)?)
            }
        };
        Ok(SubtreeLcp {
            sub,
            level,
            heavy,
            heads,
            paths,
            light,
            d_sets,
            elements,
        })
    }

    pub fn subtree(&self) -> &SubTree {
        &self.sub
    }

    pub fn level(&self) -> LcpLevel {
        self.level
    }

    /// Total number of elements over all `D` sets.
    pub fn element_count(&self) -> usize {
        self.elements
    }

    /// Keys stored across `D` sets (fewer than the elements when sampled).
    pub fn stored_d_keys(&self) -> usize {
        self.d_sets.iter().map(|d| d.stored()).sum()
    }

    /// Keys stored across `H` sets.
    pub fn stored_h_keys(&self) -> usize {
        self.paths.iter().map(|p| p.depths.stored()).sum()
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// Children off their parent's heavy path, as suffix tree nodes.
    pub fn light_children(&self) -> impl Iterator<Item = NodeId> + '_ {
        self.light.iter().map(|&c| self.sub.full_id(c as usize))
    }

    pub fn size_bits(&self) -> usize {
        let heavy = match &self.heavy {
            Heavy::Explicit(_) => self.sub.len() * 3 * 32,
            Heavy::Compact(c) => c.size_bits(),
        };
        heavy
            + self.paths.iter().map(|p| p.depths.size_bits() + 32).sum::<usize>()
            + self.d_sets.iter().map(|d| d.size_bits() + 32).sum::<usize>()
    }

    fn heavy_info(&self, env: &Env, v: usize) -> (usize, usize) {
        match &self.heavy {
            Heavy::Explicit(h) => (h.head(v), h.leaf(v)),
            Heavy::Compact(c) => c.heavy_info(env.table, v),
        }
    }

    fn path_of_head(&self, head: usize) -> &HeavyPath {
        let i = self.heads.binary_search(&(head as u32)).expect("head of a heavy path");
        &self.paths[i]
    }

    /// Deepest node of `path` with string depth at most `d`.
    fn path_floor(&self, env: &Env, path: &HeavyPath, d: usize, st: &mut QueryStats) -> usize {
        let i = path
            .depths
            .predecessor(d as u64, st, |k, st| {
                st.depth_probes += 1;
                env.tree.depth(self.sub.full_id(path.nodes[k] as usize)) as u32
            })
            .expect("path head lies within reach");
        path.nodes[i] as usize
    }

    /// Deepest ancestor of subtree node `x` (inclusive) with string depth at
    /// most `d`.
    fn ancestor_at_depth(&self, env: &Env, mut x: usize, d: usize, st: &mut QueryStats) -> usize {
        loop {
            if self.sub.depth(env.tree, x) <= d {
                return x;
            }
            let (head, _) = self.heavy_info(env, x);
            if self.sub.depth(env.tree, head) <= d {
                return self.path_floor(env, self.path_of_head(head), d, st);
            }
            x = self.sub.parent(head).expect("root depth is within reach");
        }
    }

    /// Rank of the `i`-th element of `D(x)`, `x` the `xi`-th light child.
    fn d_element(&self, env: &Env, xi: usize, i: usize, st: &mut QueryStats) -> u32 {
        let x = self.light[xi] as usize;
        let leaf = self.sub.leaves_below(x)[i] as usize;
        let w = self.sub.parent(x).unwrap();
        let pos = env.tree.witness(self.sub.full_id(leaf)) + self.sub.depth(env.tree, w);
        env.idx.isa_at(pos, st) as u32
    }

    fn d_key(&self, env: &Env, xi: usize, i: usize, st: &mut QueryStats) -> u32 {
        match &self.d_sets[xi] {
            KeySet::Full(k) => k[i],
            KeySet::Sampled { step, samples, .. } if i.is_multiple_of(*step as usize) => samples[i / *step as usize],
            KeySet::Sampled { .. } => {
                st.suffix_comparisons += 1;
                self.d_element(env, xi, i, st)
            }
            KeySet::Tree(_) => self.d_element(env, xi, i, st),
        }
    }

    /// Largest element of `D(x)` that is at most `query_rank`, as
    /// `(rank, text position of the suffix)`.
    pub fn predecessor_in_set(&self, env: &Env, x: NodeId, query_rank: usize, st: &mut QueryStats) -> Result<Option<(usize, usize)>> {
        let xs = self.sub.index_of(x).ok_or(Error::Contract("node is not in the subtree"))?;
        let xi = self
            .light
            .binary_search(&(xs as u32))
            .map_err(|_| Error::Contract("node has no key set"))?;
        let found = self.d_sets[xi].predecessor(query_rank as u64, st, |i, st| {
            st.suffix_comparisons += 1;
            self.d_element(env, xi, i, st)
        });
        Ok(found.map(|i| {
            let r = self.d_key(env, xi, i, st) as usize;
            (r, env.idx.sa_raw(r))
        }))
    }

    /// Restricted unrooted LCP query from subtree node `u` for `P[j..]`.
    pub fn query(&self, env: &Env, u: usize, h: &PatternHandle, j: usize, st: &mut QueryStats) -> SubAnswer {
        let (idx, tree, sub) = (env.idx, env.tree, &self.sub);
        let len = h.len() - j;
        let fu = sub.full_id(u);
        let du = tree.depth(fu);
        let at = |v: usize, matched: usize| SubAnswer {
            loc: Location::Node(sub.full_id(v)),
            matched,
            upper: v,
        };
        if len == 0 || sub.is_leaf(u) {
            return at(u, 0);
        }
        let (head, vh) = self.heavy_info(env, u);
        let fvh = sub.full_id(vh);
        let r = idx.isa_at(tree.witness(fvh) + du, st);
        let l0 = h.lcp_rank(idx, j, r).min(tree.depth(fvh) - du);
        let d = du + l0;
        let up = self.path_floor(env, self.path_of_head(head), d, st);
        let dup = sub.depth(tree, up);
        if dup < d {
            return SubAnswer {
                loc: tree.location_at_depth(fvh, d),
                matched: l0,
                upper: up,
            };
        }
        if l0 == len || sub.is_leaf(up) {
            return at(up, l0);
        }
        let jj = j + l0;
        let Some(x) = sub.child_by_symbol(tree, idx, up, h.pattern()[jj]) else {
            return at(up, l0);
        };
        let xi = self
            .light
            .binary_search(&(x as u32))
            .expect("the heavy child disagrees with the pattern here");
        let rr = h.rank(jj);
        let k = self.d_sets[xi].count_below(rr as u64, st, |i, st| {
            st.suffix_comparisons += 1;
            self.d_element(env, xi, i, st)
        });
        let mut best = (0, 0);
        if k > 0 {
            let key = self.d_key(env, xi, k - 1, st) as usize;
            best = (h.lcp_rank(idx, jj, key), k - 1);
        }
        if k < self.d_sets[xi].len() {
            let key = self.d_key(env, xi, k, st) as usize;
            let l = h.lcp_rank(idx, jj, key);
            if l > best.0 {
                best = (l, k);
            }
        }
        let leaf = sub.leaves_below(x)[best.1] as usize;
        let target = dup + best.0;
        SubAnswer {
            loc: tree.location_at_depth(sub.full_id(leaf), target),
            matched: target - du,
            upper: self.ancestor_at_depth(env, leaf, target, st),
        }
    }
}

/// [`SubtreeLcp`] over a subtree whose leaves are consecutive suffixes, as
/// used for the groups of the partition.
#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct GroupLcp {
    inner: SubtreeLcp,
}

impl GroupLcp {
    pub fn build(
        idx: &TextIndex,
        tree: &SuffixTree,
        members: &[NodeId],
        level: LcpLevel,
        micro_block: usize,
        table: &mut TopologyTable,
    ) -> Result<Self> {
        let sub = SubTree::induced(tree, members)?;
        let leaves = sub.leaves();
        for w in leaves.windows(2) {
            let a = tree.lb(sub.full_id(w[0] as usize));
            let b = tree.lb(sub.full_id(w[1] as usize));
            if b != a + 1 {
                return Err(Error::Contract("group leaves are not consecutive suffixes"));
            }
        }
        Ok(GroupLcp {
            inner: SubtreeLcp::from_subtree(idx, tree, sub, level, micro_block, table)?,
        })
    }

    pub fn engine(&self) -> &SubtreeLcp {
        &self.inner
    }

    pub fn subtree(&self) -> &SubTree {
        self.inner.subtree()
    }

    /// Restricted query from suffix tree node `u`, which must be a member.
    pub fn unrooted_lcp_small(&self, env: &Env, u: NodeId, h: &PatternHandle, j: usize, st: &mut QueryStats) -> Result<(Location, usize)> {
        let i = self.subtree().index_of(u).ok_or(Error::Contract("start node is not in the group"))?;
        if j > h.len() {
            return Err(Error::OutOfRange {
                what: "pattern suffix",
                index: j,
                bound: h.len() + 1,
            });
        }
        let a = self.inner.query(env, i, h, j, st);
        Ok((a.loc, a.matched))
    }
}
