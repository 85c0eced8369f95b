//! Wildcard trees and wildcard LCP queries.
//!
//! For a marked node `u`, let `h` be the child of `u` with the most marked
//! leaves below it. Every marked leaf `v` below another child spells
//! `str(u, v) = a s` for one symbol `a`; the wildcard tree of `u` for an
//! alphabet group is the compressed trie of the strings `s` whose `a` lies in
//! the group. Its nodes are suffix tree nodes, because each `s` is a text
//! suffix. Every wildcard tree node with label `s` keeps, per symbol `a` of
//! the group, a pointer to the location of `str(u) a s` when that string
//! occurs.
//!
//! A wildcard LCP query for `P` searches `P` once in each wildcard tree and,
//! for every symbol, jumps through the pointer of the deepest matched node
//! that has one. The search from there cannot pass another marked internal
//! node, since two marked leaves branching below it would have produced a
//! deeper wildcard tree node, so it finishes inside a single group.

use alloc::vec::Vec;
use core::ops::RangeInclusive;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{Env, LcpLevel, SubtreeLcp};
use crate::partition::{PartitionIndex, Side};
use crate::stats::QueryStats;
use crate::suffix::{PatternHandle, TextIndex};
use crate::symbols::{Symbol, SENTINEL};
use crate::tree::compact::TopologyTable;
use crate::tree::{Location, NodeId, OrderedTree, SuffixTree, NONE};

/// Contiguous groups of `lambda` symbols covering `1..=sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct AlphabetGroups {
    lambda: usize,
    sigma: usize,
}

impl AlphabetGroups {
    pub fn new(sigma: usize, lambda: usize) -> Result<Self> {
        if lambda == 0 {
            return Err(Error::Parameter("alphabet group size must be positive"));
        }
        Ok(AlphabetGroups { lambda, sigma })
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn count(&self) -> usize {
        self.sigma.div_ceil(self.lambda)
    }

    pub fn range(&self, i: usize) -> RangeInclusive<Symbol> {
        let lo = i * self.lambda + 1;
        let hi = ((i + 1) * self.lambda).min(self.sigma);
        lo as Symbol..=hi as Symbol
    }

    pub fn group_of(&self, a: Symbol) -> usize {
        debug_assert!(a >= 1 && a as usize <= self.sigma);
        (a as usize - 1) / self.lambda
    }
}

/// Target of a wildcard tree pointer, with the block owning its lower node
/// (`None` when that node is marked).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct Pointer {
    pub loc: Location,
    pub block: Option<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct WildcardTree {
    owner: u32,
    group: u32,
    first: Symbol,
    width: u32,
    // None when the trie holds no strings and consists of its root only
    engine: Option<SubtreeLcp>,
    // node-major, one slot per symbol of the group
    pointers: Vec<Option<Pointer>>,
    // deepest ancestor-or-self with a pointer for the symbol, or NONE
    inherited: Vec<u32>,
}

impl WildcardTree {
    pub fn owner(&self) -> NodeId {
        self.owner as usize
    }

    pub fn group(&self) -> usize {
        self.group as usize
    }

    pub fn symbols(&self) -> RangeInclusive<Symbol> {
        self.first..=self.first + self.width as Symbol - 1
    }

    pub fn node_count(&self) -> usize {
        self.engine.as_ref().map_or(1, |e| e.subtree().len())
    }

    pub fn leaf_count(&self) -> usize {
        self.engine.as_ref().map_or(0, |e| e.subtree().leaves().len())
    }

    pub fn pointer_count(&self) -> usize {
        self.pointers.iter().filter(|p| p.is_some()).count()
    }

    /// Suffix tree node of wildcard tree node `w`.
    pub fn node(&self, w: usize) -> NodeId {
        self.engine.as_ref().map_or(0, |e| e.subtree().full_id(w))
    }

    /// Wildcard tree node of the suffix tree node `v`, if it is one.
    pub fn index_of(&self, v: NodeId) -> Option<usize> {
        match &self.engine {
            Some(e) => e.subtree().index_of(v),
            None => (v == 0).then_some(0),
        }
    }

    pub fn pointer(&self, w: usize, a: Symbol) -> Option<Pointer> {
        if !self.symbols().contains(&a) {
            return None;
        }
        self.pointers[w * self.width as usize + (a - self.first) as usize]
    }

    fn inherited(&self, w: usize, a: Symbol) -> Option<usize> {
        match self.inherited[w * self.width as usize + (a - self.first) as usize] {
            NONE => None,
            x => Some(x as usize),
        }
    }

    pub fn size_bits(&self) -> usize {
        self.engine.as_ref().map_or(0, |e| e.size_bits()) + self.pointers.len() * 64 + self.inherited.len() * 32 + 96
    }
}

/// One answer of a wildcard LCP query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WildcardEntry {
    pub symbol: Symbol,
    /// Lowest location reached by `str(u) symbol P`.
    pub loc: Location,
    /// Symbols matched below `u`, counting `symbol` itself.
    pub matched: usize,
    /// Whether all of `symbol P` matched.
    pub full: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct WildcardLayer {
    groups: AlphabetGroups,
    trees: Vec<WildcardTree>,
    // trees of the marked node with ordinal k are `start[k]..start[k + 1]`
    start: Vec<u32>,
    // first symbol towards the child with the most marked leaves, or the
    // sentinel when there is none or that child starts with the sentinel
    heavy_symbol: Vec<Symbol>,
    table: TopologyTable,
}

/// Number of marked leaves with rank in `lo..=hi`.
fn marked_in(tau: usize, lo: usize, hi: usize) -> usize {
    hi / tau + 1 - lo.div_ceil(tau)
}

impl WildcardLayer {
    pub fn build(idx: &TextIndex, tree: &SuffixTree, part: &PartitionIndex, lambda: usize) -> Result<Self> {
        let groups = AlphabetGroups::new(idx.sigma(), lambda)?;
        let tau = part.tau();
        let mut table = TopologyTable::new();
        let mut trees = Vec::new();
        let mut start = Vec::new();
        let mut heavy_symbol = Vec::new();
        for u in 0..tree.node_count() {
            if !part.is_marked(u) {
                continue;
            }
            start.push(trees.len() as u32);
            if tree.is_leaf(u) {
                heavy_symbol.push(SENTINEL);
                continue;
            }
            let du = tree.depth(u);
            let kids = tree.children(u);
            let count = |c: usize| marked_in(tau, tree.lb(c), tree.rb(c));
            let full_heavy = tree.heavy_child(u);
            let h = kids
                .iter()
                .map(|&c| c as usize)
                .max_by_key(|&c| (count(c), full_heavy == Some(c), core::cmp::Reverse(c)))
                .expect("internal node has children");
            let a_h = tree.first_symbol(idx, h);
            heavy_symbol.push(a_h);
            for gi in 0..groups.count() {
                let range = groups.range(gi);
                let present: Vec<usize> = kids
                    .iter()
                    .map(|&c| c as usize)
                    .filter(|&c| range.contains(&tree.first_symbol(idx, c)) && c != h)
                    .collect();
                if present.is_empty() {
                    continue;
                }
                let mut leaves = Vec::new();
                for &x in &present {
                    let (lo, hi) = (tree.lb(x), tree.rb(x));
                    let mut r = lo.div_ceil(tau) * tau;
                    while r <= hi {
                        let p = tree.witness(tree.leaf_of_rank(r)) + du + 1;
                        leaves.push(tree.leaf_of_rank(idx.isa_raw(p)));
                        r += tau;
                    }
                }
                trees.push(Self::build_tree(idx, tree, part, u, gi, &groups, a_h, leaves, &mut table)?);
            }
        }
        start.push(trees.len() as u32);
        let layer = WildcardLayer {
            groups,
            trees,
            start,
            heavy_symbol,
            table,
        };
        #[cfg(debug_assertions)]
        if idx.len() <= 1 << 12 {
            layer.verify_pointers(idx, tree, part)?;
        }
        Ok(layer)
    }

    #[allow(clippy::too_many_arguments)]
    fn build_tree(
        idx: &TextIndex,
        tree: &SuffixTree,
        part: &PartitionIndex,
        u: NodeId,
        gi: usize,
        groups: &AlphabetGroups,
        a_h: Symbol,
        mut leaves: Vec<NodeId>,
        table: &mut TopologyTable,
    ) -> Result<WildcardTree> {
        let range = groups.range(gi);
        let first = *range.start();
        let width = (*range.end() - first + 1) as usize;
        let engine = if leaves.is_empty() {
            None
        } else {
            leaves.sort_unstable_by_key(|&l| tree.lb(l));
            let mut members = alloc::vec![0];
            members.extend_from_slice(&leaves);
            members.extend(leaves.windows(2).map(|w| tree.lca(w[0], w[1])));
            Some(SubtreeLcp::build(idx, tree, &members, LcpLevel::Ordered, 2, table)?)
        };
        let k = engine.as_ref().map_or(1, |e| e.subtree().len());
        let mut pointers: Vec<Option<Pointer>> = alloc::vec![None; k * width];
        let mut inherited = alloc::vec![NONE; k * width];
        let node = |w: usize| engine.as_ref().map_or(0, |e| e.subtree().full_id(w));
        let parent = |w: usize| engine.as_ref().and_then(|e| e.subtree().parent(w));
        let target = |loc: Location| Pointer {
            loc,
            block: match part.owner(loc.lower()) {
                Some((b, _)) if !part.is_marked(loc.lower()) => Some(b as u32),
                _ => None,
            },
        };
        for w in 0..k {
            for (ai, a) in range.clone().enumerate() {
                if a == a_h {
                    continue;
                }
                let slot = w * width + ai;
                let loc = match parent(w) {
                    None => tree.step_down(idx, Location::Node(u), a),
                    Some(q) => pointers[q * width + ai].and_then(|p| {
                        let (fw, fq) = (node(w), node(q));
                        let len = tree.depth(fw) - tree.depth(fq);
                        let (loc, m) = tree.descend_text(idx, p.loc, tree.witness(fw) + tree.depth(fq), len);
                        (m == len).then_some(loc)
                    }),
                };
                pointers[slot] = loc.map(target);
                inherited[slot] = if loc.is_some() {
                    w as u32
                } else {
                    parent(w).map_or(NONE, |q| inherited[q * width + ai])
                };
            }
        }
        Ok(WildcardTree {
            owner: u as u32,
            group: gi as u32,
            first,
            width: width as u32,
            engine,
            pointers,
            inherited,
        })
    }

    pub fn groups(&self) -> &AlphabetGroups {
        &self.groups
    }

    pub fn trees(&self) -> &[WildcardTree] {
        &self.trees
    }

    pub fn table(&self) -> &TopologyTable {
        &self.table
    }

    /// Wildcard trees of the marked node `u`.
    pub fn trees_of(&self, part: &PartitionIndex, u: NodeId) -> Result<&[WildcardTree]> {
        if !part.is_marked(u) {
            return Err(Error::Contract("node is not marked"));
        }
        let k = part.rank1(u);
        Ok(&self.trees[self.start[k] as usize..self.start[k + 1] as usize])
    }

    /// Symbol of the wildcard-heavy child of the marked node `u`, if that is
    /// not the sentinel.
    pub fn heavy_symbol(&self, part: &PartitionIndex, u: NodeId) -> Result<Option<Symbol>> {
        if !part.is_marked(u) {
            return Err(Error::Contract("node is not marked"));
        }
        let a = self.heavy_symbol[part.rank1(u)];
        Ok((a != SENTINEL).then_some(a))
    }

    pub fn leaf_total(&self) -> usize {
        self.trees.iter().map(|t| t.leaf_count()).sum()
    }

    pub fn node_total(&self) -> usize {
        self.trees.iter().map(|t| t.node_count()).sum()
    }

    pub fn pointer_total(&self) -> usize {
        self.trees.iter().map(|t| t.pointer_count()).sum()
    }

    pub fn size_bits(&self) -> usize {
        self.trees.iter().map(|t| t.size_bits()).sum::<usize>()
            + 32 * self.start.len()
            + 16 * self.heavy_symbol.len()
            + self.table.size_bits()
    }

    /// Checks every pointer slot against a symbol-by-symbol descent: a
    /// pointer is present exactly when `str(u) a s` occurs, and then it
    /// leads to the location of that string.
    pub fn verify_pointers(&self, idx: &TextIndex, tree: &SuffixTree, part: &PartitionIndex) -> Result<()> {
        let text = idx.text();
        for t in &self.trees {
            let u = t.owner();
            let a_h = self.heavy_symbol[part.rank1(u)];
            for w in 0..t.node_count() {
                let fw = t.node(w);
                let s = &text[tree.witness(fw)..tree.witness(fw) + tree.depth(fw)];
                for a in t.symbols() {
                    let got = t.pointer(w, a);
                    if a == a_h {
                        if got.is_some() {
                            return Err(Error::Contract("pointer stored for the heavy symbol"));
                        }
                        continue;
                    }
                    let mut want = alloc::vec![a];
                    want.extend_from_slice(s);
                    let (loc, m) = tree.naive_descend(idx, Location::Node(u), &want);
                    let ok = match got {
                        Some(p) => m == want.len() && p.loc == loc,
                        None => m < want.len(),
                    };
                    if !ok {
                        return Err(Error::Contract("wildcard tree pointer disagrees with descent"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Read access to the layers a wildcard query needs.
#[derive(Clone, Copy)]
pub struct Engine<'a> {
    pub idx: &'a TextIndex,
    pub tree: &'a SuffixTree,
    pub part: &'a PartitionIndex,
    pub layer: &'a WildcardLayer,
}

impl<'a> Engine<'a> {
    fn env(&self) -> Env<'a> {
        self.part.env(self.idx, self.tree)
    }

    /// Continues the search for `P[j..]` from a pointer target, expecting to
    /// stay inside one group. If the answer reaches the marked node at the
    /// bottom of a block, the search is redone as a full query.
    fn continue_from(&self, p: Pointer, h: &PatternHandle, j: usize, st: &mut QueryStats) -> Location {
        let (idx, tree, part) = (self.idx, self.tree, self.part);
        let len = h.len() - j;
        let d0 = tree.loc_depth(p.loc);
        if len == 0 {
            return p.loc;
        }
        let v = match p.loc {
            Location::Node(v) => v,
            Location::Edge { child, .. } => {
                let rest = tree.depth(child) - d0;
                let r = idx.isa_at(tree.witness(child) + d0, st);
                let m = h.lcp_rank(idx, j, r).min(rest);
                if m < rest {
                    return if m == 0 { p.loc } else { tree.location_on_edge(child, d0 + m) };
                }
                child
            }
        };
        let jj = j + tree.depth(v) - d0;
        if jj == h.len() || tree.is_leaf(v) {
            return Location::Node(v);
        }
        let env = self.env();
        let (b, loc) = if part.is_marked(v) {
            let c = h.pattern()[jj];
            match part.route_child(v, c, st).expect("node is marked") {
                None => return Location::Node(v),
                Some(b) => (b, part.query_block(&env, b, v, Side::Path, h, jj, st)),
            }
        } else {
            let b = p.block.expect("pointer to an unmarked node names its block") as usize;
            let (owner, side) = part.owner(v).expect("unmarked node is owned by a block");
            debug_assert_eq!(owner, b);
            (b, part.query_block(&env, b, v, side, h, jj, st))
        };
        let w = part.blocks()[b].lower;
        if !tree.is_leaf(w) && tree.loc_depth(loc) >= tree.depth(w) && tree.is_ancestor(w, loc.lower()) {
            st.containment_fallbacks += 1;
            return part.lcp_from(idx, tree, p.loc, h, j, st).0;
        }
        loc
    }

    /// Wildcard LCP query from the marked node `u`: for every symbol `a`
    /// with `str(u) a` in the text, the lowest location reached by
    /// `str(u) a P[j..]`. Entries are sorted by symbol.
    pub fn wildcard_lcp(&self, u: NodeId, h: &PatternHandle, j: usize, st: &mut QueryStats) -> Result<Vec<WildcardEntry>> {
        if j > h.len() {
            return Err(Error::OutOfRange {
                what: "pattern suffix",
                index: j,
                bound: h.len() + 1,
            });
        }
        let trees = self.layer.trees_of(self.part, u)?;
        let (idx, tree) = (self.idx, self.tree);
        let du = tree.depth(u);
        let len = h.len() - j;
        let entry = |symbol, loc| {
            let matched = tree.loc_depth(loc) - du;
            WildcardEntry {
                symbol,
                loc,
                matched,
                full: matched == len + 1,
            }
        };
        let mut out = Vec::new();
        if let Some(a_h) = self.layer.heavy_symbol(self.part, u)? {
            let loc = tree.step_down(idx, Location::Node(u), a_h).expect("heavy child starts with its symbol");
            let (end, _) = self.part.lcp_from(idx, tree, loc, h, j, st);
            out.push(entry(a_h, end));
        }
        let env = self.env();
        for t in trees {
            let upper = match &t.engine {
                Some(e) => e.query(&env, 0, h, j, st).upper,
                None => 0,
            };
            for a in t.symbols() {
                let Some(wa) = t.inherited(upper, a) else { continue };
                let p = t.pointer(wa, a).expect("inherited slot has a pointer");
                let jj = j + tree.depth(t.node(wa));
                out.push(entry(a, self.continue_from(p, h, jj, st)));
            }
        }
        out.sort_unstable_by_key(|e| e.symbol);
        Ok(out)
    }

    /// The same answers as [`wildcard_lcp`](Self::wildcard_lcp) for any
    /// node, computed by stepping into each child and issuing a full query.
    pub fn wildcard_lcp_by_children(&self, u: NodeId, h: &PatternHandle, j: usize, st: &mut QueryStats) -> Vec<WildcardEntry> {
        let (idx, tree) = (self.idx, self.tree);
        let du = tree.depth(u);
        let len = h.len() - j;
        let mut steps = Vec::new();
        tree.next_steps(idx, Location::Node(u), &mut steps);
        steps
            .into_iter()
            .filter(|&(a, _)| a != SENTINEL)
            .map(|(symbol, loc)| {
                let (end, _) = self.part.lcp_from(idx, tree, loc, h, j, st);
                let matched = tree.loc_depth(end) - du;
                WildcardEntry {
                    symbol,
                    loc: end,
                    matched,
                    full: matched == len + 1,
                }
            })
            .collect()
    }
}
