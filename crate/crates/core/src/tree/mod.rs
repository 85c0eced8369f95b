//! Suffix tree over a [`TextIndex`], built from the suffix and LCP arrays.
//!
//! Nodes are numbered in preorder, so the subtree of `v` is the id range
//! `v..subtree_end(v)` and the leaves appear in suffix array order.

pub mod compact;
pub mod heavy;
mod location;

pub use heavy::{heavy_path_decompose, HeavyPathDecomposition, SubTree};
pub use location::Location;

use alloc::vec::Vec;

#[cfg(feature = "serde")]
use serde::{Deserialize, Serialize};

use crate::suffix::{PatternHandle, TextIndex};
use crate::symbols::Symbol;

pub type NodeId = usize;

pub(crate) const NONE: u32 = u32::MAX;

/// Read access shared by the full suffix tree and induced subtrees.
///
/// Implementors number nodes in preorder with the root at 0 and keep
/// children in left-to-right order.
pub trait OrderedTree {
    fn node_count(&self) -> usize;
    fn children(&self, v: usize) -> &[u32];
    /// One past the last preorder id in the subtree of `v`.
    fn subtree_end(&self, v: usize) -> usize;
    fn is_leaf(&self, v: usize) -> bool {
        self.children(v).is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(Serialize, Deserialize))]
pub struct SuffixTree {
    parent: Vec<u32>,
    depth: Vec<u32>,
    level: Vec<u32>,
    lb: Vec<u32>,
    rb: Vec<u32>,
    // text position of the leftmost leaf; edge labels are read from here
    witness: Vec<u32>,
    child_start: Vec<u32>,
    child_list: Vec<u32>,
    end: Vec<u32>,
    leaf_of_rank: Vec<u32>,
    slink: Vec<u32>,
    heavy_child: Vec<u32>,
    path_of: Vec<u32>,
    pos_in_path: Vec<u32>,
    path_start: Vec<u32>,
    path_nodes: Vec<u32>,
}

struct Proto {
    depth: u32,
    lb: u32,
    rb: u32,
    children: Vec<u32>,
}

impl SuffixTree {
    pub fn build(idx: &TextIndex) -> Self {
        let n = idx.len();
        let sa: Vec<u32> = (0..n).map(|r| idx.sa_raw(r) as u32).collect();
        let lcp = idx.lcp_array();

        let mut proto = alloc::vec![Proto {
            depth: 0,
            lb: 0,
            rb: (n - 1) as u32,
            children: Vec::new(),
        }];
        let mut stack: Vec<u32> = alloc::vec![0];
        for i in 0..=n {
            let l = if i == 0 || i == n { 0 } else { lcp[i] };
            while proto[*stack.last().unwrap() as usize].depth > l {
                let v = stack.pop().unwrap();
                proto[v as usize].rb = (i - 1) as u32;
                let top = *stack.last().unwrap() as usize;
                if proto[top].depth >= l {
                    proto[top].children.push(v);
                } else {
                    let w = proto.len() as u32;
                    let lb = proto[v as usize].lb;
                    proto.push(Proto {
                        depth: l,
                        lb,
                        rb: 0,
                        children: alloc::vec![v],
                    });
                    stack.push(w);
                }
            }
            if i < n {
                let leaf = proto.len() as u32;
                proto.push(Proto {
                    depth: n as u32 - sa[i],
                    lb: i as u32,
                    rb: i as u32,
                    children: Vec::new(),
                });
                stack.push(leaf);
            }
        }

        // renumber in preorder
        let m = proto.len();
        let mut order = Vec::with_capacity(m);
        let mut new_id = alloc::vec![0u32; m];
        let mut dfs = alloc::vec![0u32];
        while let Some(v) = dfs.pop() {
            new_id[v as usize] = order.len() as u32;
            order.push(v);
            dfs.extend(proto[v as usize].children.iter().rev());
        }

        let mut t = SuffixTree {
            parent: alloc::vec![NONE; m],
            depth: Vec::with_capacity(m),
            level: alloc::vec![0; m],
            lb: Vec::with_capacity(m),
            rb: Vec::with_capacity(m),
            witness: Vec::with_capacity(m),
            child_start: Vec::with_capacity(m + 1),
            child_list: Vec::with_capacity(m.saturating_sub(1)),
            end: alloc::vec![0; m],
            leaf_of_rank: alloc::vec![0; n],
            slink: alloc::vec![NONE; m],
            heavy_child: alloc::vec![NONE; m],
            path_of: alloc::vec![0; m],
            pos_in_path: alloc::vec![0; m],
            path_start: Vec::new(),
            path_nodes: Vec::with_capacity(m),
        };
        for (id, &old) in order.iter().enumerate() {
            let p = &proto[old as usize];
            t.depth.push(p.depth);
            t.lb.push(p.lb);
            t.rb.push(p.rb);
            t.witness.push(sa[p.lb as usize]);
            t.child_start.push(t.child_list.len() as u32);
            for &c in &p.children {
                let c = new_id[c as usize];
                t.child_list.push(c);
                t.parent[c as usize] = id as u32;
            }
            if p.children.is_empty() {
                t.leaf_of_rank[p.lb as usize] = id as u32;
            }
        }
        t.child_start.push(t.child_list.len() as u32);
        drop(proto);

        for v in 1..m {
            t.level[v] = t.level[t.parent[v] as usize] + 1;
        }
        let mut size = alloc::vec![1u32; m];
        for v in (1..m).rev() {
            let p = t.parent[v] as usize;
            size[p] += size[v];
        }
        for v in 0..m {
            t.end[v] = v as u32 + size[v];
        }
        for v in 0..m {
            let mut best = NONE;
            for &c in t.children(v) {
                if best == NONE || t.leaf_count(c as usize) > t.leaf_count(best as usize) {
                    best = c;
                }
            }
            t.heavy_child[v] = best;
        }
        for v in 0..m {
            let head = v == 0 || t.heavy_child[t.parent[v] as usize] != v as u32;
            if !head {
                continue;
            }
            let pid = t.path_start.len() as u32;
            t.path_start.push(t.path_nodes.len() as u32);
            let mut x = v as u32;
            let mut pos = 0;
            while x != NONE {
                t.path_of[x as usize] = pid;
                t.pos_in_path[x as usize] = pos;
                t.path_nodes.push(x);
                pos += 1;
                x = t.heavy_child[x as usize];
            }
        }
        t.path_start.push(t.path_nodes.len() as u32);

        for v in 1..m {
            if t.is_leaf(v) {
                continue;
            }
            let a = idx.isa_raw(sa[t.lb[v] as usize] as usize + 1);
            let b = idx.isa_raw(sa[t.rb[v] as usize] as usize + 1);
            let w = t.lca(t.leaf_of_rank[a] as usize, t.leaf_of_rank[b] as usize);
            debug_assert_eq!(t.depth(w) + 1, t.depth(v));
            t.slink[v] = w as u32;
        }
        t
    }

    pub fn root(&self) -> NodeId {
        0
    }

    pub fn parent(&self, v: NodeId) -> Option<NodeId> {
        match self.parent[v] {
            NONE => None,
            p => Some(p as usize),
        }
    }

    pub(crate) fn parent_raw(&self, v: NodeId) -> NodeId {
        self.parent[v] as usize
    }

    /// String depth.
    pub fn depth(&self, v: NodeId) -> usize {
        self.depth[v] as usize
    }

    /// Number of edges from the root.
    pub fn level(&self, v: NodeId) -> usize {
        self.level[v] as usize
    }

    /// First suffix array rank below `v`.
    pub fn lb(&self, v: NodeId) -> usize {
        self.lb[v] as usize
    }

    /// Last suffix array rank below `v`.
    pub fn rb(&self, v: NodeId) -> usize {
        self.rb[v] as usize
    }

    pub fn leaf_count(&self, v: NodeId) -> usize {
        (self.rb[v] - self.lb[v] + 1) as usize
    }

    /// Text position of the leftmost suffix below `v`; the path label of `v`
    /// is `text[witness(v)..witness(v) + depth(v)]`.
    pub fn witness(&self, v: NodeId) -> usize {
        self.witness[v] as usize
    }

    pub fn leaf_of_rank(&self, r: usize) -> NodeId {
        self.leaf_of_rank[r] as usize
    }

    pub fn is_ancestor(&self, a: NodeId, b: NodeId) -> bool {
        a <= b && b < self.end[a] as usize
    }

    pub fn edge_len(&self, v: NodeId) -> usize {
        match self.parent(v) {
            Some(p) => self.depth(v) - self.depth(p),
            None => 0,
        }
    }

    /// Symbol at string depth `d` on the path to `v`, for `d < depth(v)`.
    pub fn symbol_at(&self, idx: &TextIndex, v: NodeId, d: usize) -> Symbol {
        idx.text()[self.witness(v) + d]
    }

    /// First symbol of the edge entering `v`.
    pub fn first_symbol(&self, idx: &TextIndex, v: NodeId) -> Symbol {
        self.symbol_at(idx, v, self.depth(self.parent_raw(v)))
    }

    pub fn child_by_symbol(&self, idx: &TextIndex, v: NodeId, c: Symbol) -> Option<NodeId> {
        let kids = self.children(v);
        let d = self.depth(v);
        kids.binary_search_by_key(&c, |&k| self.symbol_at(idx, k as usize, d))
            .ok()
            .map(|i| kids[i] as usize)
    }

    /// Suffix link of an internal non-root node.
    pub fn slink(&self, v: NodeId) -> Option<NodeId> {
        match self.slink[v] {
            NONE => None,
            w => Some(w as usize),
        }
    }

    pub fn heavy_child(&self, v: NodeId) -> Option<NodeId> {
        match self.heavy_child[v] {
            NONE => None,
            c => Some(c as usize),
        }
    }

    pub fn path_id(&self, v: NodeId) -> usize {
        self.path_of[v] as usize
    }

    pub fn path_count(&self) -> usize {
        self.path_start.len() - 1
    }

    /// Nodes of a heavy path from its head down to its leaf.
    pub fn path(&self, pid: usize) -> &[u32] {
        &self.path_nodes[self.path_start[pid] as usize..self.path_start[pid + 1] as usize]
    }

    pub fn path_head(&self, v: NodeId) -> NodeId {
        self.path(self.path_id(v))[0] as usize
    }

    pub fn path_leaf(&self, v: NodeId) -> NodeId {
        *self.path(self.path_id(v)).last().unwrap() as usize
    }

    pub fn lca(&self, mut a: NodeId, mut b: NodeId) -> NodeId {
        while self.path_of[a] != self.path_of[b] {
            let ha = self.path_head(a);
            let hb = self.path_head(b);
            if self.level(ha) >= self.level(hb) {
                a = self.parent_raw(ha);
            } else {
                b = self.parent_raw(hb);
            }
        }
        if self.level(a) <= self.level(b) {
            a
        } else {
            b
        }
    }

    /// The highest ancestor of `x` (inclusive) whose string depth is at least
    /// `d`. Requires `d <= depth(x)`.
    pub fn node_at_depth(&self, mut x: NodeId, d: usize) -> NodeId {
        debug_assert!(d <= self.depth(x));
        loop {
            let h = self.path_head(x);
            if h != 0 && self.depth(self.parent_raw(h)) >= d {
                x = self.parent_raw(h);
                continue;
            }
            let path = self.path(self.path_id(x));
            let upto = self.pos_in_path[x] as usize + 1;
            let i = path[..upto].partition_point(|&w| self.depth(w as usize) < d);
            return path[i] as usize;
        }
    }

    /// The location at string depth `d` on the path from the root to `x`.
    pub fn location_at_depth(&self, x: NodeId, d: usize) -> Location {
        let w = self.node_at_depth(x, d);
        self.location_on_edge(w, d)
    }

    /// Canonical location at depth `d` on the edge entering `w`, where
    /// `depth(parent(w)) < d <= depth(w)`.
    pub(crate) fn location_on_edge(&self, w: NodeId, d: usize) -> Location {
        if d == self.depth(w) {
            Location::Node(w)
        } else {
            Location::Edge {
                child: w,
                offset: d - self.depth(self.parent_raw(w)),
            }
        }
    }

    pub fn loc_depth(&self, loc: Location) -> usize {
        match loc {
            Location::Node(v) => self.depth(v),
            Location::Edge { child, offset } => self.depth(self.parent_raw(child)) + offset,
        }
    }

    /// The deepest node at or above `loc`.
    pub fn loc_upper(&self, loc: Location) -> NodeId {
        match loc {
            Location::Node(v) => v,
            Location::Edge { child, .. } => self.parent_raw(child),
        }
    }

    /// Symbols below `loc` that extend its path label, as
    /// `(symbol, location one step down)`, in symbol order.
    pub fn next_steps(&self, idx: &TextIndex, loc: Location, out: &mut Vec<(Symbol, Location)>) {
        out.clear();
        match loc {
            Location::Node(v) => {
                let d = self.depth(v);
                for &c in self.children(v) {
                    let c = c as usize;
                    out.push((self.symbol_at(idx, c, d), self.location_on_edge(c, d + 1)));
                }
            }
            Location::Edge { child, .. } => {
                let d = self.loc_depth(loc);
                out.push((self.symbol_at(idx, child, d), self.location_on_edge(child, d + 1)));
            }
        }
    }

    /// One symbol down from `loc`, if the label continues with `c`.
    pub fn step_down(&self, idx: &TextIndex, loc: Location, c: Symbol) -> Option<Location> {
        match loc {
            Location::Node(v) => {
                let child = self.child_by_symbol(idx, v, c)?;
                Some(self.location_on_edge(child, self.depth(v) + 1))
            }
            Location::Edge { child, .. } => {
                let d = self.loc_depth(loc);
                (self.symbol_at(idx, child, d) == c).then(|| self.location_on_edge(child, d + 1))
            }
        }
    }

    /// Symbol-by-symbol descent: the lowest location below `from` whose
    /// label from `from` is a prefix of `s`, and the number of symbols
    /// matched.
    pub fn naive_descend(&self, idx: &TextIndex, from: Location, s: &[Symbol]) -> (Location, usize) {
        let mut loc = from;
        for (i, &c) in s.iter().enumerate() {
            match self.step_down(idx, loc, c) {
                Some(next) => loc = next,
                None => return (loc, i),
            }
        }
        (loc, s.len())
    }

    /// Descends from `from` along `text[pos..pos + len]`, comparing whole
    /// edges through the LCP array.
    pub fn descend_text(&self, idx: &TextIndex, from: Location, pos: usize, len: usize) -> (Location, usize) {
        let text = idx.text();
        self.descend_by(idx, from, len, |p, cap| {
            if cap == 0 {
                return 0;
            }
            idx.lcp_positions(pos + p.0, p.1).min(cap)
        }, |off| text.get(pos + off).copied())
    }

    /// Descends from `from` along the pattern suffix `P[j..]`, comparing whole
    /// edges through the pattern preprocessing.
    pub fn descend_pattern(&self, idx: &TextIndex, from: Location, h: &PatternHandle, j: usize) -> (Location, usize) {
        let pat = h.pattern();
        let len = pat.len() - j;
        self.descend_by(idx, from, len, |p, cap| {
            if cap == 0 {
                return 0;
            }
            h.lcp_rank(idx, j + p.0, idx.isa_raw(p.1)).min(cap)
        }, |off| pat.get(j + off).copied())
    }

    // `lcp((matched, text_pos), cap)` returns how many of the next `cap`
    // symbols of the query agree with the text from `text_pos`.
    fn descend_by(
        &self,
        idx: &TextIndex,
        from: Location,
        len: usize,
        lcp: impl Fn((usize, usize), usize) -> usize,
        sym: impl Fn(usize) -> Option<Symbol>,
    ) -> (Location, usize) {
        let mut matched = 0;
        let mut v = match from {
            Location::Node(v) => v,
            Location::Edge { child, .. } => {
                let d = self.loc_depth(from);
                let rest = self.depth(child) - d;
                let m = lcp((0, self.witness(child) + d), rest.min(len));
                if m < rest {
                    let loc = if m == 0 { from } else { self.location_on_edge(child, d + m) };
                    return (loc, m);
                }
                matched = m;
                child
            }
        };
        loop {
            if matched == len {
                return (Location::Node(v), matched);
            }
            let d = self.depth(v);
            let c = match sym(matched) {
                Some(c) => c,
                None => return (Location::Node(v), matched),
            };
            let child = match self.child_by_symbol(idx, v, c) {
                Some(c) => c,
                None => return (Location::Node(v), matched),
            };
            let el = self.depth(child) - d;
            let m = lcp((matched, self.witness(child) + d), el.min(len - matched));
            debug_assert!(m >= 1);
            matched += m;
            if m < el {
                return (self.location_on_edge(child, d + m), matched);
            }
            v = child;
        }
    }

    /// Approximate size in bits of the node arrays.
    pub fn size_bits(&self) -> usize {
        32 * (self.parent.len() * 11 + self.child_list.len() + self.leaf_of_rank.len() + self.path_start.len() + self.path_nodes.len())
    }
}

impl OrderedTree for SuffixTree {
    fn node_count(&self) -> usize {
        self.parent.len()
    }

    fn children(&self, v: usize) -> &[u32] {
        &self.child_list[self.child_start[v] as usize..self.child_start[v + 1] as usize]
    }

    fn subtree_end(&self, v: usize) -> usize {
        self.end[v] as usize
    }
}

#[cfg(test)]
mod tests;
