//! Reporting all occurrences of a wildcard pattern.
//!
//! Both matchers keep a frontier of suffix tree locations, one per distinct
//! text string matching the pattern prefix processed so far, and extend it
//! piece by piece. The baseline expands every wildcard by stepping into each
//! child and searches each literal piece with a standard unrooted LCP query.
//! The accelerated matcher handles a wildcard together with the literal that
//! follows it in one wildcard LCP query whenever the frontier location is a
//! node, and needs a standard query only when it resumes inside an edge.

use alloc::vec::Vec;

use crate::error::Result;
use crate::stats::QueryStats;
use crate::suffix::PatternHandle;
use crate::symbols::{FOREIGN, SENTINEL};
use crate::tree::{Location, OrderedTree};

use super::layer::Engine;
use super::pattern::WildcardPattern;

/// Loci of a completed match. `full` is false for loci that stopped short of
/// the pattern end; those contribute no occurrences.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MatchOutcome {
    pub positions: Vec<usize>,
    pub loci: Vec<(Location, bool)>,
    pub stats: QueryStats,
}

impl<'a> Engine<'a> {
    fn handles(&self, p: &WildcardPattern) -> Result<Vec<PatternHandle>> {
        p.pieces()
            .iter()
            .map(|piece| PatternHandle::new(self.idx, self.tree, &piece.literal))
            .collect()
    }

    /// Matches `P[j..]` from `loc`: compares along the current edge and
    /// issues one standard query if the comparison reaches a node. Returns
    /// the end location when all of `P[j..]` matched.
    fn literal_from(&self, loc: Location, h: &PatternHandle, j: usize, st: &mut QueryStats) -> Option<Location> {
        let (idx, tree) = (self.idx, self.tree);
        let len = h.len() - j;
        if len == 0 {
            return Some(loc);
        }
        let start = match loc {
            Location::Node(v) => v,
            Location::Edge { child, .. } => {
                let d = tree.loc_depth(loc);
                let rest = tree.depth(child) - d;
                let r = idx.isa_at(tree.witness(child) + d, st);
                let m = h.lcp_rank(idx, j, r).min(rest);
                if m >= len {
                    return Some(tree.location_on_edge(child, d + len));
                }
                if m < rest {
                    return None;
                }
                child
            }
        };
        let done = tree.loc_depth(loc).abs_diff(tree.depth(start));
        st.standard_lcp += 1;
        let (end, m) = self.part.lcp_from(idx, tree, Location::Node(start), h, j + done, st);
        (m == len - done).then_some(end)
    }

    /// Baseline matcher: wildcards expand to every child, literals are found
    /// with standard unrooted LCP queries.
    pub fn match_baseline(&self, p: &WildcardPattern) -> Result<MatchOutcome> {
        let Some(handles) = self.prepare(p)? else {
            return Ok(self.trivial(p));
        };
        let mut st = QueryStats::default();
        let mut frontier = alloc::vec![Location::Node(0)];
        let mut steps = Vec::new();
        for (piece, h) in p.pieces().iter().zip(&handles) {
            for _ in 0..piece.wildcards {
                let mut next = Vec::new();
                for &loc in &frontier {
                    self.tree.next_steps(self.idx, loc, &mut steps);
                    next.extend(steps.iter().filter(|&&(a, _)| a != SENTINEL).map(|&(_, l)| l));
                }
                frontier = next;
            }
            if !h.is_empty() {
                frontier = frontier
                    .into_iter()
                    .filter_map(|loc| self.literal_from(loc, h, 0, &mut st))
                    .collect();
            }
        }
        Ok(self.finish(frontier, st))
    }

    /// Accelerated matcher: each wildcard run is consumed one wildcard at a
    /// time, the last one together with the literal that follows it, by a
    /// wildcard LCP query from nodes and by a one-symbol step plus a
    /// standard query from edges.
    pub fn match_accelerated(&self, p: &WildcardPattern) -> Result<MatchOutcome> {
        let Some(handles) = self.prepare(p)? else {
            return Ok(self.trivial(p));
        };
        let empty = PatternHandle::new(self.idx, self.tree, &[])?;
        let mut st = QueryStats::default();
        let mut frontier = alloc::vec![Location::Node(0)];
        for (piece, h) in p.pieces().iter().zip(&handles) {
            if piece.wildcards == 0 {
                // only the first piece; its locus is part of the pattern
                // preprocessing
                st.standard_lcp += 1;
                let (loc, m) = h.locus(0);
                frontier = if m == h.len() { alloc::vec![loc] } else { Vec::new() };
                continue;
            }
            for w in 0..piece.wildcards {
                let h = if w + 1 == piece.wildcards { h } else { &empty };
                let mut next = Vec::new();
                for &loc in &frontier {
                    self.wildcard_step(loc, h, &mut next, &mut st)?;
                }
                frontier = next;
            }
        }
        Ok(self.finish(frontier, st))
    }

    /// Extends `loc` by one wildcard followed by all of `h`, pushing every
    /// fully matched end location.
    fn wildcard_step(&self, loc: Location, h: &PatternHandle, out: &mut Vec<Location>, st: &mut QueryStats) -> Result<()> {
        let (idx, tree) = (self.idx, self.tree);
        match loc {
            Location::Node(v) => {
                if tree.is_leaf(v) {
                    return Ok(());
                }
                st.wildcard_lcp += 1;
                let entries = if self.part.is_marked(v) {
                    self.wildcard_lcp(v, h, 0, st)?
                } else {
                    self.wildcard_lcp_by_children(v, h, 0, st)
                };
                out.extend(entries.into_iter().filter(|e| e.full).map(|e| e.loc));
            }
            Location::Edge { child, .. } => {
                let d = tree.loc_depth(loc);
                if tree.symbol_at(idx, child, d) == SENTINEL {
                    return Ok(());
                }
                let next = tree.location_on_edge(child, d + 1);
                out.extend(self.literal_from(next, h, 0, st));
            }
        }
        Ok(())
    }

    /// Pattern handles, or `None` when the answer needs no search: an empty
    /// pattern, a pattern longer than the text, or a literal symbol outside
    /// the alphabet.
    fn prepare(&self, p: &WildcardPattern) -> Result<Option<Vec<PatternHandle>>> {
        let foreign = p.pieces().iter().any(|x| x.literal.iter().any(|&c| c == FOREIGN || c as usize > self.idx.sigma()));
        if p.is_empty() || p.len() > self.idx.len() - 1 || foreign {
            return Ok(None);
        }
        Ok(Some(self.handles(p)?))
    }

    fn trivial(&self, p: &WildcardPattern) -> MatchOutcome {
        let positions = if p.is_empty() { (0..self.idx.len() - 1).collect() } else { Vec::new() };
        MatchOutcome {
            positions,
            ..MatchOutcome::default()
        }
    }

    fn finish(&self, frontier: Vec<Location>, mut stats: QueryStats) -> MatchOutcome {
        let loci: Vec<(Location, bool)> = frontier.into_iter().map(|l| (l, true)).collect();
        MatchOutcome {
            positions: self.report_occurrences(&loci, &mut stats),
            loci,
            stats,
        }
    }

    /// Text positions below the fully matched loci, sorted. The final
    /// position (the sentinel) is never reported.
    pub fn report_occurrences(&self, loci: &[(Location, bool)], st: &mut QueryStats) -> Vec<usize> {
        let n = self.idx.len();
        let mut out: Vec<usize> = loci
            .iter()
            .filter(|&&(_, full)| full)
            .flat_map(|&(loc, _)| {
                let v = loc.lower();
                self.tree.lb(v)..=self.tree.rb(v)
            })
            .map(|r| self.idx.sa_at(r, st))
            .filter(|&pos| pos < n - 1)
            .collect();
        out.sort_unstable();
        debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
        out
    }
}
