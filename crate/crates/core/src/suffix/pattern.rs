//! Per-pattern preprocessing: the rank, neighbour LCPs and suffix tree locus
//! of every pattern suffix `P[j..]`.

use alloc::vec::Vec;

use super::TextIndex;
use crate::error::{check_range, Error, Result};
use crate::symbols::{Symbol, SENTINEL, WILDCARD};
use crate::tree::{Location, OrderedTree, SuffixTree};

/// Preprocessed data for one pattern suffix `P[j..]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PatternEntry {
    /// Number of text suffixes strictly smaller than `P[j..]`.
    pub rank: usize,
    /// LCP with the suffix of rank `rank - 1`, or 0 when `rank == 0`.
    pub lcp_left: usize,
    /// LCP with the suffix of rank `rank`, or 0 when `rank == n`.
    pub lcp_right: usize,
    /// Lowest location reached by searching `P[j..]` from the root.
    pub locus: Location,
    /// String depth of `locus`, the longest prefix of `P[j..]` in the text.
    pub matched: usize,
}

/// A literal pattern with every suffix located in the suffix tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternHandle {
    pattern: Vec<Symbol>,
    // one entry per j in 0..=len; the last one is the empty suffix
    entries: Vec<PatternEntry>,
}

impl PatternHandle {
    /// Locates every suffix of `pattern` with a suffix-link walk: after the
    /// locus of `P[j..]` is known, the search for `P[j+1..]` resumes from the
    /// suffix link of the node above it and skips the symbols already known
    /// to match.
    pub fn new(idx: &TextIndex, tree: &SuffixTree, pattern: &[Symbol]) -> Result<Self> {
        if pattern.contains(&WILDCARD) {
            return Err(Error::Contract("literal pattern contains a wildcard"));
        }
        if pattern.contains(&SENTINEL) {
            return Err(Error::Contract("literal pattern contains the sentinel"));
        }
        let len = pattern.len();
        let mut entries = Vec::with_capacity(len + 1);
        // (node at or above the previous locus, matched length)
        let mut prev: Option<(usize, usize)> = None;
        for j in 0..len {
            let p = &pattern[j..];
            let (start, known) = match prev {
                None => (0, 0),
                Some((up, m)) => {
                    if up == 0 {
                        (0, m.saturating_sub(1))
                    } else {
                        (tree.slink(up).expect("internal node has a suffix link"), m - 1)
                    }
                }
            };
            let (v, d) = skip_count(idx, tree, start, p, known);
            let (locus, matched) = compare_down(idx, tree, v, d, p);
            entries.push(entry(idx, tree, p, locus, matched));
            prev = Some((tree.loc_upper(locus), matched));
        }
        entries.push(PatternEntry {
            rank: 0,
            lcp_left: 0,
            lcp_right: 0,
            locus: Location::Node(0),
            matched: 0,
        });
        Ok(PatternHandle {
            pattern: pattern.to_vec(),
            entries,
        })
    }

    pub fn pattern(&self) -> &[Symbol] {
        &self.pattern
    }

    pub fn len(&self) -> usize {
        self.pattern.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pattern.is_empty()
    }

    /// Entry for `P[j..]`, `j` in `0..=len`.
    pub fn entry(&self, j: usize) -> Result<&PatternEntry> {
        check_range("pattern suffix", j, self.entries.len())?;
        Ok(&self.entries[j])
    }

    pub fn rank(&self, j: usize) -> usize {
        self.entries[j].rank
    }

    pub fn locus(&self, j: usize) -> (Location, usize) {
        let e = &self.entries[j];
        (e.locus, e.matched)
    }

    /// `LCP(P[j..], suffix of rank q)`.
    pub fn lcp_pattern_suffix(&self, idx: &TextIndex, j: usize, q: usize) -> Result<usize> {
        check_range("pattern suffix", j, self.entries.len())?;
        check_range("rank", q, idx.len())?;
        Ok(self.lcp_rank(idx, j, q))
    }

    /// Unchecked form of [`lcp_pattern_suffix`](Self::lcp_pattern_suffix):
    /// one stored neighbour LCP combined with one range-minimum lookup.
    pub(crate) fn lcp_rank(&self, idx: &TextIndex, j: usize, q: usize) -> usize {
        let e = &self.entries[j];
        let r = e.rank;
        if j == self.pattern.len() {
            0
        } else if q == r {
            e.lcp_right
        } else if q + 1 == r {
            e.lcp_left
        } else if q < r {
            e.lcp_left.min(idx.lcp_ranks(q, r - 1))
        } else {
            e.lcp_right.min(idx.lcp_ranks(r, q))
        }
    }
}

/// Walks down from `v` along `p[..known]`, which is known to be spelled
/// below `v`, looking only at the first symbol of each edge. Returns the
/// last node passed and the matched length, which is at most `known`.
fn skip_count(idx: &TextIndex, tree: &SuffixTree, mut v: usize, p: &[Symbol], known: usize) -> (usize, usize) {
    let mut d = tree.depth(v);
    loop {
        if d >= known {
            return (v, d);
        }
        let child = tree
            .child_by_symbol(idx, v, p[d])
            .expect("skipped symbols are spelled below the node");
        if tree.depth(child) > known {
            return (v, d);
        }
        v = child;
        d = tree.depth(child);
    }
}

/// Continues the search for `p` from node `v` at string depth `d` (all of
/// `p[..d]` matched) by comparing symbols.
fn compare_down(idx: &TextIndex, tree: &SuffixTree, mut v: usize, mut d: usize, p: &[Symbol]) -> (Location, usize) {
    loop {
        if d == p.len() {
            return (Location::Node(v), d);
        }
        let Some(child) = tree.child_by_symbol(idx, v, p[d]) else {
            return (Location::Node(v), d);
        };
        let cd = tree.depth(child);
        let mut k = d + 1;
        while k < cd && k < p.len() && tree.symbol_at(idx, child, k) == p[k] {
            k += 1;
        }
        if k < cd {
            return (tree.location_on_edge(child, k), k);
        }
        v = child;
        d = k;
    }
}

fn entry(idx: &TextIndex, tree: &SuffixTree, p: &[Symbol], locus: Location, matched: usize) -> PatternEntry {
    let n = idx.len();
    let lower = locus.lower();
    let rank = if matched == p.len() {
        tree.lb(lower)
    } else {
        let c = p[matched];
        match locus {
            Location::Node(v) => {
                let kids = tree.children(v);
                let d = tree.depth(v);
                let i = kids.partition_point(|&k| tree.symbol_at(idx, k as usize, d) < c);
                match kids.get(i) {
                    Some(&k) => tree.lb(k as usize),
                    None => tree.rb(v) + 1,
                }
            }
            Location::Edge { child, .. } => {
                if c < tree.symbol_at(idx, child, matched) {
                    tree.lb(child)
                } else {
                    tree.rb(child) + 1
                }
            }
        }
    };
    let anchor = tree.lb(lower);
    let lcp_with = |q: usize| matched.min(idx.lcp_ranks(q, anchor));
    PatternEntry {
        rank,
        lcp_left: if rank > 0 { lcp_with(rank - 1) } else { 0 },
        lcp_right: if rank < n { lcp_with(rank) } else { 0 },
        locus,
        matched,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symbols::FOREIGN;
    use crate::testutil::{banana_index, build_index, encode, naive_lcp, naive_sa, random_text};
    use proptest::prelude::*;

    #[test]
    fn banana_nana() {
        let (idx, tree) = banana_index();
        let h = PatternHandle::new(&idx, &tree, &encode(&idx, b"nana")).unwrap();
        let e = h.entry(0).unwrap();
        assert_eq!(e.rank, 6);
        assert_eq!(e.lcp_right, 4);
        assert_eq!(e.lcp_left, 2);
        // "anana$" has rank 3, "na$" rank 5
        assert_eq!(h.lcp_pattern_suffix(&idx, 0, 3).unwrap(), 0);
        assert_eq!(h.lcp_pattern_suffix(&idx, 0, 5).unwrap(), 2);
        assert_eq!(h.lcp_pattern_suffix(&idx, 0, 6).unwrap(), e.lcp_right);
        assert!(h.lcp_pattern_suffix(&idx, 5, 0).is_err());
    }

    #[test]
    fn suffix_equal_to_text_suffix_prefix() {
        // "ana" is a prefix of "ana$" (rank 2); the rank counts strictly
        // smaller suffixes, so the insertion point is before "ana$"
        let (idx, tree) = banana_index();
        let h = PatternHandle::new(&idx, &tree, &encode(&idx, b"ana")).unwrap();
        assert_eq!(h.rank(0), 2);
        assert_eq!(h.entry(0).unwrap().lcp_right, 3);
    }

    #[test]
    fn pattern_above_every_symbol() {
        let (idx, tree) = banana_index();
        let h = PatternHandle::new(&idx, &tree, &[FOREIGN, 1]).unwrap();
        assert_eq!(h.rank(0), idx.len());
        assert_eq!(h.entry(0).unwrap().lcp_right, 0);
    }

    #[test]
    fn wildcards_are_rejected() {
        let (idx, tree) = banana_index();
        assert!(matches!(PatternHandle::new(&idx, &tree, &[1, WILDCARD]), Err(Error::Contract(_))));
        assert!(matches!(PatternHandle::new(&idx, &tree, &[SENTINEL]), Err(Error::Contract(_))));
    }

    fn pattern_over(sigma: usize) -> impl Strategy<Value = Vec<Symbol>> {
        proptest::collection::vec(1..=(sigma as Symbol + 1), 0..12)
    }

    proptest! {
        #[test]
        fn matches_naive_rank_and_lcp((raw, sigma) in random_text(1..256, 4), pats in proptest::collection::vec(pattern_over(4), 4)) {
            let (idx, tree) = build_index(&raw);
            let text = idx.text();
            let sa = naive_sa(text);
            let n = text.len();
            for p in pats {
                // symbols above sigma stand in for foreign bytes
                let p: Vec<Symbol> = p.into_iter().map(|c| if c as usize > sigma.min(idx.sigma()) { FOREIGN } else { c }).collect();
                let h = PatternHandle::new(&idx, &tree, &p).unwrap();
                for j in 0..=p.len() {
                    let pj = &p[j..];
                    let rank = sa.iter().filter(|&&s| &text[s..] < pj).count();
                    let e = *h.entry(j).unwrap();
                    prop_assert_eq!(e.rank, rank);
                    let (want, m) = tree.naive_descend(&idx, Location::Node(0), pj);
                    prop_assert_eq!((e.locus, e.matched), (want, m));
                    if rank > 0 {
                        prop_assert_eq!(e.lcp_left, naive_lcp(pj, &text[sa[rank - 1]..]));
                    }
                    if rank < n {
                        prop_assert_eq!(e.lcp_right, naive_lcp(pj, &text[sa[rank]..]));
                    }
                    for (q, &s) in sa.iter().enumerate() {
                        prop_assert_eq!(h.lcp_pattern_suffix(&idx, j, q).unwrap(), naive_lcp(pj, &text[s..]));
                    }
                }
            }
        }
    }
}
