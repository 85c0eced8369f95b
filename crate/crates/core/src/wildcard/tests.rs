use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::group::LcpLevel;
use crate::index::{IndexParams, WildcardIndex};
use crate::stats::QueryStats;
use crate::suffix::PatternHandle;
use crate::symbols::{AlphabetSpec, Symbol, FOREIGN, WILDCARD};
use crate::testutil::{encode, label, node_by_label, random_text, scan};
use crate::tree::{Location, OrderedTree};
use crate::{floor_log2, SaSampling};

fn build(raw: &[u8], tau: usize, lambda: usize, level: LcpLevel) -> WildcardIndex {
    let params = IndexParams {
        tau: Some(tau),
        lambda: Some(lambda),
        level: Some(level),
        micro_block: Some(2),
        sampling: SaSampling::Full,
    };
    WildcardIndex::build(raw, &AlphabetSpec::Infer, &params).unwrap()
}

fn banana() -> WildcardIndex {
    build(b"banana", 2, 3, LcpLevel::Full)
}

/// Per-symbol descent of `a P[j..]` from `u`, keeping symbols that match at
/// least one step.
fn naive_entries(ix: &WildcardIndex, u: usize, pat: &[Symbol]) -> Vec<WildcardEntry> {
    let (idx, tree) = (ix.text(), ix.tree());
    let mut out = Vec::new();
    for a in 1..=idx.sigma() as Symbol {
        let mut s = alloc::vec![a];
        s.extend_from_slice(pat);
        let (loc, m) = tree.naive_descend(idx, Location::Node(u), &s);
        if m >= 1 {
            out.push(WildcardEntry {
                symbol: a,
                loc,
                matched: m,
                full: m == s.len(),
            });
        }
    }
    out
}

#[test]
fn banana_wildcard_tree_of_the_root() {
    let ix = banana();
    let (idx, tree, part, layer) = (ix.text(), ix.tree(), ix.partition(), ix.layer());
    assert_eq!(layer.heavy_symbol(part, 0).unwrap(), Some(idx.alphabet().symbol(b'a')));
    let trees = layer.trees_of(part, 0).unwrap();
    assert_eq!(trees.len(), 1);
    let t = &trees[0];
    let leaves: Vec<Vec<Symbol>> = (0..t.node_count())
        .map(|w| t.node(w))
        .filter(|&v| tree.is_leaf(v))
        .map(|v| label(idx, tree, v))
        .collect();
    assert_eq!(leaves, [encode(idx, b"ana$"), encode(idx, b"anana$")]);
    let ana = node_by_label(idx, tree, b"ana");
    let w = t.index_of(ana).unwrap();
    let bana = tree.naive_descend(idx, Location::Node(0), &encode(idx, b"bana")).0;
    let nana = tree.naive_descend(idx, Location::Node(0), &encode(idx, b"nana")).0;
    assert_eq!(t.pointer(w, idx.alphabet().symbol(b'b')).unwrap().loc, bana);
    assert_eq!(t.pointer(w, idx.alphabet().symbol(b'n')).unwrap().loc, nana);
    assert!(t.pointer(w, idx.alphabet().symbol(b'a')).is_none());
    // "banana$" lies below "bana", on the edge into its leaf
    assert!(matches!(bana, Location::Edge { .. }));
    layer.verify_pointers(idx, tree, part).unwrap();
}

#[test]
fn banana_wildcard_query_from_the_root() {
    let ix = banana();
    let idx = ix.text();
    let e = ix.engine();
    let pat = encode(idx, b"ana");
    let h = PatternHandle::new(idx, ix.tree(), &pat).unwrap();
    let mut st = QueryStats::default();
    let got = e.wildcard_lcp(0, &h, 0, &mut st).unwrap();
    let full: Vec<(u8, usize)> = got
        .iter()
        .filter(|x| x.full)
        .map(|x| (idx.alphabet().byte(x.symbol).unwrap(), x.matched))
        .collect();
    assert_eq!(full, [(b'b', 4), (b'n', 4)]);
    // "aana" does not occur; only its first symbol matches
    let a = got.iter().find(|x| x.symbol == idx.alphabet().symbol(b'a')).unwrap();
    assert_eq!((a.matched, a.full), (1, false));
    assert_eq!(got, naive_entries(&ix, 0, &pat));
}

#[test]
fn empty_pattern_lists_the_children() {
    let ix = banana();
    let (idx, tree) = (ix.text(), ix.tree());
    let h = PatternHandle::new(idx, tree, &[]).unwrap();
    let mut st = QueryStats::default();
    let got = ix.engine().wildcard_lcp(0, &h, 0, &mut st).unwrap();
    assert_eq!(got.len(), 3);
    for x in &got {
        assert!(x.full);
        assert_eq!(x.matched, 1);
        assert_eq!(Some(x.loc), tree.step_down(idx, Location::Node(0), x.symbol));
    }
    let unmarked = (0..tree.node_count()).find(|&v| !ix.partition().is_marked(v)).unwrap();
    assert!(ix.engine().wildcard_lcp(unmarked, &h, 0, &mut st).is_err());
}

#[test]
fn banana_matches() {
    let ix = banana();
    for (src, want) in [
        (&b"?a"[..], &[0usize, 2, 4][..]),
        (b"a?a", &[1, 3]),
        (b"ana", &[1, 3]),
        (b"?ana", &[0, 2]),
        (b"??????", &[0]),
        (b"???????", &[]),
        (b"a?", &[1, 3]),
        (b"x?a", &[]),
        (b"", &[0, 1, 2, 3, 4, 5]),
    ] {
        let p = ix.parse_pattern(src).unwrap();
        assert_eq!(scan(ix.text().text(), &p), want, "scan {:?}", src);
        assert_eq!(ix.match_baseline(&p).unwrap().positions, want, "baseline {:?}", src);
        assert_eq!(ix.match_accelerated(&p).unwrap().positions, want, "accelerated {:?}", src);
    }
}

#[test]
fn unknown_bytes_match_nothing() {
    let ix = banana();
    let p = ix.parse_pattern(b"?\\?").unwrap();
    assert_eq!(p.to_symbols(), [WILDCARD, FOREIGN]);
    assert!(ix.match_accelerated(&p).unwrap().positions.is_empty());
}

fn level_of(k: u8) -> LcpLevel {
    match k % 4 {
        0 => LcpLevel::Full,
        1 => LcpLevel::Compact,
        2 => LcpLevel::Sampled { d_step: 2, h_step: 3 },
        _ => LcpLevel::Ordered,
    }
}

/// Random patterns plus text windows with some positions turned into
/// wildcards, so that many patterns occur.
fn patterns_for(text: &[Symbol], sigma: usize, seeds: &[(u16, u16, u16)]) -> Vec<WildcardPattern> {
    let mut out = Vec::new();
    for &(a, b, c) in seeds {
        let pos = a as usize % (text.len() - 1);
        let len = 1 + b as usize % 7;
        let len = len.min(text.len() - 1 - pos);
        let mut units = text[pos..pos + len].to_vec();
        for (i, x) in units.iter_mut().enumerate() {
            if (c >> (i % 16)) & 1 == 1 {
                *x = WILDCARD;
            }
        }
        if c % 5 == 0 {
            if let Some(last) = units.iter_mut().rev().find(|x| **x != WILDCARD) {
                *last = *last % (sigma as Symbol + 1) + 1;
                if *last as usize > sigma {
                    *last = FOREIGN;
                }
            }
        }
        out.push(WildcardPattern::from_symbols(&units).unwrap());
    }
    out
}

fn check_engine(raw: &[u8], tau: usize, lambda: usize, level: u8, seeds: &[(u16, u16, u16)]) -> core::result::Result<(), TestCaseError> {
    let ix = build(raw, tau, lambda, level_of(level));
    let (idx, tree, part, layer) = (ix.text(), ix.tree(), ix.partition(), ix.layer());
    prop_assert!(layer.verify_pointers(idx, tree, part).is_ok());

    // leaf multiplicity: a marked leaf appears in one wildcard tree per
    // light edge above it in the marked tree
    let m = part.marking();
    let n_m = m.marked_leaves;
    prop_assert!(layer.leaf_total() <= n_m * (floor_log2(n_m) + 1), "{} leaves for {} marked", layer.leaf_total(), n_m);

    let text = idx.text();
    let sigma = idx.sigma();
    let pats = patterns_for(text, sigma, seeds);
    let e = ix.engine();
    for p in &pats {
        let want = scan(text, p);
        let base = ix.match_baseline(p).unwrap();
        let acc = ix.match_accelerated(p).unwrap();
        prop_assert_eq!(&base.positions, &want, "baseline {:?}", p);
        prop_assert_eq!(&acc.positions, &want, "accelerated {:?}", p);
        let g = p.wildcard_count() as u32;
        // with a single symbol every step is forced, and the standard query
        // for a leading literal comes on top of one query per wildcard
        let bound = if sigma >= 2 { (sigma as u64).saturating_pow(g) } else { 1 + g as u64 };
        prop_assert!(acc.stats.combined_lcp() <= bound, "{} queries for {:?}", acc.stats.combined_lcp(), p);

        // wildcard LCP from every marked internal node for every literal
        for piece in p.pieces() {
            let lit = &piece.literal;
            let h = PatternHandle::new(idx, tree, lit).unwrap();
            for u in 0..tree.node_count() {
                if !part.is_marked(u) || tree.is_leaf(u) {
                    continue;
                }
                for j in [0, lit.len() / 2, lit.len()] {
                    let mut st = QueryStats::default();
                    let got = e.wildcard_lcp(u, &h, j, &mut st).unwrap();
                    prop_assert_eq!(&got, &naive_entries(&ix, u, &lit[j..]), "u={} j={}", u, j);
                    prop_assert_eq!(e.wildcard_lcp_by_children(u, &h, j, &mut st), got);
                }
            }
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn wildcard_queries_match_naive((raw, _) in random_text(1..200, 4), tau in 2usize..9, lambda in 1usize..5, level in any::<u8>(), seeds in proptest::collection::vec(any::<(u16, u16, u16)>(), 8)) {
        check_engine(&raw, tau, lambda, level, &seeds)?;
    }

    #[test]
    fn wildcard_queries_on_repetitive_texts(unit in proptest::collection::vec(b'a'..b'd', 1..5), reps in 1usize..40, tau in 2usize..6, lambda in 1usize..4, seeds in proptest::collection::vec(any::<(u16, u16, u16)>(), 8)) {
        let raw: Vec<u8> = unit.iter().copied().cycle().take(unit.len() * reps).collect();
        check_engine(&raw, tau, lambda, 0, &seeds)?;
    }
}
