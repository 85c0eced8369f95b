use alloc::vec::Vec;

use proptest::prelude::*;

use super::*;
use crate::symbols::FOREIGN;
use crate::testutil::{banana_index, build_index, encode, node_by_label, random_text};

fn banana_partition() -> (TextIndex, SuffixTree, PartitionIndex) {
    let (idx, tree) = banana_index();
    let p = PartitionIndex::build(&idx, &tree, 2, LcpLevel::Full, 2).unwrap();
    (idx, tree, p)
}

#[test]
fn banana_blocks_are_runs_under_the_root() {
    let (idx, tree, p) = banana_partition();
    assert_eq!(p.blocks().len(), 4);
    assert_eq!(p.group_count(), 4);
    assert!(p.blocks().iter().all(|b| b.top == 0 && tree.is_leaf(b.lower)));
    let a = node_by_label(&idx, &tree, b"a");
    let ana = node_by_label(&idx, &tree, b"ana");
    let g = p.block_groups(1).groups().next().unwrap();
    let mut want: Vec<u32> = alloc::vec![0];
    want.extend((a..tree.subtree_end(a)).map(|v| v as u32));
    assert_eq!(g.subtree().members(), &want[..]);
    assert_eq!(p.owner(ana), Some((1, Side::Run)));
    assert_eq!(p.owner(0), None);
}

#[test]
fn banana_rank_and_marked_tree() {
    let (_, tree, p) = banana_partition();
    assert_eq!(p.rank1(0), 0);
    assert_eq!(p.marked_to_tm(0).unwrap(), 0);
    assert_eq!(p.tm_to_node(0), 0);
    let unmarked = (0..tree.node_count()).find(|&v| !p.is_marked(v)).unwrap();
    assert!(matches!(p.marked_to_tm(unmarked), Err(Error::Contract(_))));
    assert_eq!(p.marked_bits().count_ones(), 5);
}

#[test]
fn banana_routing() {
    let (idx, tree, p) = banana_partition();
    let mut st = QueryStats::default();
    for (sym, block) in [(b'a', 1), (b'b', 2), (b'n', 3)] {
        assert_eq!(p.route_child(0, idx.alphabet().symbol(sym), &mut st).unwrap(), Some(block));
    }
    assert_eq!(p.route_child(0, FOREIGN, &mut st).unwrap(), Some(3));
    let a = node_by_label(&idx, &tree, b"a");
    assert!(p.route_child(a, 1, &mut st).is_err());
}

#[test]
fn banana_marked_tree_query() {
    // the marked tree holds the suffixes "$", "ana$", "banana$" and "nana$"
    let (idx, tree, p) = banana_partition();
    let mut st = QueryStats::default();
    let h = PatternHandle::new(&idx, &tree, &encode(&idx, b"nana")).unwrap();
    let leaf = tree.leaf_of_rank(idx.isa(2).unwrap());
    let (loc, m) = p.unrooted_lcp_marked(&idx, &tree, 0, &h, 0, &mut st).unwrap();
    // locations are full-tree locations: two symbols below node "na"
    assert_eq!((loc, m), (Location::Edge { child: leaf, offset: 2 }, 4));
    assert_eq!(tree.loc_depth(loc), 4);
    assert_eq!(p.unrooted_lcp_marked(&idx, &tree, 0, &h, 4, &mut st).unwrap(), (Location::Node(0), 0));
    assert!(p.unrooted_lcp_marked(&idx, &tree, 9, &h, 0, &mut st).is_err());
}

#[test]
fn banana_full_query() {
    let (idx, tree, p) = banana_partition();
    let mut st = QueryStats::default();
    let h = PatternHandle::new(&idx, &tree, &encode(&idx, b"anan")).unwrap();
    let leaf = tree.leaf_of_rank(idx.isa(1).unwrap());
    let ana = node_by_label(&idx, &tree, b"ana");
    let (loc, m) = p.lcp_from(&idx, &tree, Location::Node(0), &h, 0, &mut st);
    assert_eq!(m, 4);
    assert_eq!(loc, Location::Edge { child: leaf, offset: 1 });
    assert_eq!(tree.parent(leaf), Some(ana));
    assert_eq!(p.lcp_from(&idx, &tree, Location::Node(ana), &h, 4, &mut st), (Location::Node(ana), 0));
}

fn check_partition(raw: &[u8], tau: usize, level: LcpLevel, pats: &[Vec<Symbol>], picks: &[(u16, u16)]) -> core::result::Result<(), TestCaseError> {
    let (idx, tree) = build_index(raw);
    let p = PartitionIndex::build(&idx, &tree, tau, level, 2).unwrap();
    let k = tree.node_count();
    let m = p.marking();
    prop_assert!(m.marked_internal <= m.marked_leaves);

    // every non-root node is owned by one block, and lies in the groups of
    // that block
    for v in 1..k {
        let (b, side) = p.owner(v).unwrap();
        prop_assert!(p.blocks()[b].owns(&tree, v));
        let inside = p.block_groups(b).groups().filter(|g| g.subtree().index_of(v).is_some()).count();
        let want = if side == Side::Path { 2 } else { 1 };
        prop_assert_eq!(inside, want, "node {} side {:?}", v, side);
    }
    let marked_total = m.marked_internal + m.marked_leaves;
    prop_assert!(p.group_count() <= 2 * marked_total);
    for (_, g) in p.group_subtrees() {
        prop_assert!(g.len() <= 4 * tau, "group of {} nodes, tau {}", g.len(), tau);
    }

    // rank and the marked-tree map
    let mut acc = 0;
    for v in 0..k {
        prop_assert_eq!(p.rank1(v), acc);
        if p.is_marked(v) {
            let t = p.marked_to_tm(v).unwrap();
            prop_assert_eq!(p.tm_to_node(t), v);
            acc += 1;
        }
    }

    // routing agrees with the child lookup
    let mut st = QueryStats::default();
    for u in 0..k {
        if !p.is_marked(u) || tree.is_leaf(u) {
            continue;
        }
        for c in 1..=(idx.sigma() as Symbol) {
            if let Some(x) = tree.child_by_symbol(&idx, u, c) {
                let b = p.route_child(u, c, &mut st).unwrap().unwrap();
                prop_assert!(p.blocks()[b].owns(&tree, x));
            }
        }
    }

    let env = p.env(&idx, &tree);
    let tm = p.marked_tree();
    // random patterns plus text substrings with their last symbol bumped,
    // which follow long paths before diverging
    let text = idx.text();
    let mut all: Vec<Vec<Symbol>> = pats.to_vec();
    for &(a, b) in picks.iter().take(3) {
        let pos = a as usize % (text.len() - 1);
        let len = (b as usize % 16).min(text.len() - 1 - pos);
        let mut s = text[pos..pos + len].to_vec();
        if let Some(last) = s.last_mut() {
            *last = *last % idx.sigma() as Symbol + 1;
        }
        all.push(s);
    }
    for pat in &all {
        let pat: Vec<Symbol> = pat.iter().map(|&c| if c as usize > idx.sigma() { FOREIGN } else { c }).collect();
        let h = PatternHandle::new(&idx, &tree, &pat).unwrap();
        for j in 0..=pat.len() {
            let s = &pat[j..];
            for t in 0..tm.subtree().len() {
                let got = p.unrooted_lcp_marked(&idx, &tree, t, &h, j, &mut st).unwrap();
                prop_assert_eq!(got, tm.subtree().naive_descend(&tree, &idx, t, s));
            }
            for (_, g) in p.groups.iter().enumerate().flat_map(|(b, bg)| bg.groups().map(move |g| (b, g))) {
                for i in 0..g.subtree().len() {
                    let u = g.subtree().full_id(i);
                    let got = g.unrooted_lcp_small(&env, u, &h, j, &mut st).unwrap();
                    prop_assert_eq!(got, g.subtree().naive_descend(&tree, &idx, i, s));
                }
            }
            for v in 0..k {
                let mut st = QueryStats::default();
                let got = p.lcp_from(&idx, &tree, Location::Node(v), &h, j, &mut st);
                prop_assert_eq!(got, tree.naive_descend(&idx, Location::Node(v), s), "v={} j={}", v, j);
            }
            for &(a, b) in picks {
                let leaf = tree.leaf_of_rank(a as usize % idx.len());
                let d = b as usize % (tree.depth(leaf) + 1);
                let from = tree.location_at_depth(leaf, d);
                let got = p.lcp_from(&idx, &tree, from, &h, j, &mut st);
                prop_assert_eq!(got, tree.naive_descend(&idx, from, s));
            }
        }
    }
    Ok(())
}

fn patterns() -> impl Strategy<Value = Vec<Vec<Symbol>>> {
    proptest::collection::vec(proptest::collection::vec(1..=4 as Symbol, 0..12), 3)
}

proptest! {
    #[test]
    fn full_level_queries_match_naive((raw, _) in random_text(1..160, 3), tau in 2usize..9, pats in patterns(), picks in proptest::collection::vec(any::<(u16, u16)>(), 10)) {
        check_partition(&raw, tau, LcpLevel::Full, &pats, &picks)?;
    }

    #[test]
    fn compact_level_queries_match_naive((raw, _) in random_text(1..160, 4), tau in 2usize..9, pats in patterns(), picks in proptest::collection::vec(any::<(u16, u16)>(), 10)) {
        check_partition(&raw, tau, LcpLevel::Compact, &pats, &picks)?;
    }

    #[test]
    fn sampled_level_queries_match_naive((raw, _) in random_text(1..160, 2), tau in 2usize..9, pats in patterns(), picks in proptest::collection::vec(any::<(u16, u16)>(), 10)) {
        check_partition(&raw, tau, LcpLevel::Sampled { d_step: 2, h_step: 2 }, &pats, &picks)?;
    }
}
