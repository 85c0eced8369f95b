use alloc::vec::Vec;

use proptest::prelude::*;

use super::compact::{encode_group_topology, heavy_info, TopologyTable};
use super::*;
use crate::testutil::{banana_index, build_index, encode, label, naive_lcp, node_by_label, random_text};

#[test]
fn banana_shape() {
    let (idx, tree) = banana_index();
    let root_kids: Vec<Symbol> = tree
        .children(0)
        .iter()
        .map(|&c| tree.first_symbol(&idx, c as usize))
        .collect();
    assert_eq!(root_kids, encode(&idx, b"$abn"));
    let mut internal: Vec<Vec<Symbol>> = (1..tree.node_count())
        .filter(|&v| !tree.is_leaf(v))
        .map(|v| label(&idx, &tree, v))
        .collect();
    internal.sort();
    let mut want = alloc::vec![encode(&idx, b"a"), encode(&idx, b"ana"), encode(&idx, b"na")];
    want.sort();
    assert_eq!(internal, want);
}

#[test]
fn two_symbol_text() {
    let (idx, tree) = build_index(b"aa");
    let kids: Vec<Symbol> = tree
        .children(0)
        .iter()
        .map(|&c| tree.first_symbol(&idx, c as usize))
        .collect();
    assert_eq!(kids, encode(&idx, b"$a"));
    let a = node_by_label(&idx, &tree, b"a");
    let below: Vec<Vec<Symbol>> = tree
        .children(a)
        .iter()
        .map(|&c| {
            let c = c as usize;
            label(&idx, &tree, c)[1..].to_vec()
        })
        .collect();
    assert_eq!(below, [encode(&idx, b"$"), encode(&idx, b"a$")]);
}

#[test]
fn single_symbol_text_has_two_leaves() {
    let (_, tree) = build_index(b"x");
    assert_eq!(tree.children(0).len(), 2);
    assert!(tree.children(0).iter().all(|&c| tree.is_leaf(c as usize)));
}

#[test]
fn banana_descent_examples() {
    let (idx, tree) = banana_index();
    let na = node_by_label(&idx, &tree, b"na");
    assert_eq!(
        tree.naive_descend(&idx, Location::Node(0), &encode(&idx, b"nay")),
        (Location::Node(na), 2)
    );
    assert_eq!(tree.naive_descend(&idx, Location::Node(na), &[]), (Location::Node(na), 0));
    let a = node_by_label(&idx, &tree, b"a");
    let leaf3 = tree.leaf_of_rank(idx.isa(3).unwrap());
    assert_eq!(
        tree.naive_descend(&idx, Location::Node(a), &encode(&idx, b"na$")),
        (Location::Node(leaf3), 3)
    );
}

#[test]
fn banana_heavy_path() {
    let (idx, tree) = banana_index();
    let a = node_by_label(&idx, &tree, b"a");
    let ana = node_by_label(&idx, &tree, b"ana");
    let leaf = tree.leaf_of_rank(idx.isa(3).unwrap());
    assert_eq!(tree.heavy_child(0), Some(a));
    assert_eq!(tree.path(tree.path_id(0)), &[0, a as u32, ana as u32, leaf as u32]);

    let (sub, hpd) = heavy_path_decompose(&tree, 0, |_| true).unwrap();
    assert_eq!(hpd.path(hpd.path_id(0)).iter().map(|&i| sub.full_id(i as usize)).collect::<Vec<_>>(), [0, a, ana, leaf]);
    let mut seen = alloc::vec![0; sub.len()];
    for p in 0..hpd.path_count() {
        for &v in hpd.path(p) {
            seen[v as usize] += 1;
        }
    }
    assert!(seen.iter().all(|&c| c == 1));
}

#[test]
fn leaf_only_decomposition_is_one_path() {
    let (_, tree) = banana_index();
    let leaf = tree.leaf_of_rank(3);
    let (_, hpd) = heavy_path_decompose(&tree, leaf, |_| true).unwrap();
    assert_eq!(hpd.path_count(), 1);
}

#[test]
fn disconnected_membership_is_rejected() {
    let (idx, tree) = banana_index();
    let ana = node_by_label(&idx, &tree, b"ana");
    let r = heavy_path_decompose(&tree, 0, |v| v == 0 || v == ana);
    assert!(matches!(r, Err(crate::Error::Contract(_))));
}

#[test]
fn banana_compact_heavy_info() {
    let (idx, tree) = banana_index();
    let a = node_by_label(&idx, &tree, b"a");
    let ana = node_by_label(&idx, &tree, b"ana");
    let leaf = tree.leaf_of_rank(idx.isa(3).unwrap());
    let members: Vec<NodeId> = (a..tree.subtree_end(a)).collect();
    let mut table = TopologyTable::new();
    let (sub, enc) = encode_group_topology(&tree, &members, 2, 16, &mut table).unwrap();
    let (head, l) = heavy_info(&enc, &table, sub.index_of(ana).unwrap());
    assert_eq!((sub.full_id(head), sub.full_id(l)), (a, leaf));
    assert!(encode_group_topology(&tree, &members, 2, 2, &mut table).is_err());
}

fn check_tree(idx: &TextIndex, tree: &SuffixTree) -> Result<(), TestCaseError> {
    let n = idx.len();
    let text = idx.text();
    for v in 1..tree.node_count() {
        let p = tree.parent_raw(v);
        prop_assert!(tree.depth(v) > tree.depth(p));
        if !tree.is_leaf(v) {
            prop_assert!(tree.children(v).len() >= 2);
            let w = tree.slink(v).unwrap();
            prop_assert_eq!(label(idx, tree, w), label(idx, tree, v)[1..].to_vec());
        }
    }
    let leaves: Vec<usize> = (0..tree.node_count()).filter(|&v| tree.is_leaf(v)).collect();
    prop_assert_eq!(leaves.len(), n);
    for (r, &leaf) in leaves.iter().enumerate() {
        prop_assert_eq!(tree.lb(leaf), r);
        prop_assert_eq!(tree.leaf_of_rank(r), leaf);
        let pos = idx.sa(r).unwrap();
        prop_assert_eq!(tree.witness(leaf), pos);
        let (loc, m) = tree.naive_descend(idx, Location::Node(0), &text[pos..]);
        prop_assert_eq!(loc, Location::Node(leaf));
        prop_assert_eq!(m, n - pos);
        // heavy path crossings
        let mut crossings = 1;
        let mut x = leaf;
        while tree.path_head(x) != 0 {
            x = tree.parent_raw(tree.path_head(x));
            crossings += 1;
        }
        prop_assert!(crossings <= crate::floor_log2(n) + 1);
    }
    Ok(())
}

proptest! {
    #[test]
    fn random_trees_are_valid((raw, _) in random_text(1..200, 4)) {
        let (idx, tree) = build_index(&raw);
        check_tree(&idx, &tree)?;
    }

    #[test]
    fn location_at_depth_and_lca((raw, _) in random_text(1..120, 3), picks in proptest::collection::vec((any::<u16>(), any::<u16>()), 20)) {
        let (idx, tree) = build_index(&raw);
        let n = idx.len();
        let text = idx.text();
        for (a, b) in picks {
            let ra = a as usize % n;
            let rb = b as usize % n;
            let la = tree.leaf_of_rank(ra);
            let lb = tree.leaf_of_rank(rb);
            let w = tree.lca(la, lb);
            prop_assert_eq!(tree.depth(w), if ra == rb { n - idx.sa(ra).unwrap() } else { idx.lcp_suffixes(ra, rb).unwrap() });
            let pos = idx.sa(ra).unwrap();
            let d = b as usize % (n - pos + 1);
            let want = tree.naive_descend(&idx, Location::Node(0), &text[pos..pos + d]).0;
            prop_assert_eq!(tree.location_at_depth(la, d), want);
            prop_assert_eq!(tree.loc_depth(want), d);
        }
    }

    #[test]
    fn descend_text_matches_naive((raw, _) in random_text(1..120, 3), starts in proptest::collection::vec((any::<u16>(), any::<u16>(), any::<u16>()), 20)) {
        let (idx, tree) = build_index(&raw);
        let n = idx.len();
        let text = idx.text();
        for (a, b, c) in starts {
            let leaf = tree.leaf_of_rank(a as usize % n);
            let d = b as usize % (tree.depth(leaf) + 1);
            let from = tree.location_at_depth(leaf, d);
            let pos = c as usize % n;
            let len = (c as usize / 7) % (n - pos + 1);
            let s = &text[pos..pos + len];
            let want = tree.naive_descend(&idx, from, s);
            prop_assert_eq!(tree.descend_text(&idx, from, pos, len), want);
            prop_assert_eq!(naive_lcp(s, s), len);
        }
    }

    #[test]
    fn compact_heavy_info_matches_decomposition((raw, _) in random_text(2..160, 3), micro in 2usize..5, pick in any::<u16>()) {
        let (_, tree) = build_index(&raw);
        let internal: Vec<usize> = (0..tree.node_count()).filter(|&v| !tree.is_leaf(v)).collect();
        let root = internal[pick as usize % internal.len()];
        let members: Vec<NodeId> = (root..tree.subtree_end(root)).collect();
        let mut table = TopologyTable::new();
        let (sub, enc) = encode_group_topology(&tree, &members, micro, usize::MAX, &mut table).unwrap();
        let hpd = HeavyPathDecomposition::of(&sub);
        for v in 0..sub.len() {
            prop_assert_eq!(heavy_info(&enc, &table, v), (hpd.head(v), hpd.leaf(v)));
        }
    }
}
