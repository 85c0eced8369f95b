use alloc::vec::Vec;

use proptest::prelude::*;

use crate::suffix::{SaSampling, TextIndex};
use crate::symbols::{AlphabetSpec, Symbol};
use crate::tree::{NodeId, OrderedTree, SuffixTree};
use crate::wildcard::WildcardPattern;

/// Texts over the first `sigma` lowercase letters, with `sigma` drawn first.
pub fn random_text(len: core::ops::Range<usize>, max_sigma: usize) -> impl Strategy<Value = (Vec<u8>, usize)> {
    (1..=max_sigma).prop_flat_map(move |s| {
        (proptest::collection::vec(0..s as u8, len.clone()), Just(s))
            .prop_map(|(v, s)| (v.into_iter().map(|b| b'a' + b).collect(), s))
    })
}

pub fn naive_lcp(a: &[Symbol], b: &[Symbol]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

pub fn naive_sa(text: &[Symbol]) -> Vec<usize> {
    let mut sa: Vec<usize> = (0..text.len()).collect();
    sa.sort_by(|&a, &b| text[a..].cmp(&text[b..]));
    sa
}

pub fn build_index(raw: &[u8]) -> (TextIndex, SuffixTree) {
    let idx = TextIndex::build(raw, &AlphabetSpec::Infer, SaSampling::Full).unwrap();
    let tree = SuffixTree::build(&idx);
    (idx, tree)
}

pub fn banana_index() -> (TextIndex, SuffixTree) {
    build_index(b"banana")
}

pub fn encode(idx: &TextIndex, s: &[u8]) -> Vec<Symbol> {
    s.iter()
        .map(|&b| if b == b'$' { 0 } else { idx.alphabet().symbol(b) })
        .collect()
}

pub fn label(idx: &TextIndex, tree: &SuffixTree, v: NodeId) -> Vec<Symbol> {
    let p = tree.witness(v);
    idx.text()[p..p + tree.depth(v)].to_vec()
}

/// Node whose path label is `s` (with `$` for the sentinel).
pub fn node_by_label(idx: &TextIndex, tree: &SuffixTree, s: &[u8]) -> NodeId {
    let want = encode(idx, s);
    (0..tree.node_count())
        .find(|&v| label(idx, tree, v) == want)
        .expect("no node with this label")
}

/// Positions where `p` matches, by direct comparison.
pub fn scan(text: &[Symbol], p: &WildcardPattern) -> Vec<usize> {
    if p.is_empty() {
        return (0..text.len() - 1).collect();
    }
    (0..text.len()).filter(|&i| p.matches_at(text, i)).collect()
}
