//! The randomized verification harness behind `wcindex verify`.
//!
//! Each trial draws a text, build parameters and a few wildcard patterns
//! from a generator seeded by `(seed, trial)`, so any failure can be
//! replayed alone. Trials run in parallel; results are merged in trial
//! order and are identical for every thread count.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wcindex_core::group::LcpLevel;
use wcindex_core::tree::{HeavyPathDecomposition, OrderedTree, SubTree};
use wcindex_core::symbols::WILDCARD;
use wcindex_core::{AlphabetSpec, IndexParams, Symbol, WildcardIndex, WildcardPattern};

use crate::format;
use crate::oracle;

/// Limits for random wildcard patterns.
#[derive(Debug, Clone, Copy)]
pub struct PatternShape {
    pub max_pieces: usize,
    pub max_run: usize,
    pub max_wildcards: usize,
    pub max_literal: usize,
}

impl Default for PatternShape {
    fn default() -> Self {
        PatternShape {
            max_pieces: 4,
            max_run: 2,
            max_wildcards: 4,
            max_literal: 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub max_n: usize,
    pub sigma: usize,
    pub trials: usize,
    pub seed: u64,
    pub taus: Vec<usize>,
    pub lambdas: Vec<usize>,
    pub patterns_per_trial: usize,
    pub shape: PatternShape,
    /// Every this many trials, the index also goes through a save and load.
    pub round_trip_every: usize,
}

impl VerifyConfig {
    pub fn new(max_n: usize, sigma: usize, trials: usize, seed: u64) -> Self {
        VerifyConfig {
            max_n,
            sigma,
            trials,
            seed,
            taus: vec![2, 4, 8],
            lambdas: vec![2, 3],
            patterns_per_trial: 4,
            shape: PatternShape::default(),
            round_trip_every: 10,
        }
    }
}

/// Names of the checked invariants, in report order.
pub const INVARIANTS: &[&str] = &[
    "scan_eq_enumerate",
    "baseline_eq_scan",
    "accelerated_eq_scan",
    "accelerated_query_bound",
    "baseline_query_bound",
    "marked_internal_le_leaves",
    "group_size_le_4tau",
    "group_leaves_contiguous",
    "group_d_elements",
    "wildcard_leaf_bound",
    "wildcard_pointers",
    "heavy_path_crossings",
    "round_trip",
];

/// Invariants the implementation is known not to satisfy in general. They
/// are reported but do not fail a run.
pub const KNOWN_GAPS: &[&str] = &["baseline_query_bound"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantResult {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub first_failure: Option<String>,
}

impl InvariantResult {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    pub fn known_gap(&self) -> bool {
        KNOWN_GAPS.contains(&self.name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub results: Vec<InvariantResult>,
}

impl VerifyReport {
    /// Whether every invariant outside [`KNOWN_GAPS`] held.
    pub fn ok(&self) -> bool {
        self.results.iter().all(|r| r.passed() || r.known_gap())
    }

    pub fn get(&self, name: &str) -> Option<&InvariantResult> {
        self.results.iter().find(|r| r.name == name)
    }
}

/// Outcomes of single checks, in the order they were made.
#[derive(Debug, Default)]
pub struct Checks {
    items: Vec<(&'static str, Option<String>)>,
}

impl Checks {
    pub fn check(&mut self, name: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        debug_assert!(INVARIANTS.contains(&name));
        self.items.push((name, (!ok).then(detail)));
    }

    pub fn failures(&self) -> impl Iterator<Item = (&'static str, &str)> {
        self.items.iter().filter_map(|(n, f)| f.as_deref().map(|f| (*n, f)))
    }
}

/// Generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// The first `sigma` lowercase letters, the explicit alphabet of random
/// texts.
pub fn letters(sigma: usize) -> Vec<u8> {
    (0..sigma as u8).map(|i| b'a' + i).collect()
}

pub fn random_text<R: Rng>(rng: &mut R, len: usize, sigma: usize) -> Vec<u8> {
    (0..len).map(|_| b'a' + rng.gen_range(0..sigma as u8)).collect()
}

/// A random pattern within `shape`. Half of the patterns copy their
/// literal symbols from a text window, so that many of them occur.
pub fn random_pattern<R: Rng>(rng: &mut R, text: &[Symbol], sigma: usize, shape: &PatternShape) -> WildcardPattern {
    let d = rng.gen_range(1..=shape.max_pieces);
    let mut budget = shape.max_wildcards;
    let mut layout: Vec<(usize, usize)> = Vec::with_capacity(d);
    for i in 0..d {
        let k = rng.gen_range(0..=shape.max_run.min(budget));
        budget -= k;
        let min_lit = usize::from(i + 1 < d);
        let lit = rng.gen_range(min_lit..=shape.max_literal.max(min_lit));
        layout.push((k, lit));
    }
    let total: usize = layout.iter().map(|&(k, l)| k + l).sum();
    let body = text.len() - 1;
    let window = (rng.gen_bool(0.5) && total <= body).then(|| rng.gen_range(0..=body - total));
    let mut pos = 0;
    let mut units = Vec::with_capacity(total);
    for &(k, l) in &layout {
        units.extend(std::iter::repeat_n(WILDCARD, k));
        pos += k;
        for _ in 0..l {
            units.push(match window {
                Some(w) => text[w + pos],
                None => rng.gen_range(1..=sigma as Symbol),
            });
            pos += 1;
        }
    }
    WildcardPattern::from_symbols(&units).expect("generated literals avoid reserved symbols")
}

pub fn random_level<R: Rng>(rng: &mut R) -> LcpLevel {
    match rng.gen_range(0..3) {
        0 => LcpLevel::Full,
        1 => LcpLevel::Compact,
        _ => LcpLevel::Sampled {
            d_step: rng.gen_range(2..=4),
            h_step: rng.gen_range(2..=4),
        },
    }
}

/// `sigma^g`, saturating.
pub fn query_bound(sigma: usize, g: usize) -> u64 {
    (sigma as u64).saturating_pow(g as u32)
}

/// Checks that the three matchers agree with both oracles on `p`, and the
/// query counts of both matchers.
pub fn check_pattern(ix: &WildcardIndex, p: &WildcardPattern, checks: &mut Checks) {
    let text = ix.text().text();
    let sigma = ix.text().sigma();
    let scan = oracle::scan(text, p);
    let show = || format!("{p:?}");
    match oracle::enumerate(ix.text(), p, oracle::DEFAULT_BUDGET) {
        Ok(en) => checks.check("scan_eq_enumerate", en == scan, show),
        Err(e) => checks.check("scan_eq_enumerate", false, || e.to_string()),
    }
    let base = ix.match_baseline(p).expect("baseline matcher");
    let acc = ix.match_accelerated(p).expect("accelerated matcher");
    checks.check("baseline_eq_scan", base.positions == scan, show);
    checks.check("accelerated_eq_scan", acc.positions == scan, show);
    let bound = query_bound(sigma, p.wildcard_count());
    checks.check("accelerated_query_bound", acc.stats.combined_lcp() <= bound, || {
        format!("{} > {bound} for {p:?}", acc.stats.combined_lcp())
    });
    checks.check("baseline_query_bound", base.stats.standard_lcp <= bound, || {
        format!("{} > {bound} for {p:?}", base.stats.standard_lcp)
    });
}

fn crossings_ok<T: OrderedTree>(t: &T, leaves_of: impl Fn(usize) -> usize, heavy: impl Fn(usize) -> Option<usize>) -> Result<(), String> {
    let k = t.node_count();
    let total = leaves_of(0);
    let limit = total.ilog2() as usize + 1;
    // paths met from the root, computed top-down in preorder
    let mut met = vec![0usize; k];
    met[0] = 1;
    for v in 0..k {
        let kids = t.children(v);
        if let Some(h) = heavy(v) {
            let best = kids.iter().map(|&c| leaves_of(c as usize)).max().unwrap_or(0);
            if leaves_of(h) != best {
                return Err(format!("heavy child of {v} is not a largest child"));
            }
        }
        for &c in kids {
            let c = c as usize;
            met[c] = met[v] + usize::from(heavy(v) != Some(c));
        }
        if t.is_leaf(v) && met[v] > limit {
            return Err(format!("leaf {v} meets {} paths, limit {limit}", met[v]));
        }
    }
    Ok(())
}

/// Structural invariants of a built index.
pub fn check_structure(ix: &WildcardIndex, checks: &mut Checks) {
    let (text, tree, part, layer) = (ix.text(), ix.tree(), ix.partition(), ix.layer());
    let m = part.marking();
    let tau = part.tau();
    checks.check("marked_internal_le_leaves", m.marked_internal <= m.marked_leaves, || {
        format!("{} internal, {} leaves", m.marked_internal, m.marked_leaves)
    });
    for g in part.groups() {
        let sub: &SubTree = g.subtree();
        checks.check("group_size_le_4tau", sub.len() <= 4 * tau, || format!("{} nodes, tau {tau}", sub.len()));
        let mut ranks: Vec<usize> = (0..sub.len())
            .map(|i| sub.full_id(i))
            .filter(|&v| tree.is_leaf(v))
            .map(|v| tree.lb(v))
            .collect();
        ranks.sort_unstable();
        checks.check("group_leaves_contiguous", ranks.windows(2).all(|w| w[1] == w[0] + 1), || format!("ranks {ranks:?}"));
        let f = sub.leaves().len();
        let elems = g.engine().element_count();
        let cap = f * (f.next_power_of_two().ilog2() as usize + 1);
        checks.check("group_d_elements", elems <= cap, || format!("{elems} elements, {f} leaves"));
        let hp = HeavyPathDecomposition::of(sub);
        let res = crossings_ok(sub, |i| sub.leaf_count(i), |i| hp.heavy_child(i));
        checks.check("heavy_path_crossings", res.is_ok(), || res.unwrap_err());
    }
    let res = crossings_ok(tree, |v| tree.leaf_count(v), |v| tree.heavy_child(v));
    checks.check("heavy_path_crossings", res.is_ok(), || res.unwrap_err());
    let n_m = m.marked_leaves;
    let cap = n_m * (n_m.ilog2() as usize + 1);
    checks.check("wildcard_leaf_bound", layer.leaf_total() <= cap, || format!("{} leaves, cap {cap}", layer.leaf_total()));
    let res = layer.verify_pointers(text, tree, part);
    checks.check("wildcard_pointers", res.is_ok(), || format!("{res:?}"));
}

/// Runs one trial.
pub fn run_trial(cfg: &VerifyConfig, trial: u64) -> Checks {
    let mut rng = trial_rng(cfg.seed, trial);
    let len = rng.gen_range(1..=cfg.max_n);
    let raw = random_text(&mut rng, len, cfg.sigma);
    let params = IndexParams {
        tau: Some(*cfg.taus.choose(&mut rng).expect("tau choices")),
        lambda: Some(*cfg.lambdas.choose(&mut rng).expect("lambda choices")),
        level: Some(random_level(&mut rng)),
        micro_block: Some(rng.gen_range(2..=4)),
        ..IndexParams::default()
    };
    let ix = WildcardIndex::build(&raw, &AlphabetSpec::Explicit(letters(cfg.sigma)), &params).expect("index builds");
    let mut checks = Checks::default();
    check_structure(&ix, &mut checks);
    let pats: Vec<WildcardPattern> = (0..cfg.patterns_per_trial)
        .map(|_| random_pattern(&mut rng, ix.text().text(), cfg.sigma, &cfg.shape))
        .collect();
    for p in &pats {
        check_pattern(&ix, p, &mut checks);
    }
    if cfg.round_trip_every > 0 && trial.is_multiple_of(cfg.round_trip_every as u64) {
        let mut buf = Vec::new();
        format::write_index(&mut buf, &ix).expect("in-memory write");
        let back = format::read_index(&mut &buf[..]).expect("in-memory read");
        let same = pats.iter().all(|p| {
            back.match_accelerated(p).ok() == ix.match_accelerated(p).ok()
                && back.match_baseline(p).ok() == ix.match_baseline(p).ok()
        });
        checks.check("round_trip", same && back == ix, || "answers differ after reload".to_string());
    }
    checks
}

/// Runs every trial and merges the outcomes per invariant.
pub fn run(cfg: &VerifyConfig) -> VerifyReport {
    let per_trial: Vec<Checks> = (0..cfg.trials as u64).into_par_iter().map(|t| run_trial(cfg, t)).collect();
    let mut results: Vec<InvariantResult> = INVARIANTS
        .iter()
        .map(|&name| InvariantResult {
            name,
            checked: 0,
            failed: 0,
            first_failure: None,
        })
        .collect();
    for (t, checks) in per_trial.iter().enumerate() {
        for (name, fail) in &checks.items {
            let r = results.iter_mut().find(|r| r.name == *name).expect("known invariant");
            r.checked += 1;
            if let Some(f) = fail {
                r.failed += 1;
                r.first_failure.get_or_insert_with(|| format!("trial {t}: {f}"));
            }
        }
    }
    VerifyReport { results }
}
