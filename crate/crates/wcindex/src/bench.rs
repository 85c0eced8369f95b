//! Scaling report: auxiliary space and mean query counters over growing
//! random texts.

use std::time::Instant;

use wcindex_core::{AlphabetSpec, IndexParams, QueryStats, WildcardIndex};

use crate::report::StatsReport;
use crate::verify::{letters, random_pattern, random_text, trial_rng, PatternShape};

#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub sigma: usize,
    pub queries: usize,
    pub seed: u64,
    pub params: IndexParams,
}

impl Default for BenchConfig {
    fn default() -> Self {
        BenchConfig {
            sizes: vec![1 << 10, 1 << 14, 1 << 18],
            sigma: 4,
            queries: 200,
            seed: 1,
            params: IndexParams::default(),
        }
    }
}

/// One report per text size. Keys are prefixed with `n<size>.`.
pub fn run(cfg: &BenchConfig) -> Vec<StatsReport> {
    cfg.sizes
        .iter()
        .enumerate()
        .map(|(i, &n)| run_size(cfg, n, i as u64))
        .collect()
}

fn run_size(cfg: &BenchConfig, n: usize, stream: u64) -> StatsReport {
    let mut rng = trial_rng(cfg.seed, stream);
    let raw = random_text(&mut rng, n, cfg.sigma);
    let started = Instant::now();
    let ix = WildcardIndex::build(&raw, &AlphabetSpec::Explicit(letters(cfg.sigma)), &cfg.params).expect("index builds");
    let build = started.elapsed();
    let shape = PatternShape::default();
    let pats: Vec<_> = (0..cfg.queries)
        .map(|_| random_pattern(&mut rng, ix.text().text(), cfg.sigma, &shape))
        .collect();
    let mut base = QueryStats::default();
    let mut acc = QueryStats::default();
    let mut occ = 0usize;
    let started = Instant::now();
    for p in &pats {
        let out = ix.match_accelerated(p).expect("accelerated matcher");
        occ += out.positions.len();
        acc += out.stats;
    }
    let acc_time = started.elapsed();
    let started = Instant::now();
    for p in &pats {
        base += ix.match_baseline(p).expect("baseline matcher").stats;
    }
    let base_time = started.elapsed();

    let q = cfg.queries.max(1) as f64;
    let mut r = StatsReport::new();
    r.add_structure(&ix);
    let aux = ix.space().auxiliary_bits() as f64;
    let nlogn = ix.text().len() as f64 * (ix.text().len() as f64).log2();
    r.push("aux_bits_over_nlogn", format!("{:.4}", aux / nlogn))
        .push("queries", cfg.queries)
        .push("mean_occurrences", format!("{:.2}", occ as f64 / q));
    for (k, v) in acc.counters() {
        r.push(format!("accelerated.mean_{k}"), format!("{:.3}", v as f64 / q));
    }
    r.push("accelerated.mean_combined_lcp", format!("{:.3}", acc.combined_lcp() as f64 / q));
    for (k, v) in base.counters() {
        r.push(format!("baseline.mean_{k}"), format!("{:.3}", v as f64 / q));
    }
    r.add_time("build_us", build)
        .add_time("accelerated_total_us", acc_time)
        .add_time("baseline_total_us", base_time);
    let mut out = StatsReport::new();
    for (k, v) in r.entries() {
        out.push(format!("n{n}.{k}"), v);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bench_reports_every_size() {
        let cfg = BenchConfig {
            sizes: vec![64, 256],
            queries: 10,
            ..BenchConfig::default()
        };
        let reports = run(&cfg);
        assert_eq!(reports.len(), 2);
        assert!(reports[1].get("n256.aux_bits_per_symbol").is_some());
        assert!(reports[0].get("n64.accelerated.mean_combined_lcp").is_some());
    }
}
