use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use wcindex::bench::{self, BenchConfig};
use wcindex::report::StatsReport;
use wcindex::verify::{self, VerifyConfig};
use wcindex::{format, oracle, WcError};
use wcindex_core::group::LcpLevel;
use wcindex_core::{AlphabetSpec, IndexParams, SaSampling, WildcardIndex};

/// Wildcard pattern matching over a suffix-tree index.
///
/// Set WCINDEX_LOG (for example `WCINDEX_LOG=info`) for progress logging.
#[derive(Parser)]
#[command(name = "wcindex", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Index a text file.
    Build(BuildArgs),
    /// Report the occurrences of a wildcard pattern.
    Query(QueryArgs),
    /// Run the randomized equivalence and invariant suite.
    Verify(VerifyArgs),
    /// Report space and mean query counters over growing random texts.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Full,
    Compact,
    Sampled,
    Ordered,
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    output: PathBuf,
    /// Marking stride (default max(2, sigma * ceil(log2 n)^2)).
    #[arg(long)]
    tau: Option<usize>,
    /// Alphabet group size (default max(2, ceil(log2 log2 n))).
    #[arg(long)]
    lambda: Option<usize>,
    /// Suffix array sampling: `full` or a step such as `4`.
    #[arg(long, default_value = "full", value_parser = parse_sampling)]
    sampling: SaSampling,
    /// Group storage level (default sampled).
    #[arg(long, value_enum)]
    level: Option<Level>,
    /// D-set sampling step for the sampled level.
    #[arg(long)]
    d_step: Option<usize>,
    /// H-set sampling step for the sampled level.
    #[arg(long)]
    h_step: Option<usize>,
    /// Nodes per micro block of the compact heavy-path encoding.
    #[arg(long)]
    micro_block: Option<usize>,
    /// Alphabet bytes; by default the bytes occurring in the input.
    #[arg(long)]
    alphabet: Option<String>,
    /// Print the structure report.
    #[arg(long)]
    stats: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Accelerated,
    Baseline,
    Scan,
    Enumerate,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    index: PathBuf,
    /// `?` is one wildcard, `?{k}` a run of k, and `\` makes the next byte
    /// literal.
    #[arg(long, allow_hyphen_values = true)]
    pattern: String,
    #[arg(long, value_enum, default_value = "accelerated")]
    engine: Engine,
    /// Print the counters after the positions.
    #[arg(long)]
    stats: bool,
    /// Print only the number of occurrences.
    #[arg(long)]
    count: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest text length.
    #[arg(long, default_value_t = 256)]
    n: usize,
    #[arg(long, default_value_t = 4)]
    sigma: usize,
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct BenchArgs {
    /// Text lengths, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = [1usize << 10, 1 << 14, 1 << 18])]
    sizes: Vec<usize>,
    #[arg(long, default_value_t = 4)]
    sigma: usize,
    #[arg(long, default_value_t = 200)]
    queries: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long)]
    output: Option<PathBuf>,
}

fn parse_sampling(s: &str) -> Result<SaSampling, String> {
    if s == "full" {
        return Ok(SaSampling::Full);
    }
    match s.parse::<usize>() {
        Ok(1) => Ok(SaSampling::Full),
        Ok(k) if k > 1 => Ok(SaSampling::Every(k)),
        _ => Err(format!("expected `full` or a step of at least 1, got `{s}`")),
    }
}

/// Failure classes that map to exit codes.
enum Failure {
    Usage(anyhow::Error),
    Verification,
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Runtime(e)
    }
}

fn usage_or_runtime(e: WcError) -> Failure {
    match e {
        WcError::Core(
            wcindex_core::Error::PatternSyntax { .. }
            | wcindex_core::Error::Parameter(_)
            | wcindex_core::Error::EmptyText
            | wcindex_core::Error::SymbolOutsideAlphabet { .. }
            | wcindex_core::Error::AlphabetTooLarge(_),
        )
        | WcError::Budget { .. } => Failure::Usage(e.into()),
        other => Failure::Runtime(other.into()),
    }
}

fn build(a: BuildArgs) -> Result<(), Failure> {
    let raw = std::fs::read(&a.input).with_context(|| format!("reading {}", a.input.display()))?;
    let spec = match a.alphabet {
        Some(s) => AlphabetSpec::Explicit(s.into_bytes()),
        None => AlphabetSpec::Infer,
    };
    let level = match (a.level, a.d_step, a.h_step) {
        (None, None, None) => None,
        (Some(Level::Full), ..) => Some(LcpLevel::Full),
        (Some(Level::Compact), ..) => Some(LcpLevel::Compact),
        (Some(Level::Ordered), ..) => Some(LcpLevel::Ordered),
        (Some(Level::Sampled) | None, d, h) => Some(LcpLevel::Sampled {
            d_step: d.unwrap_or(2),
            h_step: h.unwrap_or(2),
        }),
    };
    let params = IndexParams {
        tau: a.tau,
        lambda: a.lambda,
        level,
        micro_block: a.micro_block,
        sampling: a.sampling,
    };
    let started = Instant::now();
    let ix = WildcardIndex::build(&raw, &spec, &params).map_err(|e| usage_or_runtime(e.into()))?;
    let took = started.elapsed();
    info!("built index over {} symbols in {:?}", raw.len(), took);
    format::save(&a.output, &ix).map_err(usage_or_runtime)?;
    if a.stats {
        let mut r = StatsReport::new();
        r.add_structure(&ix).add_time("build_us", took);
        print!("{r}");
    }
    Ok(())
}

fn query(a: QueryArgs) -> Result<(), Failure> {
    let ix = format::load(&a.index).map_err(|e| Failure::Runtime(anyhow::Error::new(e).context(format!("loading {}", a.index.display()))))?;
    let p = ix.parse_pattern(a.pattern.as_bytes()).map_err(|e| usage_or_runtime(e.into()))?;
    let started = Instant::now();
    let (positions, stats) = match a.engine {
        Engine::Accelerated => {
            let out = ix.match_accelerated(&p).map_err(|e| usage_or_runtime(e.into()))?;
            (out.positions, Some(out.stats))
        }
        Engine::Baseline => {
            let out = ix.match_baseline(&p).map_err(|e| usage_or_runtime(e.into()))?;
            (out.positions, Some(out.stats))
        }
        Engine::Scan => (oracle::scan(ix.text().text(), &p), None),
        Engine::Enumerate => (oracle::enumerate(ix.text(), &p, oracle::DEFAULT_BUDGET).map_err(usage_or_runtime)?, None),
    };
    let took = started.elapsed();
    let mut out = BufWriter::new(io::stdout().lock());
    if a.count {
        writeln!(out, "{}", positions.len()).context("writing output")?;
    } else {
        for p in &positions {
            writeln!(out, "{p}").context("writing output")?;
        }
    }
    if a.stats {
        let mut r = StatsReport::new();
        r.push("occurrences", positions.len())
            .push("pattern_wildcards", p.wildcard_count())
            .push("pattern_literals", p.literal_len())
            .push("pattern_pieces", p.piece_count())
            .push("sigma_pow_g", verify::query_bound(ix.text().sigma(), p.wildcard_count()));
        if let Some(st) = stats {
            r.add_query("", &st);
        }
        r.add_time("query_us", took);
        write!(out, "{r}").context("writing output")?;
    }
    out.flush().context("writing output")?;
    Ok(())
}

fn verify_cmd(a: VerifyArgs) -> Result<(), Failure> {
    if a.n == 0 || a.sigma == 0 || a.sigma > 26 {
        return Err(Failure::Usage(anyhow::anyhow!("need n >= 1 and 1 <= sigma <= 26")));
    }
    if let Some(t) = a.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .context("configuring worker threads")?;
    }
    let cfg = VerifyConfig::new(a.n, a.sigma, a.trials, a.seed);
    let report = verify::run(&cfg);
    for r in &report.results {
        let verdict = match (r.passed(), r.known_gap()) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known gap)",
            (false, false) => "FAIL",
        };
        println!("{} {verdict} checked={} failed={}", r.name, r.checked, r.failed);
        if let Some(f) = &r.first_failure {
            println!("  first failure: {f}");
        }
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn bench_cmd(a: BenchArgs) -> Result<(), Failure> {
    if a.sigma == 0 || a.sigma > 26 || a.sizes.contains(&0) {
        return Err(Failure::Usage(anyhow::anyhow!("need sizes >= 1 and 1 <= sigma <= 26")));
    }
    let cfg = BenchConfig {
        sizes: a.sizes,
        sigma: a.sigma,
        queries: a.queries,
        seed: a.seed,
        params: IndexParams::default(),
    };
    let mut text = String::new();
    for r in bench::run(&cfg) {
        text.push_str(&r.to_string());
    }
    print!("{text}");
    if let Some(path) = a.output {
        std::fs::write(&path, &text).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter("WCINDEX_LOG")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build(a) => build(a),
        Command::Query(a) => query(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Bench(a) => bench_cmd(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => ExitCode::from(3),
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

