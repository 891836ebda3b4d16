use std::io::{self, BufWriter, Write};
use std::ops::ControlFlow;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use linkperm::bench::{self, Strategy};
use linkperm::metrics::{self, average_distance_limit, kendall_tau, recurrence_average, recurrence_distance};
use linkperm::ranking::{factorial, quick_index, quick_perm, CanonicalPermutation};
use linkperm::verify::verify_up_to;
use linkperm::{move_stream, schedule, try_permutations_visit, SinglyLinkedSeq};

/// Enumeration limit applied unless `--force` is given.
const DEFAULT_GUARD: usize = 11;
const BENCH_LIMIT: usize = 13;
const VERIFY_LIMIT: usize = linkperm::oracle::ORACLE_GUARD;

#[derive(Parser)]
#[command(name = "linkperm", version, about = "Permutations by relinking a singly linked list")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Stream every permutation in generation order
    Gen(GenArgs),
    /// Print the permutation at a given index
    Unrank(UnrankArgs),
    /// Print the index of a permutation
    Rank(RankArgs),
    /// Cumulative and average transition distances
    Stats(StatsArgs),
    /// Print the move schedule
    Trace(TraceArgs),
    /// Cross-check generator, reference implementation and ranking
    Verify(VerifyArgs),
    /// Throughput against Heap's algorithm and lexicographic order
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
#[group(required = true, multiple = false, id = "source")]
struct Source {
    /// Permute 0..K
    #[arg(short = 'k', long = "length")]
    k: Option<usize>,
    /// Permute these comma-separated tokens
    #[arg(long, value_delimiter = ',')]
    items: Option<Vec<String>>,
}

#[derive(Args)]
struct GenArgs {
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Stop after this many permutations
    #[arg(long)]
    limit: Option<u64>,
    /// Annotate each permutation with its Kendall tau distance to the previous one
    #[arg(long)]
    with_distances: bool,
    /// Annotate each permutation with its index
    #[arg(long)]
    with_index: bool,
    /// Allow lengths above the enumeration guard
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct UnrankArgs {
    #[command(flatten)]
    source: Source,
    /// Decimal index, any size
    #[arg(short = 'n', long)]
    index: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct RankArgs {
    /// Permutation tokens; integers 0..k-1 unless --reference is given
    #[arg(required = true, num_args = 1.., allow_hyphen_values = true)]
    tokens: Vec<String>,
    /// Comma-separated base order; tokens are ranked relative to it
    #[arg(long, value_delimiter = ',')]
    reference: Option<Vec<String>>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    max_k: usize,
    /// Also enumerate traversals up to this length and measure them
    #[arg(long, default_value_t = 8)]
    enumerate_up_to: usize,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct TraceArgs {
    #[arg(short = 'k', long = "length")]
    k: usize,
    /// Include the no-op record that opens each sublist
    #[arg(long)]
    with_noops: bool,
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, default_value_t = 7)]
    max_k: usize,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(short = 'k', long = "length")]
    k: usize,
    /// Also time Heap's algorithm and lexicographic order (on by default)
    #[arg(long, default_value_t = true, action = clap::ArgAction::Set, num_args = 0..=1, default_missing_value = "true")]
    baselines: bool,
    /// Runs per strategy; the fastest is reported
    #[arg(long, default_value_t = 1)]
    repeat: u32,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
    Io(io::Error),
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

type CliResult = Result<(), CliError>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let result = match cli.command {
        Command::Gen(args) => cmd_gen(args, &mut out),
        Command::Unrank(args) => cmd_unrank(args, &mut out),
        Command::Rank(args) => cmd_rank(args, &mut out),
        Command::Stats(args) => cmd_stats(args, &mut out),
        Command::Trace(args) => cmd_trace(args, &mut out),
        Command::Verify(args) => cmd_verify(args, &mut out),
        Command::Bench(args) => cmd_bench(args, &mut out),
    };
    let result = result.and_then(|()| out.flush().map_err(CliError::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(CliError::Io(e)) => {
            eprintln!("linkperm: {e}");
            ExitCode::from(1)
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("linkperm: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("linkperm: {msg}");
            ExitCode::from(2)
        }
    }
}

fn check_guard(k: usize, force: bool) -> CliResult {
    if k > DEFAULT_GUARD && !force {
        return Err(CliError::Usage(format!(
            "length {k} is above the enumeration guard of {DEFAULT_GUARD}; pass --force to run anyway"
        )));
    }
    Ok(())
}

/// Tokens to print for each element value `0..len`.
fn tokens_of(source: &Source) -> Result<Option<Vec<String>>, CliError> {
    match &source.items {
        None => Ok(None),
        Some(items) => {
            for (i, t) in items.iter().enumerate() {
                if items[..i].contains(t) {
                    return Err(CliError::Usage(format!("item {t:?} appears more than once")));
                }
            }
            Ok(Some(items.clone()))
        }
    }
}

fn source_len(source: &Source) -> usize {
    match (&source.k, &source.items) {
        (Some(k), _) => *k,
        (None, Some(items)) => items.len(),
        (None, None) => 0,
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum PermTokens<'a> {
    Numbers(Vec<u32>),
    Names(Vec<&'a str>),
}

#[derive(Serialize)]
struct OutputRecord<'a> {
    perm: PermTokens<'a>,
    #[serde(skip_serializing_if = "Option::is_none")]
    index: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    distance: Option<u64>,
}

fn write_record(
    out: &mut impl Write,
    format: Format,
    perm: &[u32],
    names: Option<&[String]>,
    index: Option<u64>,
    distance: Option<u64>,
) -> io::Result<()> {
    match format {
        Format::Text => {
            if let Some(index) = &index {
                write!(out, "{index}\t")?;
            }
            for (i, &e) in perm.iter().enumerate() {
                if i > 0 {
                    out.write_all(b" ")?;
                }
                match names {
                    Some(names) => out.write_all(names[e as usize].as_bytes())?,
                    None => write!(out, "{e}")?,
                }
            }
            if let Some(d) = distance {
                write!(out, "\t{d}")?;
            }
            out.write_all(b"\n")
        }
        Format::Json => {
            let perm = match names {
                Some(names) => PermTokens::Names(perm.iter().map(|&e| names[e as usize].as_str()).collect()),
                None => PermTokens::Numbers(perm.to_vec()),
            };
            let record = OutputRecord { perm, index, distance };
            serde_json::to_writer(&mut *out, &record)?;
            out.write_all(b"\n")
        }
    }
}

fn cmd_gen(args: GenArgs, out: &mut impl Write) -> CliResult {
    let names = tokens_of(&args.source)?;
    let len = source_len(&args.source);
    check_guard(len, args.force)?;
    if args.limit == Some(0) {
        return Ok(());
    }

    let mut seq = SinglyLinkedSeq::from_elements(0..len as u32);
    let mut previous: Vec<u32> = Vec::with_capacity(len);
    let mut current: Vec<u32> = Vec::with_capacity(len);
    let mut emitted = 0u64;
    let flow = try_permutations_visit(&mut seq, |view| {
        current.clear();
        current.extend(view.iter().copied());
        let distance = if args.with_distances && emitted > 0 {
            Some(kendall_tau(&previous, &current).expect("consecutive snapshots share elements"))
        } else {
            None
        };
        let index = args.with_index.then_some(emitted);
        if let Err(e) = write_record(out, args.format, &current, names.as_deref(), index, distance) {
            return ControlFlow::Break(Err(e));
        }
        emitted += 1;
        std::mem::swap(&mut previous, &mut current);
        if args.limit.is_some_and(|limit| emitted >= limit) {
            return ControlFlow::Break(Ok(()));
        }
        ControlFlow::Continue(())
    });
    match flow {
        ControlFlow::Break(Err(e)) => Err(e.into()),
        _ => Ok(()),
    }
}

fn parse_index(text: &str) -> Result<BigUint, CliError> {
    if text.is_empty() || !text.bytes().all(|b| b.is_ascii_digit()) {
        return Err(CliError::Usage(format!("index {text:?} is not a non-negative decimal integer")));
    }
    text.parse::<BigUint>().map_err(|e| CliError::Usage(format!("index {text:?}: {e}")))
}

fn cmd_unrank(args: UnrankArgs, out: &mut impl Write) -> CliResult {
    let names = tokens_of(&args.source)?;
    let len = source_len(&args.source);
    let index = parse_index(&args.index)?;
    let mut seq = SinglyLinkedSeq::from_elements(0..len as u32);
    quick_perm(&mut seq, &index).map_err(|e| CliError::Usage(e.to_string()))?;
    write_record(out, args.format, &seq.to_vec(), names.as_deref(), None, None)?;
    Ok(())
}

fn cmd_rank(args: RankArgs, out: &mut impl Write) -> CliResult {
    let values: Vec<usize> = match &args.reference {
        Some(reference) => {
            // First occurrence in the reference defines each token's value.
            let mut order: Vec<&str> = Vec::with_capacity(reference.len());
            for t in reference {
                if !order.contains(&t.as_str()) {
                    order.push(t);
                }
            }
            if order.len() != args.tokens.len() {
                return Err(CliError::Usage(format!(
                    "{} tokens given but the reference has {} distinct items",
                    args.tokens.len(),
                    order.len()
                )));
            }
            args.tokens
                .iter()
                .map(|t| {
                    order
                        .iter()
                        .position(|r| r == t)
                        .ok_or_else(|| CliError::Usage(format!("token {t:?} is not in the reference")))
                })
                .collect::<Result<_, _>>()?
        }
        None => args
            .tokens
            .iter()
            .map(|t| {
                t.parse::<usize>().map_err(|_| CliError::Usage(format!("token {t:?} is not a non-negative integer")))
            })
            .collect::<Result<_, _>>()?,
    };
    let target = CanonicalPermutation::new(values).map_err(|e| CliError::Usage(format!("not a permutation: {e}")))?;
    writeln!(out, "{}", quick_index(&target))?;
    Ok(())
}

fn cmd_stats(args: StatsArgs, out: &mut impl Write) -> CliResult {
    if args.max_k == 0 {
        return Err(CliError::Usage("--max-k must be at least 1".into()));
    }
    let enumerate = args.enumerate_up_to.min(args.max_k);
    check_guard(enumerate, args.force)?;
    let guard = if args.force { usize::MAX } else { DEFAULT_GUARD };
    let limit = average_distance_limit();

    writeln!(
        out,
        "{:>3}  {:>24}  {:>12}  {:>12}  {:>12}  {:>9}",
        "k", "D_k", "average", "|avg-limit|", "measured", "adjacent"
    )?;
    for k in 1..=args.max_k {
        let d = recurrence_distance(k);
        let (avg, gap) = match recurrence_average(k) {
            Some(avg) => (format!("{avg:.9}"), format!("{:.3e}", (avg - limit).abs())),
            None => ("-".to_string(), "-".to_string()),
        };
        let (measured, adjacent) = if k <= enumerate {
            let stats = metrics::measure_traversal_with_guard(k, guard).map_err(|e| CliError::Usage(e.to_string()))?;
            if BigUint::from(stats.cumulative) != d {
                return Err(CliError::Failed(format!(
                    "k={k}: measured D_k {} differs from recurrence {d}",
                    stats.cumulative
                )));
            }
            let adjacent = stats.adjacent_swap_fraction().map_or("-".to_string(), |f| format!("{f:.6}"));
            (stats.cumulative.to_string(), adjacent)
        } else {
            ("-".to_string(), "-".to_string())
        };
        writeln!(out, "{k:>3}  {d:>24}  {avg:>12}  {gap:>12}  {measured:>12}  {adjacent:>9}")?;
    }
    writeln!(out, "limit 7cosh(1) - 4sinh(1) - 5 = {limit:.9}")?;
    Ok(())
}

fn cmd_trace(args: TraceArgs, out: &mut impl Write) -> CliResult {
    check_guard(args.k, args.force)?;
    if args.with_noops {
        for m in schedule(args.k) {
            writeln!(out, "{m}")?;
        }
    } else {
        for m in move_stream(args.k) {
            writeln!(out, "{m}")?;
        }
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs, out: &mut impl Write) -> CliResult {
    if args.max_k > VERIFY_LIMIT {
        return Err(CliError::Usage(format!("--max-k is limited to {VERIFY_LIMIT}")));
    }
    let report = verify_up_to(args.max_k);
    for level in &report.levels {
        writeln!(out, "{level}")?;
    }
    match report.divergence {
        None => {
            writeln!(out, "ok: generator, reference and ranking agree for k <= {}", args.max_k)?;
            Ok(())
        }
        Some(d) => {
            out.flush()?;
            Err(CliError::Failed(format!("first divergence at {d}")))
        }
    }
}

fn cmd_bench(args: BenchArgs, out: &mut impl Write) -> CliResult {
    if args.k > BENCH_LIMIT {
        return Err(CliError::Usage(format!("bench length is limited to {BENCH_LIMIT}")));
    }
    let strategies: &[Strategy] = if args.baselines { &Strategy::ALL } else { &[Strategy::LinkedList] };
    let expected = factorial(args.k);
    for &strategy in strategies {
        let best = (0..args.repeat.max(1))
            .map(|_| bench::run(strategy, args.k))
            .min_by_key(|r| r.elapsed)
            .expect("at least one run");
        writeln!(
            out,
            "{:<14} k={} permutations={} elapsed={:.3}ms rate={:.0}/s checksum={:016x}",
            strategy.name(),
            best.k,
            best.count,
            best.elapsed.as_secs_f64() * 1e3,
            best.per_second(),
            best.checksum
        )?;
        if BigUint::from(best.count) != expected {
            return Err(CliError::Failed(format!("{strategy} visited {} permutations", best.count)));
        }
    }
    Ok(())
}
