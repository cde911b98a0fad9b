use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use dnamatch_core::default_workers;

mod bench;
mod oracle_check;
mod output;
mod search;
mod selftest;

/// IUPAC character-class pattern search over DNA with up to k mismatches.
#[derive(Debug, Parser)]
#[command(name = "dnamatch", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Report every window of the input matching the pattern with at most k mismatches.
    Search(SearchArgs),
    /// Time searches for several pattern lengths.
    Bench(BenchArgs),
    /// Re-run the built-in eleven-base trace and compare every step.
    Selftest,
    /// Randomized agreement check against the brute-force and prime references.
    OracleCheck(OracleCheckArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

fn parse_k(s: &str) -> Result<usize, String> {
    let k: i64 = s.parse().map_err(|e| format!("{e}"))?;
    usize::try_from(k).map_err(|_| format!("k must be non-negative, got {k}"))
}

#[derive(Debug, Args)]
#[group(id = "pattern_source", required = true, multiple = false)]
struct PatternArgs {
    /// Pattern literal: IUPAC letters, '-' and bracket classes like [CGT].
    #[arg(short, long, group = "pattern_source")]
    pattern: Option<String>,
    /// File holding the pattern, optionally under a single FASTA header.
    #[arg(long, group = "pattern_source")]
    pattern_file: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct SearchArgs {
    /// FASTA input, or '-' for standard input.
    input: PathBuf,
    #[command(flatten)]
    pattern: PatternArgs,
    /// Allowed mismatches.
    #[arg(short = 'k', long = "k", default_value = "0", value_parser = parse_k, allow_hyphen_values = true)]
    k: usize,
    /// Worker threads [default: logical CPUs].
    #[arg(short, long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Tsv)]
    format: Format,
    /// Print a column header line (TSV only).
    #[arg(long)]
    header: bool,
    /// Include the matched text.
    #[arg(long)]
    show_match: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    /// FASTA input ('-' for stdin); the first record is used. Without it a
    /// synthetic text is generated.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Synthetic text length.
    #[arg(long, default_value_t = 10_000_000)]
    length: usize,
    /// Seed for the synthetic text and pattern positions.
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Pattern lengths to test.
    #[arg(short = 'm', long = "pattern-lengths", value_delimiter = ',', default_value = "500,10000,100000")]
    pattern_lengths: Vec<usize>,
    /// Patterns extracted per length.
    #[arg(long, default_value_t = 5)]
    patterns: usize,
    /// Timed runs per pattern.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    reps: u64,
    #[arg(short = 'k', long = "k", default_value = "0", value_parser = parse_k, allow_hyphen_values = true)]
    k: usize,
    /// Worker threads [default: logical CPUs].
    #[arg(short, long, value_parser = clap::value_parser!(u64).range(1..))]
    threads: Option<u64>,
}

#[derive(Debug, Args)]
struct OracleCheckArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Longest random text for matcher trials.
    #[arg(long, default_value_t = 2000)]
    max_text_len: usize,
    /// Longest random pattern for matcher trials.
    #[arg(long, default_value_t = 50, value_parser = clap::value_parser!(u64).range(1..))]
    max_pattern_len: u64,
    /// Flip one dictionary entry before checking.
    #[arg(long, hide = true, value_parser = clap::value_parser!(u8).range(0..64))]
    corrupt_lut: Option<u8>,
}

fn threads(requested: Option<u64>) -> usize {
    requested.map_or_else(default_workers, |t| t as usize)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Search(args) => search::run(&args),
        Command::Bench(args) => bench::run(&args),
        Command::Selftest => selftest::run(),
        Command::OracleCheck(args) => oracle_check::run(&args),
    };
    match result {
        Ok(code) => code,
        Err(err) => {
            eprintln!("dnamatch: error: {err:#}");
            ExitCode::from(2)
        }
    }
}
