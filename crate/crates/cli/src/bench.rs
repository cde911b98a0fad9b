use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use dnamatch_core::bench::{extract_patterns, runtime_ratio, synthetic_text, time_search};
use dnamatch_core::fasta::{open_input, FastaReader};
use dnamatch_core::{encode_pattern, encode_text};

use crate::{threads, BenchArgs};

pub fn run(args: &BenchArgs) -> Result<ExitCode> {
    let (name, raw) = match &args.input {
        Some(path) => {
            let record = FastaReader::new(open_input(path)?)
                .next()
                .context("input holds no FASTA records")??;
            (record.id, record.sequence)
        }
        None => (
            format!("synthetic(length={}, seed={})", args.length, args.seed),
            synthetic_text(args.length, args.seed),
        ),
    };
    let workers = threads(args.threads);
    let text = encode_text(&raw);
    println!("text {name}, {} bases, k={}, threads={workers}, reps={}", raw.len(), args.k, args.reps);
    println!("m\tNo\tPosition in sequence\tRuntime [s]\thits");

    let mut means = Vec::new();
    for &m in &args.pattern_lengths {
        let patterns = extract_patterns(&raw, m, args.patterns, args.seed);
        if patterns.is_empty() {
            bail!("pattern length {m} does not fit in a text of {} bases", raw.len());
        }
        let mut per_length = Vec::new();
        for (no, bp) in patterns.iter().enumerate() {
            let pattern = encode_pattern(&bp.pattern)
                .with_context(|| format!("text at {} is not a usable pattern", bp.start))?;
            let (stats, hits) = time_search(&text, &pattern, args.k, workers, args.reps as usize);
            println!(
                "{m}\t{}.\t{} – {}\t{:.3} ± {:.3}\t{hits}",
                no + 1,
                bp.start,
                bp.end(),
                stats.mean,
                stats.std_dev
            );
            per_length.push(stats.mean);
        }
        let mean = per_length.iter().sum::<f64>() / per_length.len() as f64;
        println!("{m}\tmean\t\t{mean:.3}");
        means.push(mean);
    }
    if means.len() > 1 {
        println!("ratio slowest/fastest mean runtime across m: {:.4}", runtime_ratio(&means));
    }
    Ok(ExitCode::SUCCESS)
}
