use std::io::{self, BufWriter};
use std::process::ExitCode;

use anyhow::{Context, Result};
use dnamatch_core::fasta::{open_input, FastaReader};
use dnamatch_core::{encode_pattern, encode_text, parallel_search, read_pattern, PatternSource};

use crate::output::{OutputRecord, RecordWriter};
use crate::{threads, SearchArgs};

pub fn run(args: &SearchArgs) -> Result<ExitCode> {
    let source = match (&args.pattern.pattern, &args.pattern.pattern_file) {
        (Some(lit), _) => PatternSource::Literal(lit),
        (None, Some(path)) => PatternSource::File(path),
        (None, None) => unreachable!("clap requires one pattern source"),
    };
    let spec = read_pattern(source).context("reading pattern")?;
    let pattern = encode_pattern(&spec).context("invalid pattern")?;
    let workers = threads(args.threads);

    let input = open_input(&args.input)?;
    let stdout = io::stdout();
    let mut writer = RecordWriter::new(BufWriter::new(stdout.lock()), args.format);
    if args.header {
        writer.header(args.show_match)?;
    }

    let mut total = 0usize;
    for record in FastaReader::new(input) {
        let record = record.with_context(|| format!("reading {}", args.input.display()))?;
        let text = encode_text(&record.sequence);
        let hits = parallel_search(&text, &pattern, args.k, workers)?;
        total += hits.len();
        for hit in hits {
            let matched = args.show_match.then(|| {
                let window = &record.sequence[hit.position - 1..hit.position - 1 + pattern.len()];
                String::from_utf8_lossy(window).into_owned()
            });
            writer.write(&OutputRecord {
                record_id: &record.id,
                position: hit.position,
                mismatches: hit.mismatches,
                matched_substring: matched.as_deref(),
            })?;
        }
    }
    writer.flush()?;
    Ok(if total > 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
