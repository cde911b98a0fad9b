use std::process::ExitCode;

use anyhow::Result;
use dnamatch_core::encode_pattern;
use dnamatch_core::selftest::{run_selftest, EXAMPLE_K, EXAMPLE_PATTERN, EXAMPLE_TEXT};

fn cells(values: &[u8], width: usize) -> String {
    let mut out: Vec<String> = values.iter().map(|v| format!("{v:>2}")).collect();
    out.resize(width, " -".to_string());
    out.join(" ")
}

pub fn run() -> Result<ExitCode> {
    println!("text {EXAMPLE_TEXT}  pattern {EXAMPLE_PATTERN}  k={EXAMPLE_K}");
    let rows = run_selftest();
    let width = encode_pattern(EXAMPLE_PATTERN)?.len();
    let mut all = true;
    for row in &rows {
        let pass = row.passed();
        all &= pass;
        println!(
            "i={}  l: {}  match: {}  {}",
            row.expected.position,
            cells(&row.actual.indices, width),
            cells(&row.actual.bits, width),
            if pass { "PASS" } else { "FAIL" }
        );
        if !pass {
            println!(
                "      expected l: {}  match: {}",
                cells(row.expected.indices, width),
                cells(row.expected.bits, width)
            );
        }
    }
    Ok(if all { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}
