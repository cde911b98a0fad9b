use std::process::ExitCode;

use anyhow::Result;
use dnamatch_core::crosscheck::{run_crosscheck, CrosscheckConfig, Disagreement};
use dnamatch_core::matcher::MatchResult;
use dnamatch_core::MatchLut;

use crate::OracleCheckArgs;

fn pairs(hits: &[MatchResult]) -> String {
    let items: Vec<String> = hits
        .iter()
        .map(|h| format!("{}:{}", h.position, h.mismatches))
        .collect();
    format!("[{}]", items.join(", "))
}

pub fn run(args: &OracleCheckArgs) -> Result<ExitCode> {
    let config = CrosscheckConfig {
        trials: args.trials,
        seed: args.seed,
        max_text_len: args.max_text_len,
        max_pattern_len: args.max_pattern_len as usize,
        ..CrosscheckConfig::default()
    };
    let mut lut = MatchLut::build();
    if let Some(idx) = args.corrupt_lut {
        let mut table = *lut.table();
        table[idx as usize] ^= 1;
        lut = MatchLut::from_table(table);
        eprintln!("dictionary entry {idx} flipped");
    }

    let report = run_crosscheck(&config, &lut);
    match &report.first_failure {
        None => {
            println!(
                "{} trials (seed {}): {} matcher/oracle and {} prime/oracle comparisons agree",
                report.trials, config.seed, report.matcher_comparisons, report.prime_comparisons
            );
            Ok(ExitCode::SUCCESS)
        }
        Some(Disagreement::Matcher { trial, trial_seed, instance, k, matcher, oracle }) => {
            println!("DISAGREEMENT in trial {trial} (trial seed {trial_seed}), matcher vs oracle, k={k}");
            println!("text:    {}", instance.text);
            println!("pattern: {}", instance.pattern);
            println!("matcher: {}", pairs(matcher));
            println!("oracle:  {}", pairs(oracle));
            Ok(ExitCode::FAILURE)
        }
        Some(Disagreement::Prime { trial, trial_seed, instance, prime, oracle, matcher }) => {
            println!("DISAGREEMENT in trial {trial} (trial seed {trial_seed}), exact matches, k=0");
            println!("text:    {}", instance.text);
            println!("pattern: {}", instance.pattern);
            println!("prime:   {prime:?}");
            println!("oracle:  {oracle:?}");
            println!("matcher: {matcher:?}");
            Ok(ExitCode::FAILURE)
        }
    }
}
