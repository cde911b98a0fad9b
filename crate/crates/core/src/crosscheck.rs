//! Randomized agreement checks between the bit-coded matcher, the
//! brute-force oracle and the prime-encoding reference.
//!
//! Every trial is generated from its own 64-bit seed, so a failing trial can
//! be replayed with [`matcher_instance`] / [`prime_instance`] alone.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encoding::{encode_pattern, encode_text, MatchLut, PatternCode, TextCode};
use crate::matcher::{search_with_lut, MatchResult};
use crate::oracle::{naive_search, ClassPattern};
use crate::prime_ref::{correlate_exact, encode_pattern_prime, encode_text_prime, select_primes};

#[derive(Clone, Debug)]
pub struct CrosscheckConfig {
    pub trials: usize,
    pub seed: u64,
    pub max_text_len: usize,
    pub max_pattern_len: usize,
    pub max_k: usize,
    pub prime_max_text_len: usize,
    pub prime_max_pattern_len: usize,
}

impl Default for CrosscheckConfig {
    fn default() -> Self {
        CrosscheckConfig {
            trials: 1000,
            seed: 42,
            max_text_len: 2000,
            max_pattern_len: 50,
            max_k: 3,
            prime_max_text_len: 500,
            prime_max_pattern_len: 20,
        }
    }
}

/// A text and a pattern written as IUPAC letters and bracket literals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub text: String,
    pub pattern: String,
}

#[derive(Clone, Debug)]
pub enum Disagreement {
    /// Bit-coded matcher vs oracle at budget `k`.
    Matcher {
        trial: usize,
        trial_seed: u64,
        instance: Instance,
        k: usize,
        matcher: Vec<MatchResult>,
        oracle: Vec<MatchResult>,
    },
    /// Exact-match positions from the prime reference, the oracle and the matcher.
    Prime {
        trial: usize,
        trial_seed: u64,
        instance: Instance,
        prime: Vec<usize>,
        oracle: Vec<usize>,
        matcher: Vec<usize>,
    },
}

#[derive(Clone, Debug, Default)]
pub struct CrosscheckReport {
    pub trials: usize,
    pub matcher_comparisons: usize,
    pub prime_comparisons: usize,
    pub first_failure: Option<Disagreement>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn random_code_containing<R: Rng>(rng: &mut R, base: TextCode) -> PatternCode {
    let choices: Vec<PatternCode> = PatternCode::all().filter(|c| c.class().contains(base)).collect();
    *choices.choose(rng).expect("N contains every base")
}

fn render_code<R: Rng>(rng: &mut R, code: PatternCode, out: &mut String) {
    let class = code.class();
    if class.len() >= 2 && rng.gen_bool(0.3) {
        let mut bases: Vec<char> = class.iter().map(|c| c.base() as char).collect();
        bases.shuffle(rng);
        out.push('[');
        out.extend(bases);
        out.push(']');
    } else {
        out.push(code.symbol() as char);
    }
}

fn random_text<R: Rng>(rng: &mut R, len: usize, n_rate: f64) -> String {
    (0..len)
        .map(|_| {
            if rng.gen_bool(n_rate) {
                return 'N';
            }
            let base = *b"ACGT".choose(rng).unwrap() as char;
            if rng.gen_bool(0.05) {
                base.to_ascii_lowercase()
            } else {
                base
            }
        })
        .collect()
}

// Half the time the pattern is planted from the text so that windows with
// few mismatches actually occur.
fn random_pattern<R: Rng>(rng: &mut R, text: &str, m: usize) -> String {
    let mut out = String::new();
    let planted = m <= text.len() && rng.gen_bool(0.5);
    let offset = if planted { rng.gen_range(0..=text.len() - m) } else { 0 };
    for j in 0..m {
        let source = planted.then(|| text.as_bytes()[offset + j]).and_then(TextCode::from_base);
        let code = match source {
            Some(base) if rng.gen_bool(0.9) => random_code_containing(rng, base),
            _ => PatternCode::from_value(rng.gen_range(0..16)).unwrap(),
        };
        render_code(rng, code, &mut out);
    }
    out
}

/// Instance for a matcher-vs-oracle trial.
pub fn matcher_instance(trial_seed: u64, config: &CrosscheckConfig) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed);
    let n = rng.gen_range(0..=config.max_text_len);
    let n_rate = *[0.0, 0.01, 0.2].choose(&mut rng).unwrap();
    let text = random_text(&mut rng, n, n_rate);
    let m = rng.gen_range(1..=config.max_pattern_len.max(1));
    let pattern = random_pattern(&mut rng, &text, m);
    Instance { text, pattern }
}

/// Instance for a prime-reference trial: ACGT-only text.
pub fn prime_instance(trial_seed: u64, config: &CrosscheckConfig) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(trial_seed ^ 0x9e37_79b9_7f4a_7c15);
    let n = rng.gen_range(0..=config.prime_max_text_len);
    let text = random_text(&mut rng, n, 0.0);
    let m = rng.gen_range(1..=config.prime_max_pattern_len.max(1));
    let pattern = random_pattern(&mut rng, &text, m);
    Instance { text, pattern }
}

/// Runs `config.trials` trials. Each trial compares the matcher with the
/// oracle for every `k` in `0..=max_k`, and the prime reference with the
/// oracle and the matcher at `k = 0`. Stops at the first disagreement.
pub fn run_crosscheck(config: &CrosscheckConfig, lut: &MatchLut) -> CrosscheckReport {
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = CrosscheckReport::default();
    for trial in 0..config.trials {
        let trial_seed: u64 = master.gen();
        report.trials += 1;

        let instance = matcher_instance(trial_seed, config);
        let text = encode_text(instance.text.as_bytes());
        let pattern = encode_pattern(&instance.pattern).expect("generated pattern parses");
        let classes = ClassPattern::parse(&instance.pattern).expect("generated pattern parses");
        for k in 0..=config.max_k {
            let matcher = search_with_lut(&text, &pattern, lut, k);
            let oracle = naive_search(instance.text.as_bytes(), &classes, k);
            report.matcher_comparisons += 1;
            if matcher != oracle {
                report.first_failure = Some(Disagreement::Matcher {
                    trial,
                    trial_seed,
                    instance,
                    k,
                    matcher,
                    oracle,
                });
                return report;
            }
        }

        let instance = prime_instance(trial_seed, config);
        let classes = ClassPattern::parse(&instance.pattern).expect("generated pattern parses");
        let code = select_primes(classes.len());
        let prime = correlate_exact(
            &encode_text_prime(instance.text.as_bytes(), &code),
            &encode_pattern_prime(&classes, &code),
        )
        .expect("pattern within prime bounds");
        let positions = |hits: Vec<MatchResult>| hits.into_iter().map(|h| h.position).collect::<Vec<_>>();
        let oracle = positions(naive_search(instance.text.as_bytes(), &classes, 0));
        let matcher = positions(search_with_lut(
            &encode_text(instance.text.as_bytes()),
            &encode_pattern(&instance.pattern).expect("generated pattern parses"),
            lut,
            0,
        ));
        report.prime_comparisons += 1;
        if prime != oracle || matcher != oracle {
            report.first_failure = Some(Disagreement::Prime {
                trial,
                trial_seed,
                instance,
                prime,
                oracle,
                matcher,
            });
            return report;
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> CrosscheckConfig {
        CrosscheckConfig {
            trials: 60,
            seed: 7,
            max_text_len: 300,
            max_pattern_len: 20,
            ..CrosscheckConfig::default()
        }
    }

    #[test]
    fn passes_with_correct_lut() {
        let report = run_crosscheck(&small(), &MatchLut::build());
        assert!(report.passed(), "{:?}", report.first_failure);
        assert_eq!(report.trials, 60);
        assert_eq!(report.matcher_comparisons, 240);
        assert_eq!(report.prime_comparisons, 60);
    }

    #[test]
    fn zero_trials() {
        let config = CrosscheckConfig { trials: 0, ..small() };
        let report = run_crosscheck(&config, &MatchLut::build());
        assert!(report.passed());
        assert_eq!(report.trials, 0);
    }

    #[test]
    fn corrupted_lut_is_caught() {
        let mut table = *MatchLut::build().table();
        // N over A becomes a mismatch
        table[56] = 1;
        let report = run_crosscheck(&small(), &MatchLut::from_table(table));
        assert!(!report.passed());
    }

    #[test]
    fn instances_are_reproducible() {
        let config = small();
        assert_eq!(matcher_instance(99, &config), matcher_instance(99, &config));
        assert_eq!(prime_instance(99, &config), prime_instance(99, &config));
        let inst = prime_instance(1234, &config);
        assert!(inst.text.bytes().all(|b| b"ACGTacgt".contains(&b)));
    }
}
