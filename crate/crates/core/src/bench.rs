//! Runtime measurement helpers shared by the `bench` subcommand and the
//! acceptance suite.
//!
//! Only the search phase is timed; encoding the text and pattern happens
//! before the clock starts.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::encoding::{EncodedPattern, EncodedText, MatchLut};
use crate::matcher::search_with_lut;
use crate::parallel::parallel_search_with_lut;

/// Uniform random ACGT text.
pub fn synthetic_text(len: usize, seed: u64) -> Vec<u8> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| b"ACGT"[rng.gen_range(0..4)]).collect()
}

/// A pattern cut out of the text.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchPattern {
    /// 1-based start in the source text.
    pub start: usize,
    pub pattern: String,
}

impl BenchPattern {
    pub fn end(&self) -> usize {
        self.start + self.pattern.len() - 1
    }
}

/// `count` patterns of length `m` taken from seeded random offsets of `text`.
/// Empty when the text is shorter than `m`.
pub fn extract_patterns(text: &[u8], m: usize, count: usize, seed: u64) -> Vec<BenchPattern> {
    if m == 0 || m > text.len() {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ m as u64);
    (0..count)
        .map(|_| {
            let start = rng.gen_range(0..=text.len() - m);
            BenchPattern {
                start: start + 1,
                pattern: String::from_utf8_lossy(&text[start..start + m]).into_owned(),
            }
        })
        .collect()
}

/// Mean and sample standard deviation of repeated runs, in seconds.
#[derive(Clone, Debug, PartialEq)]
pub struct RunStats {
    pub runs: Vec<f64>,
    pub mean: f64,
    pub std_dev: f64,
}

impl RunStats {
    pub fn from_runs(runs: Vec<f64>) -> RunStats {
        let n = runs.len() as f64;
        let mean = runs.iter().sum::<f64>() / n;
        let std_dev = if runs.len() > 1 {
            (runs.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
        } else {
            0.0
        };
        RunStats { runs, mean, std_dev }
    }
}

/// Times `reps` searches. `workers == 1` runs the sequential scan on the
/// calling thread. Returns the stats and the hit count of the last run.
pub fn time_search(
    text: &EncodedText,
    pattern: &EncodedPattern,
    k: usize,
    workers: usize,
    reps: usize,
) -> (RunStats, usize) {
    let lut = MatchLut::build();
    let mut runs = Vec::with_capacity(reps);
    let mut hits = 0;
    for _ in 0..reps.max(1) {
        let start = Instant::now();
        let found = if workers <= 1 {
            search_with_lut(text, pattern, &lut, k)
        } else {
            parallel_search_with_lut(text, pattern, &lut, k, workers).expect("workers > 1")
        };
        runs.push(start.elapsed().as_secs_f64());
        hits = std::hint::black_box(found).len();
    }
    (RunStats::from_runs(runs), hits)
}

/// Slowest mean divided by fastest mean.
pub fn runtime_ratio(means: &[f64]) -> f64 {
    let max = means.iter().copied().fold(f64::MIN, f64::max);
    let min = means.iter().copied().fold(f64::MAX, f64::min);
    max / min
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::encoding::{encode_pattern, encode_text};

    #[test]
    fn seeded_generation_is_deterministic() {
        assert_eq!(synthetic_text(1000, 3), synthetic_text(1000, 3));
        assert_ne!(synthetic_text(1000, 3), synthetic_text(1000, 4));
        let text = synthetic_text(5000, 3);
        let a = extract_patterns(&text, 50, 5, 11);
        assert_eq!(a, extract_patterns(&text, 50, 5, 11));
        for p in &a {
            assert_eq!(p.pattern.as_bytes(), &text[p.start - 1..p.end()]);
        }
        assert!(extract_patterns(&text, 6000, 5, 11).is_empty());
    }

    #[test]
    fn stats() {
        let s = RunStats::from_runs(vec![1.0, 2.0, 3.0]);
        assert_eq!(s.mean, 2.0);
        assert_eq!(s.std_dev, 1.0);
        assert_eq!(RunStats::from_runs(vec![4.0]).std_dev, 0.0);
        assert_eq!(runtime_ratio(&[2.0, 1.0, 1.5]), 2.0);
    }

    #[test]
    fn extracted_pattern_is_found() {
        let raw = synthetic_text(20_000, 1);
        let text = encode_text(&raw);
        for bp in extract_patterns(&raw, 300, 3, 2) {
            let pattern = encode_pattern(&bp.pattern).unwrap();
            let (stats, hits) = time_search(&text, &pattern, 0, 2, 2);
            assert!(hits >= 1);
            assert_eq!(stats.runs.len(), 2);
        }
    }
}
