//! Fixtures for the criterion benchmarks.

use dnamatch_core::bench::{extract_patterns, synthetic_text};
use dnamatch_core::{encode_pattern, encode_text, EncodedPattern, EncodedText};

pub const TEXT_LEN: usize = 4_000_000;
pub const SEED: u64 = 2016;

pub struct Fixture {
    pub text: EncodedText,
    raw: Vec<u8>,
}

impl Fixture {
    pub fn new() -> Fixture {
        let raw = synthetic_text(TEXT_LEN, SEED);
        Fixture {
            text: encode_text(&raw),
            raw,
        }
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    /// A pattern of length `m` cut from the text, so it occurs at least once.
    pub fn pattern(&self, m: usize) -> EncodedPattern {
        let bp = extract_patterns(&self.raw, m, 1, SEED).remove(0);
        encode_pattern(&bp.pattern).expect("synthetic text is ACGT")
    }
}

impl Default for Fixture {
    fn default() -> Self {
        Fixture::new()
    }
}
