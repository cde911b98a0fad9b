//! Character-class k-mismatch search over DNA text.
//!
//! Text bases are stored as two-bit codes and pattern positions as four-bit
//! IUPAC class codes. Each comparison is a shift, an OR and a read from a
//! 64-entry table of match/mismatch bits; a window is abandoned as soon as
//! its mismatch count exceeds the budget `k`.
//!
//! Two independent references are included for cross-validation: a
//! brute-force character matcher ([`oracle`]) and an exact-arithmetic
//! prime-encoding matcher ([`prime_ref`]).

pub mod bench;
pub mod crosscheck;
pub mod encoding;
pub mod fasta;
pub mod matcher;
pub mod oracle;
pub mod parallel;
pub mod prime_ref;
pub mod selftest;

pub use encoding::{
    build_match_lut, encode_pattern, encode_text, pair_index, BaseSet, EncodedPattern, EncodedText,
    MatchLut, PatternCode, PatternError, TextCode,
};
pub use fasta::{read_fasta, read_pattern, FastaError, FastaReader, FastaRecord, PatternSource};
pub use matcher::{mismatches_at, search, search_with_lut, MatchResult, WindowOutcome};
pub use parallel::{default_workers, parallel_search, plan_chunks, ChunkPlan, ParallelError};
