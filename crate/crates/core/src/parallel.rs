//! Multithreaded search over contiguous ranges of window starts.
//!
//! The window starts `1..=n-m+1` are split into contiguous ranges, one per
//! worker. A worker reading range `(s, e)` touches text positions
//! `s..=e+m-1`, so neighbouring workers share `m-1` symbols of read-only text
//! and every window is scored exactly once. Per-worker results are joined in
//! range order, which keeps the output identical to a single-threaded scan.

use std::num::NonZeroUsize;
use std::thread;

use thiserror::Error;

use crate::encoding::{EncodedPattern, EncodedText, MatchLut};
use crate::matcher::{scan_windows, window_count, MatchResult};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParallelError {
    #[error("worker count must be at least 1")]
    NoWorkers,
}

/// Window-start ranges, 1-based and inclusive.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ChunkPlan {
    pub ranges: Vec<(usize, usize)>,
}

impl ChunkPlan {
    pub fn is_empty(&self) -> bool {
        self.ranges.is_empty()
    }

    pub fn len(&self) -> usize {
        self.ranges.len()
    }

    /// 1-based inclusive text span read for range `idx`.
    pub fn text_span(&self, idx: usize, m: usize) -> (usize, usize) {
        let (s, e) = self.ranges[idx];
        (s, e + m - 1)
    }
}

/// Splits the window starts of an `n`-long text and `m`-long pattern into
/// ranges of `ceil(windows / workers)` starts; the last may be shorter.
pub fn plan_chunks(n: usize, m: usize, workers: usize) -> Result<ChunkPlan, ParallelError> {
    if workers == 0 {
        return Err(ParallelError::NoWorkers);
    }
    let windows = window_count(n, m);
    if windows == 0 {
        return Ok(ChunkPlan::default());
    }
    let size = windows.div_ceil(workers);
    let ranges = (0..windows)
        .step_by(size)
        .map(|s| (s + 1, (s + size).min(windows)))
        .collect();
    Ok(ChunkPlan { ranges })
}

/// Logical CPU count, falling back to 1.
pub fn default_workers() -> usize {
    thread::available_parallelism()
        .map(NonZeroUsize::get)
        .unwrap_or(1)
}

pub fn parallel_search_with_lut(
    text: &EncodedText,
    pattern: &EncodedPattern,
    lut: &MatchLut,
    k: usize,
    workers: usize,
) -> Result<Vec<MatchResult>, ParallelError> {
    let plan = plan_chunks(text.len(), pattern.len(), workers)?;
    if plan.len() <= 1 {
        let mut out = Vec::new();
        if let Some(&(s, e)) = plan.ranges.first() {
            scan_windows(text, pattern, lut, k, s - 1..e, &mut out);
        }
        return Ok(out);
    }
    let parts: Vec<Vec<MatchResult>> = thread::scope(|scope| {
        let handles: Vec<_> = plan
            .ranges
            .iter()
            .map(|&(s, e)| {
                scope.spawn(move || {
                    let mut out = Vec::new();
                    scan_windows(text, pattern, lut, k, s - 1..e, &mut out);
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    Ok(parts.concat())
}

/// Same result as [`crate::matcher::search`], computed by `workers` threads.
pub fn parallel_search(
    text: &EncodedText,
    pattern: &EncodedPattern,
    k: usize,
    workers: usize,
) -> Result<Vec<MatchResult>, ParallelError> {
    parallel_search_with_lut(text, pattern, &MatchLut::build(), k, workers)
}
