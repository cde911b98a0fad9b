//! Sliding-window k-mismatch scan.
//!
//! For every window start `i` the mismatch count is the sum of dictionary
//! reads `L[shifted[j] | text[i + j - 1]]` over the pattern, accumulated left
//! to right. The scan of a window stops as soon as the running count exceeds
//! `k`, and the window then slides one position right.
//!
//! Positions in [`MatchResult`] are 1-based.

use std::ops::Range;

use crate::encoding::{EncodedPattern, EncodedText, MatchLut, TextCode};

/// A window that passed the mismatch budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchResult {
    /// 1-based start of the window in the text.
    pub position: usize,
    pub mismatches: usize,
}

/// Outcome of scoring one window under a budget.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WindowOutcome {
    /// Total mismatch count, at most `k`.
    Within(usize),
    /// The count passed `k`; `compared` pattern positions were read before stopping.
    Exceeded { compared: usize },
}

impl WindowOutcome {
    pub fn count(self) -> Option<usize> {
        match self {
            WindowOutcome::Within(c) => Some(c),
            WindowOutcome::Exceeded { .. } => None,
        }
    }
}

#[inline]
fn score_clean(
    window: &[TextCode],
    shifted: &[u8],
    lut: &MatchLut,
    k: usize,
) -> Result<usize, usize> {
    let mut count = 0usize;
    for (j, (&r, &t)) in shifted.iter().zip(window).enumerate() {
        count += lut.get(r | t.value()) as usize;
        if count > k {
            return Err(j + 1);
        }
    }
    Ok(count)
}

// `bad` holds the 0-based invalid text positions at or after `start`.
#[inline]
fn score_masked(
    window: &[TextCode],
    shifted: &[u8],
    mut bad: &[usize],
    start: usize,
    lut: &MatchLut,
    k: usize,
) -> Result<usize, usize> {
    let mut count = 0usize;
    for (j, (&r, &t)) in shifted.iter().zip(window).enumerate() {
        if bad.first() == Some(&(start + j)) {
            count += 1;
            bad = &bad[1..];
        } else {
            count += lut.get(r | t.value()) as usize;
        }
        if count > k {
            return Err(j + 1);
        }
    }
    Ok(count)
}

#[inline]
fn score(
    text: &EncodedText,
    pattern: &EncodedPattern,
    lut: &MatchLut,
    start: usize,
    bad: &[usize],
    k: usize,
) -> Result<usize, usize> {
    let m = pattern.len();
    let window = &text.codes()[start..start + m];
    match bad.first() {
        Some(&p) if p < start + m => score_masked(window, pattern.shifted(), bad, start, lut, k),
        _ => score_clean(window, pattern.shifted(), lut, k),
    }
}

fn check_position(text: &EncodedText, pattern: &EncodedPattern, position: usize) {
    assert!(
        position >= 1 && pattern.len() <= text.len() && position <= text.len() - pattern.len() + 1,
        "window start {position} out of range for text length {} and pattern length {}",
        text.len(),
        pattern.len()
    );
}

/// Mismatch count of the window at 1-based `position`, with early abort once
/// the count exceeds `k`.
///
/// Panics if `position` is not in `1..=n-m+1`.
pub fn mismatches_at(
    text: &EncodedText,
    pattern: &EncodedPattern,
    lut: &MatchLut,
    position: usize,
    k: usize,
) -> WindowOutcome {
    check_position(text, pattern, position);
    let start = position - 1;
    let invalid = text.invalid_zero_based();
    let bad = &invalid[invalid.partition_point(|&p| p < start)..];
    match score(text, pattern, lut, start, bad, k) {
        Ok(c) => WindowOutcome::Within(c),
        Err(compared) => WindowOutcome::Exceeded { compared },
    }
}

/// Mismatch count of the window at 1-based `position` without early abort.
pub fn mismatches_full(
    text: &EncodedText,
    pattern: &EncodedPattern,
    lut: &MatchLut,
    position: usize,
) -> usize {
    check_position(text, pattern, position);
    let start = position - 1;
    pattern
        .shifted()
        .iter()
        .zip(&text.codes()[start..])
        .enumerate()
        .map(|(j, (&r, &t))| {
            if text.is_invalid(position + j) {
                1
            } else {
                lut.get(r | t.value()) as usize
            }
        })
        .sum()
}

/// Number of windows: `max(0, n - m + 1)`.
pub fn window_count(n: usize, m: usize) -> usize {
    (n + 1).saturating_sub(m)
}

/// Scores the 0-based window starts in `starts`, appending passing windows to `out`.
pub(crate) fn scan_windows(
    text: &EncodedText,
    pattern: &EncodedPattern,
    lut: &MatchLut,
    k: usize,
    starts: Range<usize>,
    out: &mut Vec<MatchResult>,
) {
    let invalid = text.invalid_zero_based();
    let mut bad = invalid.partition_point(|&p| p < starts.start);
    for start in starts {
        while bad < invalid.len() && invalid[bad] < start {
            bad += 1;
        }
        if let Ok(mismatches) = score(text, pattern, lut, start, &invalid[bad..], k) {
            out.push(MatchResult {
                position: start + 1,
                mismatches,
            });
        }
    }
}

/// All windows with at most `k` mismatches, ascending by position, using a
/// caller-supplied dictionary.
pub fn search_with_lut(
    text: &EncodedText,
    pattern: &EncodedPattern,
    lut: &MatchLut,
    k: usize,
) -> Vec<MatchResult> {
    let mut out = Vec::new();
    let windows = window_count(text.len(), pattern.len());
    scan_windows(text, pattern, lut, k, 0..windows, &mut out);
    out
}

/// All windows with at most `k` mismatches, ascending by position.
///
/// ```
/// use dnamatch_core::{encode_pattern, encode_text, search};
///
/// let text = encode_text(b"ATGACCGGCAT");
/// let pattern = encode_pattern("C[CGT]GG[CG]").unwrap();
/// let hits: Vec<usize> = search(&text, &pattern, 2).iter().map(|m| m.position).collect();
/// assert_eq!(hits, [1, 4, 5, 6]);
/// ```
pub fn search(text: &EncodedText, pattern: &EncodedPattern, k: usize) -> Vec<MatchResult> {
    search_with_lut(text, pattern, &MatchLut::build(), k)
}

/// Per-comparison record of one window scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowTrace {
    pub position: usize,
    /// Dictionary index read at each compared pattern position.
    pub indices: Vec<u8>,
    /// Dictionary value (1 = mismatch) at each compared position.
    pub bits: Vec<u8>,
    pub outcome: WindowOutcome,
}

/// Like [`mismatches_at`], but records every dictionary access up to the
/// abort point.
pub fn trace_window(
    text: &EncodedText,
    pattern: &EncodedPattern,
    lut: &MatchLut,
    position: usize,
    k: usize,
) -> WindowTrace {
    check_position(text, pattern, position);
    let start = position - 1;
    let mut indices = Vec::new();
    let mut bits = Vec::new();
    let mut count = 0;
    let mut outcome = None;
    for (j, (&r, &t)) in pattern.shifted().iter().zip(&text.codes()[start..]).enumerate() {
        let index = r | t.value();
        let bit = if text.is_invalid(position + j) {
            1
        } else {
            lut.get(index)
        };
        indices.push(index);
        bits.push(bit);
        count += bit as usize;
        if count > k {
            outcome = Some(WindowOutcome::Exceeded { compared: j + 1 });
            break;
        }
    }
    WindowTrace {
        position,
        indices,
        bits,
        outcome: outcome.unwrap_or(WindowOutcome::Within(count)),
    }
}
