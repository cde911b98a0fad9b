//! Built-in trace check on the eleven-base worked example.
//!
//! Text `ATGACCGGCAT`, pattern `C[CGT]GG[CG]`, `k = 2`. For each of the seven
//! window starts the expected dictionary indices and match bits are listed up
//! to the point where the scan stops.

use crate::encoding::{encode_pattern, encode_text, MatchLut};
use crate::matcher::{trace_window, WindowTrace};

pub const EXAMPLE_TEXT: &str = "ATGACCGGCAT";
pub const EXAMPLE_PATTERN: &str = "C[CGT]GG[CG]";
pub const EXAMPLE_K: usize = 2;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExpectedRow {
    pub position: usize,
    pub indices: &'static [u8],
    pub bits: &'static [u8],
}

pub const EXPECTED_TRACE: [ExpectedRow; 7] = [
    ExpectedRow { position: 1, indices: &[4, 55, 10, 8, 29], bits: &[1, 0, 0, 1, 0] },
    ExpectedRow { position: 2, indices: &[7, 54, 8, 9], bits: &[1, 0, 1, 1] },
    ExpectedRow { position: 3, indices: &[6, 52, 9], bits: &[1, 1, 1] },
    ExpectedRow { position: 4, indices: &[4, 53, 9, 10, 30], bits: &[1, 0, 1, 0, 0] },
    ExpectedRow { position: 5, indices: &[5, 53, 10, 10, 29], bits: &[0, 0, 0, 0, 0] },
    ExpectedRow { position: 6, indices: &[5, 54, 10, 9, 28], bits: &[0, 0, 0, 1, 1] },
    ExpectedRow { position: 7, indices: &[6, 54, 9, 8], bits: &[1, 0, 1, 1] },
];

#[derive(Clone, Debug)]
pub struct RowCheck {
    pub expected: ExpectedRow,
    pub actual: WindowTrace,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.actual.indices == self.expected.indices && self.actual.bits == self.expected.bits
    }
}

/// Traces every window of the example with the given dictionary.
pub fn run_selftest_with_lut(lut: &MatchLut) -> Vec<RowCheck> {
    let text = encode_text(EXAMPLE_TEXT.as_bytes());
    let pattern = encode_pattern(EXAMPLE_PATTERN).expect("example pattern is valid");
    EXPECTED_TRACE
        .iter()
        .map(|&expected| RowCheck {
            expected,
            actual: trace_window(&text, &pattern, lut, expected.position, EXAMPLE_K),
        })
        .collect()
}

pub fn run_selftest() -> Vec<RowCheck> {
    run_selftest_with_lut(&MatchLut::build())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_rows_pass() {
        let rows = run_selftest();
        assert_eq!(rows.len(), 7);
        for row in &rows {
            assert!(row.passed(), "{row:?}");
        }
    }

    #[test]
    fn broken_lut_fails_a_row() {
        let mut table = *MatchLut::build().table();
        table[55] = 1;
        let rows = run_selftest_with_lut(&MatchLut::from_table(table));
        assert!(!rows[0].passed());
    }
}
