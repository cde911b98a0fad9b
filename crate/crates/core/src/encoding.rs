//! Two-bit text codes, four-bit IUPAC pattern codes and the 64-entry pair table.
//!
//! A text base is one of `A`, `C`, `G`, `T` and is stored as a two-bit
//! [`TextCode`]. A pattern position is a character class: a subset of the
//! four bases named by its IUPAC letter, stored as a four-bit [`PatternCode`].
//! Comparing a pattern position against a text base needs a single table read:
//! the pattern code is shifted left by two bits, OR-ed with the text code, and
//! the result indexes a 64-entry [`MatchLut`] holding `0` for a match and `1`
//! for a mismatch.
//!
//! ```
//! use dnamatch_core::encoding::{encode_pattern, encode_text, pair_index, MatchLut};
//!
//! let text = encode_text(b"ATGACCGGCAT");
//! let pattern = encode_pattern("C[CGT]GG[CG]").unwrap();
//! let lut = MatchLut::build();
//! let idx = pair_index(pattern.codes()[1], text.codes()[1]);
//! assert_eq!(idx, 55);
//! assert_eq!(lut.get(idx), 0);
//! ```

use std::fmt;

use thiserror::Error;

/// Text bases in code order.
pub const TEXT_SYMBOLS: [u8; 4] = *b"ACGT";

/// Pattern symbols in code order; index is the four-bit code.
pub const PATTERN_SYMBOLS: [u8; 16] = *b"ACGTMRWSYKVHDBN-";

// Class membership per pattern code, bit `t` set when the base with text
// code `t` belongs to the class.
const CLASS_MASKS: [u8; 16] = [
    0b0001, // A
    0b0010, // C
    0b0100, // G
    0b1000, // T
    0b0011, // M [AC]
    0b0101, // R [AG]
    0b1001, // W [AT]
    0b0110, // S [CG]
    0b1010, // Y [CT]
    0b1100, // K [GT]
    0b0111, // V [ACG]
    0b1011, // H [ACT]
    0b1101, // D [AGT]
    0b1110, // B [CGT]
    0b1111, // N [ACGT]
    0b0000, // -
];

/// A two-bit text symbol code: A=0, C=1, G=2, T=3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct TextCode(u8);

impl TextCode {
    pub const A: TextCode = TextCode(0);
    pub const C: TextCode = TextCode(1);
    pub const G: TextCode = TextCode(2);
    pub const T: TextCode = TextCode(3);

    /// Code for a base letter, case-insensitive. `None` for anything outside ACGT.
    #[inline]
    pub const fn from_base(base: u8) -> Option<TextCode> {
        match base {
            b'A' | b'a' => Some(TextCode::A),
            b'C' | b'c' => Some(TextCode::C),
            b'G' | b'g' => Some(TextCode::G),
            b'T' | b't' => Some(TextCode::T),
            _ => None,
        }
    }

    /// Returns `None` when `value > 3`.
    pub const fn from_value(value: u8) -> Option<TextCode> {
        if value < 4 {
            Some(TextCode(value))
        } else {
            None
        }
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    /// Uppercase base letter.
    pub const fn base(self) -> u8 {
        TEXT_SYMBOLS[self.0 as usize]
    }

    pub fn all() -> impl Iterator<Item = TextCode> {
        (0..4).map(TextCode)
    }
}

/// A subset of {A, C, G, T}.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct BaseSet(u8);

impl BaseSet {
    pub const EMPTY: BaseSet = BaseSet(0);
    pub const ALL: BaseSet = BaseSet(0b1111);

    /// Builds a set from base letters. Returns the first offending byte on failure.
    pub fn from_bases(bases: &[u8]) -> Result<BaseSet, u8> {
        let mut set = BaseSet::EMPTY;
        for &b in bases {
            let code = TextCode::from_base(b).ok_or(b)?;
            set.insert(code);
        }
        Ok(set)
    }

    pub fn from_mask(mask: u8) -> Option<BaseSet> {
        (mask <= 0b1111).then_some(BaseSet(mask))
    }

    pub const fn mask(self) -> u8 {
        self.0
    }

    pub fn insert(&mut self, code: TextCode) {
        self.0 |= 1 << code.value();
    }

    #[inline]
    pub const fn contains(self, code: TextCode) -> bool {
        self.0 & (1 << code.0) != 0
    }

    pub const fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Member codes in ascending order.
    pub fn iter(self) -> impl Iterator<Item = TextCode> {
        TextCode::all().filter(move |&c| self.contains(c))
    }

    /// All 16 subsets.
    pub fn all_subsets() -> impl Iterator<Item = BaseSet> {
        (0..16).map(BaseSet)
    }
}

impl fmt::Debug for BaseSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for code in self.iter() {
            write!(f, "{}", code.base() as char)?;
        }
        f.write_str("]")
    }
}

/// A four-bit IUPAC pattern symbol code (0..=15).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(transparent)]
pub struct PatternCode(u8);

impl PatternCode {
    /// The "missing or erroneous" code; its class is empty.
    pub const GAP: PatternCode = PatternCode(15);

    /// Code for a single IUPAC letter (case-insensitive) or `-`.
    pub fn from_symbol(symbol: u8) -> Option<PatternCode> {
        let upper = symbol.to_ascii_uppercase();
        PATTERN_SYMBOLS
            .iter()
            .position(|&s| s == upper)
            .map(|i| PatternCode(i as u8))
    }

    /// The unique code whose class equals `set`. The empty set maps to `-`.
    pub fn from_class(set: BaseSet) -> PatternCode {
        let idx = CLASS_MASKS
            .iter()
            .position(|&m| m == set.mask())
            .expect("every subset of ACGT has an IUPAC code");
        PatternCode(idx as u8)
    }

    pub const fn from_value(value: u8) -> Option<PatternCode> {
        if value < 16 {
            Some(PatternCode(value))
        } else {
            None
        }
    }

    #[inline]
    pub const fn value(self) -> u8 {
        self.0
    }

    pub const fn symbol(self) -> u8 {
        PATTERN_SYMBOLS[self.0 as usize]
    }

    pub const fn class(self) -> BaseSet {
        BaseSet(CLASS_MASKS[self.0 as usize])
    }

    /// The code moved into the high bits of a pair index.
    #[inline]
    pub const fn shifted(self) -> u8 {
        self.0 << 2
    }

    pub fn all() -> impl Iterator<Item = PatternCode> {
        (0..16).map(PatternCode)
    }
}

/// Dictionary key for a (pattern, text) pair: `(p << 2) | t`.
#[inline]
pub const fn pair_index(p: PatternCode, t: TextCode) -> u8 {
    p.shifted() | t.value()
}

/// The 64-entry match dictionary: `0` where the text base belongs to the
/// pattern class, `1` otherwise.
#[derive(Clone, PartialEq, Eq)]
pub struct MatchLut([u8; 64]);

impl MatchLut {
    pub fn build() -> MatchLut {
        let mut table = [1u8; 64];
        for p in PatternCode::all() {
            for t in TextCode::all() {
                table[pair_index(p, t) as usize] = u8::from(!p.class().contains(t));
            }
        }
        MatchLut(table)
    }

    /// Wraps an arbitrary table. Used to inject faults when checking that the
    /// cross-validation harness notices a broken dictionary.
    pub fn from_table(table: [u8; 64]) -> MatchLut {
        MatchLut(table)
    }

    #[inline]
    pub fn get(&self, index: u8) -> u8 {
        self.0[(index & 63) as usize]
    }

    pub fn table(&self) -> &[u8; 64] {
        &self.0
    }
}

impl Default for MatchLut {
    fn default() -> Self {
        MatchLut::build()
    }
}

impl fmt::Debug for MatchLut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("MatchLut").field(&&self.0[..]).finish()
    }
}

pub fn build_match_lut() -> MatchLut {
    MatchLut::build()
}

/// A DNA text as two-bit codes.
///
/// Characters outside ACGT (after case folding) are stored as code 0 and their
/// positions recorded; the matcher counts them as mismatches unconditionally.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedText {
    codes: Vec<TextCode>,
    // 0-based, ascending
    invalid: Vec<usize>,
}

impl EncodedText {
    pub fn codes(&self) -> &[TextCode] {
        &self.codes
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// 1-based positions whose source character was not a base.
    pub fn invalid_positions(&self) -> impl ExactSizeIterator<Item = usize> + '_ {
        self.invalid.iter().map(|&p| p + 1)
    }

    pub fn has_invalid(&self) -> bool {
        !self.invalid.is_empty()
    }

    /// `position` is 1-based.
    pub fn is_invalid(&self, position: usize) -> bool {
        position >= 1 && self.invalid.binary_search(&(position - 1)).is_ok()
    }

    pub(crate) fn invalid_zero_based(&self) -> &[usize] {
        &self.invalid
    }
}

/// Encodes raw text. Total: every byte yields exactly one code.
pub fn encode_text(raw: &[u8]) -> EncodedText {
    let mut codes = Vec::with_capacity(raw.len());
    let mut invalid = Vec::new();
    for (i, &b) in raw.iter().enumerate() {
        match TextCode::from_base(b) {
            Some(code) => codes.push(code),
            None => {
                codes.push(TextCode::A);
                invalid.push(i);
            }
        }
    }
    EncodedText { codes, invalid }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("pattern is empty")]
    Empty,
    #[error("unknown pattern symbol {symbol:?} at position {position}")]
    UnknownSymbol { symbol: char, position: usize },
    #[error("empty character class at position {position}")]
    EmptyClass { position: usize },
    #[error("character class member {symbol:?} at position {position} is not one of A, C, G, T")]
    InvalidClassMember { symbol: char, position: usize },
    #[error("character class opened at position {position} is never closed")]
    UnterminatedClass { position: usize },
    #[error("unmatched ']' at position {position}")]
    UnmatchedClose { position: usize },
}

/// An encoded pattern with its pre-shifted codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedPattern {
    codes: Vec<PatternCode>,
    shifted: Vec<u8>,
}

impl EncodedPattern {
    /// Returns `None` for an empty code list.
    pub fn from_codes(codes: Vec<PatternCode>) -> Option<EncodedPattern> {
        if codes.is_empty() {
            return None;
        }
        let shifted = codes.iter().map(|c| c.shifted()).collect();
        Some(EncodedPattern { codes, shifted })
    }

    pub fn codes(&self) -> &[PatternCode] {
        &self.codes
    }

    pub fn shifted(&self) -> &[u8] {
        &self.shifted
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    /// Always false; patterns have at least one position.
    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    /// The pattern as single IUPAC letters.
    pub fn to_symbols(&self) -> String {
        self.codes.iter().map(|c| c.symbol() as char).collect()
    }
}

/// Parses a pattern made of IUPAC letters, `-`, and bracketed class literals
/// such as `[CGT]`. Brackets are normalized to the IUPAC code for their set.
/// Positions in errors are 1-based character offsets into `spec`.
pub fn encode_pattern(spec: &str) -> Result<EncodedPattern, PatternError> {
    let mut codes = Vec::with_capacity(spec.len());
    let mut chars = spec.chars().enumerate();
    while let Some((i, ch)) = chars.next() {
        match ch {
            '[' => {
                let mut set = BaseSet::EMPTY;
                let mut closed = false;
                for (j, member) in chars.by_ref() {
                    if member == ']' {
                        closed = true;
                        break;
                    }
                    let code = u8::try_from(member)
                        .ok()
                        .and_then(TextCode::from_base)
                        .ok_or(PatternError::InvalidClassMember {
                            symbol: member,
                            position: j + 1,
                        })?;
                    set.insert(code);
                }
                if !closed {
                    return Err(PatternError::UnterminatedClass { position: i + 1 });
                }
                if set.is_empty() {
                    return Err(PatternError::EmptyClass { position: i + 1 });
                }
                codes.push(PatternCode::from_class(set));
            }
            ']' => return Err(PatternError::UnmatchedClose { position: i + 1 }),
            _ => {
                let code = u8::try_from(ch)
                    .ok()
                    .and_then(PatternCode::from_symbol)
                    .ok_or(PatternError::UnknownSymbol {
                        symbol: ch,
                        position: i + 1,
                    })?;
                codes.push(code);
            }
        }
    }
    EncodedPattern::from_codes(codes).ok_or(PatternError::Empty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    // Expected pair outcomes row by row (rows A..-, columns A C G T).
    const PAIR_TABLE: [[u8; 4]; 16] = [
        [0, 1, 1, 1],
        [1, 0, 1, 1],
        [1, 1, 0, 1],
        [1, 1, 1, 0],
        [0, 0, 1, 1],
        [0, 1, 0, 1],
        [0, 1, 1, 0],
        [1, 0, 0, 1],
        [1, 0, 1, 0],
        [1, 1, 0, 0],
        [0, 0, 0, 1],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [1, 0, 0, 0],
        [0, 0, 0, 0],
        [1, 1, 1, 1],
    ];

    fn codes(text: &EncodedText) -> Vec<u8> {
        text.codes().iter().map(|c| c.value()).collect()
    }

    #[test]
    fn text_codes_follow_table_one() {
        let t = encode_text(b"ATGACCGGCAT");
        assert_eq!(codes(&t), [0, 3, 2, 0, 1, 1, 2, 2, 1, 0, 3]);
        assert!(!t.has_invalid());
    }

    #[test]
    fn empty_text() {
        let t = encode_text(b"");
        assert!(t.is_empty());
        assert_eq!(t.invalid_positions().count(), 0);
    }

    #[test]
    fn non_base_text_is_recorded() {
        let t = encode_text(b"ANa");
        assert_eq!(codes(&t), [0, 0, 0]);
        assert_eq!(t.invalid_positions().collect::<Vec<_>>(), [2]);
        assert!(t.is_invalid(2));
        assert!(!t.is_invalid(1));
        assert!(!t.is_invalid(0));
    }

    #[test]
    fn worked_example_pattern() {
        let p = encode_pattern("C[CGT]GG[CG]").unwrap();
        let values: Vec<u8> = p.codes().iter().map(|c| c.value()).collect();
        assert_eq!(values, [1, 13, 2, 2, 7]);
        assert_eq!(p.shifted(), [0b000100, 0b110100, 0b001000, 0b001000, 0b011100]);
        assert_eq!(p.shifted(), [4, 52, 8, 8, 28]);
        assert_eq!(p.to_symbols(), "CBGGS");
    }

    #[test]
    fn single_symbol_pattern() {
        let p = encode_pattern("A").unwrap();
        assert_eq!(p.codes()[0].value(), 0);
        assert_eq!(p.shifted(), [0]);
    }

    #[test]
    fn table_two_symbols() {
        let expected = [
            ('A', "A"),
            ('C', "C"),
            ('G', "G"),
            ('T', "T"),
            ('M', "AC"),
            ('R', "AG"),
            ('W', "AT"),
            ('S', "CG"),
            ('Y', "CT"),
            ('K', "GT"),
            ('V', "ACG"),
            ('H', "ACT"),
            ('D', "AGT"),
            ('B', "CGT"),
            ('N', "ACGT"),
            ('-', ""),
        ];
        for (value, (sym, bases)) in expected.iter().enumerate() {
            let code = PatternCode::from_symbol(*sym as u8).unwrap();
            assert_eq!(code.value() as usize, value);
            assert_eq!(code.class(), BaseSet::from_bases(bases.as_bytes()).unwrap());
            assert_eq!(code.class().is_empty(), value == 15);
            if !bases.is_empty() {
                let bracket = format!("[{bases}]");
                assert_eq!(encode_pattern(&bracket).unwrap().codes(), [code]);
            }
        }
    }

    #[test]
    fn lowercase_and_gap_in_pattern() {
        let p = encode_pattern("acgtn-").unwrap();
        assert_eq!(p.to_symbols(), "ACGTN-");
        assert_eq!(encode_pattern("[ca]").unwrap().to_symbols(), "M");
        assert_eq!(encode_pattern("[AAC]").unwrap().to_symbols(), "M");
    }

    #[test]
    fn pattern_errors() {
        assert_eq!(encode_pattern(""), Err(PatternError::Empty));
        assert_eq!(
            encode_pattern("XYZ"),
            Err(PatternError::UnknownSymbol { symbol: 'X', position: 1 })
        );
        assert_eq!(
            encode_pattern("AC[]"),
            Err(PatternError::EmptyClass { position: 3 })
        );
        assert_eq!(
            encode_pattern("[AN]"),
            Err(PatternError::InvalidClassMember { symbol: 'N', position: 3 })
        );
        assert_eq!(
            encode_pattern("A[CG"),
            Err(PatternError::UnterminatedClass { position: 2 })
        );
        assert_eq!(
            encode_pattern("AC]"),
            Err(PatternError::UnmatchedClose { position: 3 })
        );
        assert_eq!(
            encode_pattern("A[C[G]]"),
            Err(PatternError::InvalidClassMember { symbol: '[', position: 4 })
        );
        assert!(matches!(
            encode_pattern("Aé"),
            Err(PatternError::UnknownSymbol { symbol: 'é', position: 2 })
        ));
        let msg = encode_pattern("XYZ").unwrap_err().to_string();
        assert!(msg.contains("'X'"), "{msg}");
    }

    #[test]
    fn pair_index_examples() {
        let d = PatternCode::from_symbol(b'D').unwrap();
        assert_eq!(pair_index(d, TextCode::A), 48);
        let a = PatternCode::from_symbol(b'A').unwrap();
        assert_eq!(pair_index(a, TextCode::A), 0);
        let c = PatternCode::from_symbol(b'C').unwrap();
        assert_eq!(pair_index(c, TextCode::T), 7);
    }

    #[test]
    fn pair_index_is_injective() {
        let mut seen = [false; 64];
        for p in PatternCode::all() {
            for t in TextCode::all() {
                let idx = pair_index(p, t) as usize;
                assert!(!seen[idx]);
                seen[idx] = true;
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn lut_matches_table_three() {
        let lut = MatchLut::build();
        for (p, row) in PAIR_TABLE.iter().enumerate() {
            for (t, &value) in row.iter().enumerate() {
                let index = p * 4 + t;
                assert_eq!(lut.table()[index], value, "entry ({index})");
            }
        }
        assert_eq!(lut.get(48), 0);
        assert_eq!(lut.get(4), 1);
        assert_eq!(lut.get(63), 1);
    }

    #[test]
    fn lut_encodes_class_membership() {
        let lut = build_match_lut();
        for p in PatternCode::all() {
            for t in TextCode::all() {
                let hit = lut.get(pair_index(p, t)) == 0;
                assert_eq!(hit, p.class().contains(t), "{p:?} {t:?}");
            }
        }
    }

    fn pattern_spec() -> impl Strategy<Value = String> {
        let atom = prop_oneof![
            proptest::sample::select(PATTERN_SYMBOLS.to_vec()).prop_map(|b| (b as char).to_string()),
            (1u8..16).prop_map(|mask| {
                let bases: String = BaseSet(mask).iter().map(|c| c.base() as char).collect();
                format!("[{bases}]")
            }),
        ];
        proptest::collection::vec(atom, 1..40).prop_map(|v| v.concat())
    }

    proptest! {
        #[test]
        fn decode_then_reencode_is_stable(spec in pattern_spec()) {
            let p = encode_pattern(&spec).unwrap();
            let again = encode_pattern(&p.to_symbols()).unwrap();
            prop_assert_eq!(p.codes(), again.codes());
            for (code, shifted) in p.codes().iter().zip(p.shifted()) {
                prop_assert_eq!(*shifted, code.value() << 2);
                prop_assert!(*shifted <= 60 && *shifted % 4 == 0);
            }
        }

        #[test]
        fn base_only_text_has_no_invalid(raw in "[ACGTacgt]{0,200}") {
            let t = encode_text(raw.as_bytes());
            prop_assert_eq!(t.len(), raw.len());
            prop_assert!(!t.has_invalid());
        }

        #[test]
        fn invalid_positions_are_exactly_non_bases(raw in proptest::collection::vec(any::<u8>(), 0..200)) {
            let t = encode_text(&raw);
            prop_assert_eq!(t.len(), raw.len());
            let expected: Vec<usize> = raw
                .iter()
                .enumerate()
                .filter(|(_, b)| !b"ACGTacgt".contains(b))
                .map(|(i, _)| i + 1)
                .collect();
            prop_assert_eq!(t.invalid_positions().collect::<Vec<_>>(), expected);
        }
    }
}
