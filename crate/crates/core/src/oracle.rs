//! Brute-force character-class matcher used as ground truth.
//!
//! Works directly on characters and shares no logic with the bit-coded
//! matcher: its own IUPAC table, its own bracket parser, full O(nm) sums.

use thiserror::Error;

use crate::matcher::MatchResult;

const IUPAC: &[(char, &str)] = &[
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

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassPatternError {
    #[error("empty pattern")]
    Empty,
    #[error("bad pattern character {0:?}")]
    BadChar(char),
    #[error("malformed bracket class")]
    BadBracket,
}

/// A pattern as a list of base sets, each a sorted, deduplicated list of
/// uppercase letters drawn from `ACGT`. An empty set never matches.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassPattern {
    classes: Vec<Vec<u8>>,
}

impl ClassPattern {
    pub fn new(classes: Vec<Vec<u8>>) -> Result<ClassPattern, ClassPatternError> {
        if classes.is_empty() {
            return Err(ClassPatternError::Empty);
        }
        let mut normalized = Vec::with_capacity(classes.len());
        for mut class in classes {
            class.iter_mut().for_each(|b| b.make_ascii_uppercase());
            if let Some(&b) = class.iter().find(|b| !b"ACGT".contains(b)) {
                return Err(ClassPatternError::BadChar(b as char));
            }
            class.sort_unstable();
            class.dedup();
            normalized.push(class);
        }
        Ok(ClassPattern { classes: normalized })
    }

    /// Parses IUPAC letters, `-`, and `[...]` literals.
    pub fn parse(spec: &str) -> Result<ClassPattern, ClassPatternError> {
        let mut classes = Vec::new();
        let mut in_bracket: Option<Vec<u8>> = None;
        for ch in spec.chars() {
            let up = ch.to_ascii_uppercase();
            match (&mut in_bracket, up) {
                (None, '[') => in_bracket = Some(Vec::new()),
                (None, ']') => return Err(ClassPatternError::BadBracket),
                (None, c) => {
                    let (_, bases) = IUPAC
                        .iter()
                        .find(|(sym, _)| *sym == c)
                        .ok_or(ClassPatternError::BadChar(ch))?;
                    classes.push(bases.as_bytes().to_vec());
                }
                (Some(set), ']') => {
                    if set.is_empty() {
                        return Err(ClassPatternError::BadBracket);
                    }
                    classes.push(std::mem::take(set));
                    in_bracket = None;
                }
                (Some(set), c @ ('A' | 'C' | 'G' | 'T')) => set.push(c as u8),
                (Some(_), _) => return Err(ClassPatternError::BadChar(ch)),
            }
        }
        if in_bracket.is_some() {
            return Err(ClassPatternError::BadBracket);
        }
        ClassPattern::new(classes)
    }

    pub fn classes(&self) -> &[Vec<u8>] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

fn belongs(ch: u8, class: &[u8]) -> bool {
    class.contains(&ch.to_ascii_uppercase())
}

/// Every window with at most `k` class mismatches, with its full count.
/// Characters outside ACGT belong to no class.
pub fn naive_search(text: &[u8], pattern: &ClassPattern, k: usize) -> Vec<MatchResult> {
    let m = pattern.len();
    if m > text.len() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for i in 0..=text.len() - m {
        let count = pattern
            .classes()
            .iter()
            .enumerate()
            .filter(|(j, class)| !belongs(text[i + j], class))
            .count();
        if count <= k {
            out.push(MatchResult {
                position: i + 1,
                mismatches: count,
            });
        }
    }
    out
}
