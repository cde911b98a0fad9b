//! Exact prime-encoding reference matcher for exact (k = 0) class matching.
//!
//! Each base `a_i` gets a prime `k_i` larger than the pattern length. With
//! `M = k_1 k_2 k_3 k_4`, a text base is the integer `e_i = M / k_i` and a
//! pattern class `S` is the integer `n_S` with `n_S ≡ 0 (mod k_i)` for
//! `a_i ∈ S` and `n_S ≡ 1 (mod k_j)` otherwise. A window matches when the
//! aligned sum of products `Σ n_S[j] · e[i + j - 1]` is `0 mod M`.
//!
//! The products grow past 64 bits once patterns reach a few hundred
//! symbols, so everything here is done per prime on residues, where each
//! running sum stays below `k_r²`. [`magnitude_report`] computes the full
//! integers with `u128` to show how large they get.

use thiserror::Error;

use crate::oracle::ClassPattern;

/// Longest pattern accepted by [`correlate_exact`].
pub const MAX_PATTERN_LEN: usize = 10_000;

const BASES: [u8; 4] = *b"ACGT";

fn base_index(b: u8) -> Option<usize> {
    BASES.iter().position(|&x| x == b.to_ascii_uppercase())
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrimeError {
    #[error("pattern length {len} exceeds the supported bound {max}")]
    PatternTooLong { len: usize, max: usize },
    #[error("pattern length {len} is not below the smallest prime {prime}")]
    PrimeTooSmall { len: usize, prime: u64 },
    #[error("text and pattern were encoded with different primes")]
    CodeMismatch,
    #[error("class member {0:?} is not one of A, C, G, T")]
    BadBase(char),
}

/// Four ascending primes, one per base, and their product.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeAlphabetCode {
    pub primes: [u64; 4],
    pub modulus: u128,
}

impl PrimeAlphabetCode {
    /// `e_i = M / k_i` for base index `i` (A=0 .. T=3).
    pub fn text_value(&self, base: usize) -> u128 {
        self.modulus / u128::from(self.primes[base])
    }

    /// Residues of `e_i` modulo each prime.
    pub fn text_residues(&self, base: usize) -> [u64; 4] {
        let e = self.text_value(base);
        self.primes.map(|k| (e % u128::from(k)) as u64)
    }
}

/// The four smallest primes strictly greater than `m`.
pub fn select_primes(m: usize) -> PrimeAlphabetCode {
    let mut primes = [0u64; 4];
    let mut candidate = m as u64;
    for slot in primes.iter_mut() {
        candidate += 1;
        while !is_prime(candidate) {
            candidate += 1;
        }
        *slot = candidate;
    }
    let modulus = primes.iter().map(|&p| u128::from(p)).product();
    PrimeAlphabetCode { primes, modulus }
}

/// Text as per-position residue vectors of `e_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEncodedText {
    code: PrimeAlphabetCode,
    residues: Vec<[u64; 4]>,
    invalid: Vec<bool>,
}

impl PrimeEncodedText {
    pub fn residues(&self) -> &[[u64; 4]] {
        &self.residues
    }

    /// `position` is 1-based.
    pub fn is_invalid(&self, position: usize) -> bool {
        self.invalid[position - 1]
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }
}

pub fn encode_text_prime(raw: &[u8], code: &PrimeAlphabetCode) -> PrimeEncodedText {
    let per_base: [[u64; 4]; 4] = std::array::from_fn(|i| code.text_residues(i));
    let mut residues = Vec::with_capacity(raw.len());
    let mut invalid = Vec::with_capacity(raw.len());
    for &b in raw {
        match base_index(b) {
            Some(i) => {
                residues.push(per_base[i]);
                invalid.push(false);
            }
            None => {
                residues.push([0; 4]);
                invalid.push(true);
            }
        }
    }
    PrimeEncodedText {
        code: *code,
        residues,
        invalid,
    }
}

/// Residues of `n_S`: 0 modulo the primes of member bases, 1 otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassResidues(pub [u64; 4]);

impl ClassResidues {
    /// The unique `n_S` in `[0, M)` with these residues.
    pub fn reconstruct(&self, code: &PrimeAlphabetCode) -> u128 {
        crt_reconstruct(&self.0, &code.primes)
    }
}

/// Encodes a class given as base letters (case-insensitive, duplicates allowed).
/// The residue vector is the same for every choice of primes.
pub fn encode_class_crt(bases: &[u8]) -> Result<ClassResidues, PrimeError> {
    let mut residues = [1u64; 4];
    for &b in bases {
        let i = base_index(b).ok_or(PrimeError::BadBase(b as char))?;
        residues[i] = 0;
    }
    Ok(ClassResidues(residues))
}

fn mod_inverse(a: u128, modulus: u128) -> u128 {
    let (mut old_r, mut r) = (a as i128, modulus as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "moduli must be coprime");
    old_s.rem_euclid(modulus as i128) as u128
}

/// Chinese remainder reconstruction for pairwise coprime moduli.
pub fn crt_reconstruct(residues: &[u64], moduli: &[u64]) -> u128 {
    assert_eq!(residues.len(), moduli.len());
    let modulus: u128 = moduli.iter().map(|&k| u128::from(k)).product();
    let mut acc = 0u128;
    for (&res, &k) in residues.iter().zip(moduli) {
        let k = u128::from(k);
        let partial = modulus / k;
        let term = u128::from(res) % k * mod_inverse(partial % k, k) % k;
        acc = (acc + term * partial) % modulus;
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEncodedPattern {
    code: PrimeAlphabetCode,
    classes: Vec<ClassResidues>,
}

impl PrimeEncodedPattern {
    pub fn classes(&self) -> &[ClassResidues] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn encode_pattern_prime(pattern: &ClassPattern, code: &PrimeAlphabetCode) -> PrimeEncodedPattern {
    let classes = pattern
        .classes()
        .iter()
        .map(|c| encode_class_crt(c).expect("ClassPattern holds only ACGT"))
        .collect();
    PrimeEncodedPattern { code: *code, classes }
}

/// 1-based window starts whose aligned correlation vanishes modulo every
/// prime (equivalently modulo `M`). Windows containing non-base text are
/// never reported.
pub fn correlate_exact(
    text: &PrimeEncodedText,
    pattern: &PrimeEncodedPattern,
) -> Result<Vec<usize>, PrimeError> {
    let m = pattern.len();
    if m > MAX_PATTERN_LEN {
        return Err(PrimeError::PatternTooLong { len: m, max: MAX_PATTERN_LEN });
    }
    if text.code != pattern.code {
        return Err(PrimeError::CodeMismatch);
    }
    let smallest = pattern.code.primes[0];
    if m as u64 >= smallest {
        return Err(PrimeError::PrimeTooSmall { len: m, prime: smallest });
    }
    let n = text.len();
    if m > n {
        return Ok(Vec::new());
    }
    let mut bad_prefix = vec![0usize; n + 1];
    for (i, &bad) in text.invalid.iter().enumerate() {
        bad_prefix[i + 1] = bad_prefix[i] + usize::from(bad);
    }
    let primes = pattern.code.primes;
    let mut hits = Vec::new();
    for start in 0..=n - m {
        if bad_prefix[start + m] != bad_prefix[start] {
            continue;
        }
        let mut sums = [0u64; 4];
        for (class, t) in pattern.classes.iter().zip(&text.residues[start..start + m]) {
            for r in 0..4 {
                sums[r] = (sums[r] + class.0[r] * t[r]) % primes[r];
            }
        }
        if sums.iter().all(|&s| s == 0) {
            hits.push(start + 1);
        }
    }
    Ok(hits)
}

/// Sizes of the full integers used by the prime encoding for a given
/// pattern length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnitudeReport {
    pub code: PrimeAlphabetCode,
    pub max_text_value: u128,
    pub max_class_value: u128,
    /// Largest `e_i · n_S` over all bases and all 16 classes.
    pub max_product: u128,
}

pub fn magnitude_report(m: usize) -> MagnitudeReport {
    let code = select_primes(m);
    let text_values: Vec<u128> = (0..4).map(|i| code.text_value(i)).collect();
    let mut max_class_value = 0;
    let mut max_product = 0;
    for mask in 0u8..16 {
        let residues = std::array::from_fn(|i| u64::from(mask >> i & 1 == 0));
        let n_s = ClassResidues(residues).reconstruct(&code);
        max_class_value = max_class_value.max(n_s);
        for &e in &text_values {
            let product = e.checked_mul(n_s).expect("fits in 128 bits");
            max_product = max_product.max(product);
        }
    }
    MagnitudeReport {
        code,
        max_text_value: text_values.into_iter().max().unwrap_or(0),
        max_class_value,
        max_product,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::naive_search;
    use proptest::prelude::*;

    #[test]
    fn prime_selection() {
        assert_eq!(select_primes(1000).primes, [1009, 1013, 1019, 1021]);
        let c = select_primes(1);
        assert_eq!((c.primes, c.modulus), ([2, 3, 5, 7], 210));
        let c = select_primes(5);
        assert_eq!((c.primes, c.modulus), ([7, 11, 13, 17], 17017));
        assert_eq!(select_primes(10_000).primes, [10007, 10009, 10037, 10039]);
    }

    #[test]
    fn text_value_for_a() {
        let code = select_primes(5);
        assert_eq!(code.text_value(0), 2431);
        assert_eq!(code.text_residues(0), [2, 0, 0, 0]);
        let t = encode_text_prime(b"AN", &code);
        assert_eq!(t.residues()[0], [2, 0, 0, 0]);
        assert!(t.is_invalid(2));
        assert!(!t.is_invalid(1));
    }

    #[test]
    fn residue_identity() {
        for m in [1, 5, 20, 1000] {
            let code = select_primes(m);
            for i in 0..4 {
                let res = code.text_residues(i);
                for (r, &v) in res.iter().enumerate() {
                    assert_eq!(v == 0, r != i, "m={m} base={i} prime={r}");
                }
            }
        }
    }

    #[test]
    fn class_reconstruction() {
        let code = select_primes(5);
        assert_eq!(encode_class_crt(b"ACGT").unwrap().reconstruct(&code), 0);
        assert_eq!(encode_class_crt(b"").unwrap().reconstruct(&code), 1);
        let a = encode_class_crt(b"A").unwrap();
        assert_eq!(a.0, [0, 1, 1, 1]);
        let n_s = a.reconstruct(&code);
        assert_eq!(n_s, 7294);
        assert_eq!(n_s % 7, 0);
        assert_eq!((n_s % 11, n_s % 13, n_s % 17), (1, 1, 1));
        assert_eq!(encode_class_crt(b"X"), Err(PrimeError::BadBase('X')));
    }

    #[test]
    fn crt_round_trip_all_classes() {
        for m in [1, 5, 50, 1000] {
            let code = select_primes(m);
            for mask in 0u8..16 {
                let residues: [u64; 4] = std::array::from_fn(|i| u64::from(mask >> i & 1 == 0));
                let n_s = ClassResidues(residues).reconstruct(&code);
                assert!(n_s < code.modulus);
                for (&p, &r) in code.primes.iter().zip(&residues) {
                    assert_eq!((n_s % u128::from(p)) as u64, r);
                }
            }
        }
    }

    #[test]
    fn per_term_annihilation() {
        let code = select_primes(5);
        for mask in 0u8..16 {
            let bases: Vec<u8> = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| BASES[i]).collect();
            let n_s = encode_class_crt(&bases).unwrap().reconstruct(&code);
            for (i, base) in BASES.iter().enumerate() {
                let vanishes = (code.text_value(i) * n_s).is_multiple_of(code.modulus);
                assert_eq!(vanishes, bases.contains(base));
            }
        }
    }

    #[test]
    fn worked_example_exact_match() {
        let pattern = ClassPattern::parse("C[CGT]GG[CG]").unwrap();
        let code = select_primes(pattern.len());
        assert_eq!(code.primes, [7, 11, 13, 17]);
        let t = encode_text_prime(b"ATGACCGGCAT", &code);
        let p = encode_pattern_prime(&pattern, &code);
        assert_eq!(correlate_exact(&t, &p).unwrap(), [5]);
    }

    #[test]
    fn all_n_pattern_matches_everywhere() {
        let pattern = ClassPattern::parse("NNNN").unwrap();
        let code = select_primes(4);
        let t = encode_text_prime(b"ACGTTGCA", &code);
        let p = encode_pattern_prime(&pattern, &code);
        assert_eq!(correlate_exact(&t, &p).unwrap(), [1, 2, 3, 4, 5]);
        let t = encode_text_prime(b"ACGNTGCA", &code);
        assert_eq!(correlate_exact(&t, &p).unwrap(), [5]);
    }

    #[test]
    fn correlate_errors() {
        let long = ClassPattern::new(vec![b"A".to_vec(); MAX_PATTERN_LEN + 1]).unwrap();
        let code = select_primes(long.len());
        let t = encode_text_prime(b"A", &code);
        let p = encode_pattern_prime(&long, &code);
        assert!(matches!(correlate_exact(&t, &p), Err(PrimeError::PatternTooLong { .. })));

        let short = ClassPattern::parse("ACGTACGT").unwrap();
        let small_code = select_primes(2);
        let t = encode_text_prime(b"ACGTACGT", &small_code);
        let p = encode_pattern_prime(&short, &small_code);
        assert!(matches!(correlate_exact(&t, &p), Err(PrimeError::PrimeTooSmall { .. })));

        let p = encode_pattern_prime(&short, &select_primes(8));
        assert_eq!(correlate_exact(&t, &p), Err(PrimeError::CodeMismatch));
    }

    #[test]
    fn magnitudes_for_long_pattern() {
        let report = magnitude_report(1000);
        assert_eq!(report.code.modulus, 1_063_409_504_683);
        assert!(report.code.modulus > 1_000_000_000_000);
        assert_eq!(report.max_product, 1_065_886_247_097_157_978_614);
        assert!(report.max_product > 10u128.pow(21));
        assert!(report.max_product > u128::from(u64::MAX));
    }

    proptest! {
        #[test]
        fn agrees_with_naive_exact(
            text in "[ACGT]{0,120}",
            spec in "[ACGTMRWSYKVHDBN-]{1,12}",
        ) {
            let pattern = ClassPattern::parse(&spec).unwrap();
            let code = select_primes(pattern.len());
            let t = encode_text_prime(text.as_bytes(), &code);
            let p = encode_pattern_prime(&pattern, &code);
            let expected: Vec<usize> = naive_search(text.as_bytes(), &pattern, 0)
                .into_iter()
                .map(|h| h.position)
                .collect();
            prop_assert_eq!(correlate_exact(&t, &p).unwrap(), expected);
        }
    }
}
