//! Letters, the cyclic permutation `σ`, and the two constructions of a
//! generalized Thue-Morse word: iterating the morphism from the start letter,
//! and reading letters off the base-`b` digit sum of the position.

use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Sum of the base-`b` digits of `n`.
pub fn digit_sum(n: u64, b: u64) -> Result<u64> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    Ok(digit_sum_unchecked(n, b))
}

#[inline]
pub(crate) fn digit_sum_unchecked(mut n: u64, b: u64) -> u64 {
    let mut sum = 0;
    while n > 0 {
        sum += n % b;
        n /= b;
    }
    sum
}

/// A letter of `Σ_m`, stored as its residue in `0..m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[repr(transparent)]
pub struct Letter(u32);

impl Letter {
    pub const fn new(value: u32) -> Self {
        Letter(value)
    }

    pub const fn value(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The canonical `m`-cycle `i -> i + 1 (mod m)`.
///
/// Any other cyclic permutation is conjugate to this one by a renaming of
/// the alphabet, so the renaming is left to the presentation layer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CyclicPermutation {
    size: u32,
}

impl CyclicPermutation {
    pub fn new(size: u32) -> Result<Self> {
        if size == 0 {
            return Err(Error::EmptyAlphabet);
        }
        Ok(CyclicPermutation { size })
    }

    pub fn size(&self) -> u32 {
        self.size
    }

    pub fn apply(&self, letter: Letter) -> Letter {
        self.pow(letter, 1)
    }

    /// `σ^k(letter)`.
    pub fn pow(&self, letter: Letter, k: u64) -> Letter {
        let m = u64::from(self.size);
        let v = (u64::from(letter.0) % m + k % m) % m;
        Letter(v as u32)
    }
}

/// The parameters `(b, m, ᾱ)` of one word of the family, with `σ` canonical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TMParams {
    base: u64,
    sigma: CyclicPermutation,
    start: Letter,
}

impl TMParams {
    pub fn new(base: u64, alphabet: u32, start: u32) -> Result<Self> {
        if base < 2 {
            return Err(Error::InvalidBase(base));
        }
        let sigma = CyclicPermutation::new(alphabet)?;
        if start >= alphabet {
            return Err(Error::LetterOutOfRange {
                letter: start,
                alphabet,
            });
        }
        Ok(TMParams {
            base,
            sigma,
            start: Letter(start),
        })
    }

    /// The block length `b`.
    pub fn base(&self) -> u64 {
        self.base
    }

    /// The alphabet size `m`.
    pub fn alphabet(&self) -> u32 {
        self.sigma.size
    }

    pub fn start(&self) -> Letter {
        self.start
    }

    pub fn sigma(&self) -> CyclicPermutation {
        self.sigma
    }

    pub fn letter_at(&self, n: u64) -> Letter {
        self.sigma.pow(self.start, digit_sum_unchecked(n, self.base))
    }

    /// The block `μ(letter) = letter σ(letter) .. σ^{b-1}(letter)`.
    pub fn image(&self, letter: Letter) -> impl Iterator<Item = Letter> + '_ {
        let sigma = self.sigma;
        (0..self.base).map(move |i| sigma.pow(letter, i))
    }

    pub fn apply_morphism(&self, word: &FiniteWord) -> FiniteWord {
        let mut out = Vec::with_capacity(word.len().saturating_mul(self.base as usize));
        for &a in word.as_slice() {
            out.extend(self.image(a));
        }
        FiniteWord(out)
    }

    /// Length-`n` prefix of `μ^ω(ᾱ)`, built by iterating the morphism.
    pub fn prefix_by_morphism(&self, n: usize) -> FiniteWord {
        if n == 0 {
            return FiniteWord::default();
        }
        let b = self.base as usize;
        let needed = n.div_ceil(b);
        let mut current = FiniteWord(alloc::vec![self.start]);
        while current.len() < n {
            current.0.truncate(needed.max(1));
            current = self.apply_morphism(&current);
        }
        current.0.truncate(n);
        current
    }

    /// Block `k`, i.e. the letters at positions `[kb, (k+1)b)`.
    pub fn block(&self, k: u64) -> Result<FiniteWord> {
        let first = k
            .checked_mul(self.base)
            .and_then(|p| p.checked_add(self.base - 1))
            .ok_or(Error::Overflow("block position"))?;
        let head = self.letter_at(first - (self.base - 1));
        Ok(FiniteWord(self.image(head).collect()))
    }

    /// `true` iff `m | b - 1`, the case where the word is periodic.
    pub fn is_periodic(&self) -> bool {
        (self.base - 1).is_multiple_of(u64::from(self.alphabet()))
    }

    /// The period word `ᾱ σ(ᾱ) .. σ^{m-1}(ᾱ)` when the word is periodic.
    pub fn period_word(&self) -> Option<FiniteWord> {
        self.is_periodic().then(|| {
            FiniteWord(
                (0..u64::from(self.alphabet()))
                    .map(|i| self.sigma.pow(self.start, i))
                    .collect(),
            )
        })
    }

    /// Aperiodic with `b > m`: the critical powers are overlaps.
    pub fn is_overlap_case(&self) -> bool {
        !self.is_periodic() && self.base > u64::from(self.alphabet())
    }

    /// Aperiodic with `b <= m`: the critical powers are squares.
    pub fn is_square_case(&self) -> bool {
        !self.is_periodic() && self.base <= u64::from(self.alphabet())
    }
}

/// A finite word over `Σ_m`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FiniteWord(Vec<Letter>);

impl FiniteWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FiniteWord(letters)
    }

    pub fn from_values(values: &[u32]) -> Self {
        FiniteWord(values.iter().copied().map(Letter).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Letter] {
        &self.0
    }

    pub fn values(&self) -> Vec<u32> {
        self.0.iter().map(|l| l.0).collect()
    }

    pub fn into_inner(self) -> Vec<Letter> {
        self.0
    }

    /// Every letter is `σ` of the previous one.
    pub fn is_sigma_cyclic(&self, sigma: &CyclicPermutation) -> bool {
        is_sigma_cyclic(&self.0, sigma)
    }
}

pub fn is_sigma_cyclic(letters: &[Letter], sigma: &CyclicPermutation) -> bool {
    letters.windows(2).all(|w| sigma.apply(w[0]) == w[1])
}

impl From<Vec<Letter>> for FiniteWord {
    fn from(v: Vec<Letter>) -> Self {
        FiniteWord(v)
    }
}

impl core::ops::Deref for FiniteWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

/// Residues are written as digits when they all fit, otherwise dot-separated.
impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = self.0.iter().all(|l| l.0 < 10);
        for (i, l) in self.0.iter().enumerate() {
            if !digits && i > 0 {
                f.write_str(".")?;
            }
            write!(f, "{}", l.0)?;
        }
        Ok(())
    }
}

/// The infinite word `t`, addressed by position.
///
/// No state beyond the parameters is kept, so letters are a pure function
/// of the position and the value can be shared freely across threads.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LazyWord {
    params: TMParams,
}

impl LazyWord {
    pub fn new(params: TMParams) -> Self {
        LazyWord { params }
    }

    pub fn params(&self) -> &TMParams {
        &self.params
    }

    pub fn letter(&self, n: u64) -> Letter {
        self.params.letter_at(n)
    }

    /// The letters at positions `[0, len)`, using an incremental digit-sum
    /// counter.
    pub fn prefix(&self, len: usize) -> FiniteWord {
        self.segment(0, len)
    }

    /// The letters at positions `[from, from + len)`.
    pub fn segment(&self, from: u64, len: usize) -> FiniteWord {
        let b = self.params.base;
        let sigma = self.params.sigma;
        let start = self.params.start;

        let mut digits = Vec::new();
        let mut rest = from;
        while rest > 0 {
            digits.push(rest % b);
            rest /= b;
        }
        let mut sum: u64 = digits.iter().sum();

        let mut out = Vec::with_capacity(len);
        for _ in 0..len {
            out.push(sigma.pow(start, sum));
            // odometer increment
            let mut i = 0;
            loop {
                if i == digits.len() {
                    digits.push(1);
                    sum += 1;
                    break;
                }
                if digits[i] + 1 < b {
                    digits[i] += 1;
                    sum += 1;
                    break;
                }
                sum -= digits[i];
                digits[i] = 0;
                i += 1;
            }
        }
        FiniteWord(out)
    }
}

impl From<TMParams> for LazyWord {
    fn from(params: TMParams) -> Self {
        LazyWord::new(params)
    }
}
