//! Rational powers, factor indices and the critical exponent.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::runs;
use crate::word::{FiniteWord, LazyWord, Letter, TMParams};

/// `w^r`: `⌊r⌋` copies of `w` followed by the prefix of `w` of length
/// `(r - ⌊r⌋)|w|`.
pub fn rational_power(w: &FiniteWord, r: RationalExponent) -> Result<FiniteWord> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let total = r.length_for(w.len())?;
    Ok(FiniteWord::new(
        w.iter().copied().cycle().take(total).collect(),
    ))
}

/// The largest power of a factor found inside a finite prefix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexResult {
    pub factor: FiniteWord,
    pub exponent: RationalExponent,
    pub witness_position: usize,
    pub horizon: usize,
    /// The best power runs into the end of the prefix, so a longer horizon
    /// may show a larger exponent.
    pub truncated: bool,
}

/// Largest `e` such that `w^e` lies entirely in the first `horizon`
/// letters, with the leftmost position realizing it.
pub fn index_of_factor(word: &LazyWord, w: &FiniteWord, horizon: usize) -> Result<IndexResult> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let prefix = word.prefix(horizon);
    index_in(prefix.as_slice(), w)
}

/// [`index_of_factor`] over an explicit finite word.
pub fn index_in(text: &[Letter], w: &FiniteWord) -> Result<IndexResult> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let len = w.len();
    let horizon = text.len();
    let mut best: Option<(usize, usize)> = None;
    if len <= horizon {
        for i in 0..=horizon - len {
            if text[i..i + len] != *w.as_slice() {
                continue;
            }
            let ext = text[i + len..]
                .iter()
                .zip(&text[i..])
                .take_while(|(a, b)| a == b)
                .count();
            if best.is_none_or(|(_, e)| ext > e) {
                best = Some((i, ext));
            }
        }
    }
    let (pos, ext) = best.ok_or(Error::FactorNotFound { horizon })?;
    Ok(IndexResult {
        factor: w.clone(),
        exponent: RationalExponent::of_repetition(len + ext, len),
        witness_position: pos,
        horizon,
        truncated: pos + len + ext == horizon,
    })
}

/// Closed-form critical exponent: infinite when `m | b - 1`, `2b/m` when
/// `b > m`, and `2` otherwise.
pub fn critical_exponent_closed_form(params: &TMParams) -> RationalExponent {
    let b = params.base();
    let m = u64::from(params.alphabet());
    if params.is_periodic() {
        RationalExponent::Infinite
    } else if b > m {
        RationalExponent::Finite(num_rational::Ratio::new(2 * b, m))
    } else {
        RationalExponent::integer(2)
    }
}

/// Result of scanning a prefix for its most repetitive factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalExponentReport {
    pub closed_form: RationalExponent,
    pub empirical_max: RationalExponent,
    /// Shortest factor `w` with `w^empirical_max` in the prefix.
    pub critical_factor: FiniteWord,
    /// Leftmost occurrence of `critical_factor^empirical_max`.
    pub witness_position: usize,
    /// Every start position of a power of exponent `empirical_max` with
    /// period `|critical_factor|`, ascending.
    pub witnesses: Vec<usize>,
    /// Start positions of powers of exponent `empirical_max` with a longer
    /// period, as `(period, position)` pairs in ascending order.
    pub longer_witnesses: Vec<(usize, usize)>,
    pub horizon: usize,
    pub truncated: bool,
}

impl CriticalExponentReport {
    /// The scan reached the closed-form value.
    pub fn agrees(&self) -> bool {
        self.empirical_max == self.closed_form
    }
}

#[derive(Debug, Clone, Copy)]
struct Repetition {
    start: usize,
    len: usize,
    period: usize,
}

#[derive(Debug, Default)]
struct Best {
    top: Option<Repetition>,
    // (period, start) of every repetition tied with `top`
    ties: Vec<(usize, usize)>,
}

impl Best {
    fn offer(&mut self, r: Repetition) {
        let Some(top) = self.top else {
            self.top = Some(r);
            self.ties.push((r.period, r.start));
            return;
        };
        // compare r.len / r.period against top.len / top.period
        let lhs = r.len as u128 * top.period as u128;
        let rhs = top.len as u128 * r.period as u128;
        if lhs > rhs {
            self.top = Some(r);
            self.ties.clear();
            self.ties.push((r.period, r.start));
        } else if lhs == rhs {
            self.ties.push((r.period, r.start));
            if (r.period, r.start) < (top.period, top.start) {
                self.top = Some(r);
            }
        }
    }

    fn into_report(mut self, params: &TMParams, text: &[Letter]) -> CriticalExponentReport {
        let top = self.top.unwrap_or(Repetition {
            start: 0,
            len: text.len(),
            period: text.len().max(1),
        });
        self.ties.sort_unstable();
        self.ties.dedup();
        let (same, longer): (Vec<_>, Vec<_>) =
            self.ties.into_iter().partition(|&(p, _)| p == top.period);
        let mut witnesses: Vec<usize> = same.into_iter().map(|(_, s)| s).collect();
        if witnesses.is_empty() {
            witnesses.push(top.start);
        }
        CriticalExponentReport {
            closed_form: critical_exponent_closed_form(params),
            empirical_max: RationalExponent::of_repetition(top.len, top.period),
            critical_factor: FiniteWord::new(text[top.start..top.start + top.period].to_vec()),
            witness_position: top.start,
            witnesses,
            longer_witnesses: longer,
            horizon: text.len(),
            truncated: top.start + top.len == text.len(),
        }
    }
}

/// Largest exponent `e > 1` of a power inside the first `horizon` letters.
///
/// Runs are enumerated from the Lyndon arrays; prefixes without any square
/// fall back to [`max_exponent_naive`]. Ties go to the smallest period,
/// then the leftmost position. A prefix with no repetition at all reports
/// exponent 1 for the whole prefix.
pub fn max_exponent_in_prefix(word: &LazyWord, horizon: usize) -> Result<CriticalExponentReport> {
    if horizon < 2 {
        return Err(Error::Precondition("horizon must be at least 2"));
    }
    let prefix = word.prefix(horizon);
    let text = prefix.as_slice();
    let mut best = Best::default();
    runs::for_each_run(text, |r| {
        best.offer(Repetition {
            start: r.start,
            len: r.len(),
            period: r.period,
        })
    });
    if best.top.is_none() {
        return Ok(naive_scan(word.params(), text));
    }
    Ok(best.into_report(word.params(), text))
}

/// Reference scan: for every period `p` and every start, extend while
/// `w[j] == w[j + p]`. Quadratic in `horizon`.
pub fn max_exponent_naive(word: &LazyWord, horizon: usize) -> Result<CriticalExponentReport> {
    if horizon < 2 {
        return Err(Error::Precondition("horizon must be at least 2"));
    }
    let prefix = word.prefix(horizon);
    Ok(naive_scan(word.params(), prefix.as_slice()))
}

fn naive_scan(params: &TMParams, text: &[Letter]) -> CriticalExponentReport {
    let n = text.len();
    let mut best = Best::default();
    for p in 1..n {
        let mut j = 0;
        while j + p < n {
            if text[j] != text[j + p] {
                j += 1;
                continue;
            }
            let s = j;
            while j + p < n && text[j] == text[j + p] {
                j += 1;
            }
            best.offer(Repetition {
                start: s,
                len: j - s + p,
                period: p,
            });
        }
    }
    best.into_report(params, text)
}

/// An occurrence of `a u a u a`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Overlap {
    pub position: usize,
    /// `|au|`
    pub period: usize,
    pub factor: FiniteWord,
}

/// Leftmost overlap in the first `horizon` letters (shortest at that
/// position), or `None` when the prefix is overlap-free.
pub fn find_overlap(word: &LazyWord, horizon: usize) -> Result<Option<Overlap>> {
    if horizon < 3 {
        return Err(Error::Precondition("horizon must be at least 3"));
    }
    let prefix = word.prefix(horizon);
    Ok(find_overlap_in(prefix.as_slice()))
}

pub fn find_overlap_in(text: &[Letter]) -> Option<Overlap> {
    let n = text.len();
    for i in 0..n {
        let mut p = 1;
        while i + 2 * p < n {
            if (0..=p).all(|k| text[i + k] == text[i + p + k]) {
                return Some(Overlap {
                    position: i,
                    period: p,
                    factor: FiniteWord::new(text[i..=i + 2 * p].to_vec()),
                });
            }
            p += 1;
        }
    }
    None
}

/// Positions `p` with `w[p..p+ℓ) = w[p+ℓ..p+2ℓ)` and `p + 2ℓ <= horizon`.
pub fn find_squares(word: &LazyWord, horizon: usize, len: usize) -> Result<Vec<usize>> {
    if len == 0 {
        return Err(Error::Precondition("square half-length must be at least 1"));
    }
    let prefix = word.prefix(horizon);
    Ok(squares_in(prefix.as_slice(), len))
}

pub fn squares_in(text: &[Letter], len: usize) -> Vec<usize> {
    let n = text.len();
    let mut out = Vec::new();
    if 2 * len > n {
        return out;
    }
    // streak of consecutive matches text[j] == text[j + len] ending at j
    let mut streak = 0usize;
    for j in 0..n - len {
        if text[j] == text[j + len] {
            streak += 1;
        } else {
            streak = 0;
        }
        if streak >= len {
            out.push(j + 1 - len);
        }
    }
    out
}
