//! Maximal repetitions ("runs") of a finite word.
//!
//! A run is a maximal segment `w[start..end)` with smallest period `p` and
//! `end - start >= 2p`. Every run has a Lyndon root (for one of the two
//! letter orders) that is the longest Lyndon word starting at its position,
//! so the candidates are read off the two Lyndon arrays and each one is
//! extended letter by letter.

use alloc::vec;
use alloc::vec::Vec;

use crate::exponent::RationalExponent;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Run {
    pub start: usize,
    pub end: usize,
    pub period: usize,
}

impl Run {
    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end == self.start
    }

    pub fn exponent(&self) -> RationalExponent {
        RationalExponent::of_repetition(self.len(), self.period)
    }
}

/// `lyndon[i]` is the length of the longest Lyndon word starting at `i`
/// under the order given by `less`.
pub fn lyndon_array<T, F>(word: &[T], less: F) -> Vec<usize>
where
    T: Eq,
    F: Fn(&T, &T) -> bool,
{
    let n = word.len();
    let mut lyndon = vec![0usize; n];
    if n == 0 {
        return lyndon;
    }
    lyndon[n - 1] = 1;
    for i in (0..n - 1).rev() {
        let mut j = i + 1;
        // jump along the next-smaller-suffix chain
        while j < n && suffix_less(word, i, j, &less) {
            j += lyndon[j];
        }
        lyndon[i] = j - i;
    }
    lyndon
}

/// Suffix `i` < suffix `j` for `i < j`, a proper prefix being smaller.
fn suffix_less<T, F>(word: &[T], i: usize, j: usize, less: &F) -> bool
where
    T: Eq,
    F: Fn(&T, &T) -> bool,
{
    let n = word.len();
    let lce = common_prefix(word, i, j);
    if j + lce == n {
        return false;
    }
    less(&word[i + lce], &word[j + lce])
}

#[inline]
fn common_prefix<T: Eq>(word: &[T], i: usize, j: usize) -> usize {
    word[i..]
        .iter()
        .zip(&word[j..])
        .take_while(|(a, b)| a == b)
        .count()
}

#[inline]
fn common_suffix<T: Eq>(word: &[T], i: usize, j: usize) -> usize {
    // letters strictly before i and j
    word[..i]
        .iter()
        .rev()
        .zip(word[..j].iter().rev())
        .take_while(|(a, b)| a == b)
        .count()
}

/// Calls `visit` once for every run of `word`, in order of discovery
/// (non-decreasing Lyndon-root position; not sorted by start).
pub fn for_each_run<T, V>(word: &[T], mut visit: V)
where
    T: Ord,
    V: FnMut(Run),
{
    let n = word.len();
    if n < 2 {
        return;
    }
    let forward = lyndon_array(word, |a: &T, b: &T| a < b);
    let backward = lyndon_array(word, |a: &T, b: &T| a > b);
    let mut covered_until = vec![0usize; n / 2 + 1];

    for i in 0..n {
        let a = forward[i];
        let b = backward[i];
        let candidates = if a == b { [a, 0] } else { [a, b] };
        for p in candidates {
            if p == 0 || p > n / 2 {
                continue;
            }
            if i + p <= covered_until[p] {
                continue;
            }
            let right = common_prefix(word, i, i + p);
            let left = common_suffix(word, i, i + p);
            let len = left + p + right;
            if len >= 2 * p {
                let run = Run {
                    start: i - left,
                    end: i + p + right,
                    period: p,
                };
                covered_until[p] = run.end;
                visit(run);
            }
        }
    }
}

/// All runs, sorted by `(start, end, period)`.
pub fn runs<T: Ord>(word: &[T]) -> Vec<Run> {
    let mut out = Vec::new();
    for_each_run(word, |r| out.push(r));
    out.sort_unstable();
    out
}

/// Reference enumeration: for every period, scan the match streaks
/// `w[j] == w[j + p]` and keep those of primitive period with length `>= 2p`.
pub fn runs_naive<T: Eq>(word: &[T]) -> Vec<Run> {
    let n = word.len();
    let mut out = Vec::new();
    for p in 1..=n / 2 {
        let mut j = 0;
        while j + p < n {
            if word[j] != word[j + p] {
                j += 1;
                continue;
            }
            let s = j;
            while j + p < n && word[j] == word[j + p] {
                j += 1;
            }
            let run = Run {
                start: s,
                end: j + p,
                period: p,
            };
            if run.len() >= 2 * p && smallest_period(&word[run.start..run.end]) == p {
                out.push(run);
            }
        }
    }
    out.sort_unstable();
    out
}

fn smallest_period<T: Eq>(w: &[T]) -> usize {
    (1..=w.len())
        .find(|&p| (p..w.len()).all(|k| w[k] == w[k - p]))
        .unwrap_or(w.len())
}
