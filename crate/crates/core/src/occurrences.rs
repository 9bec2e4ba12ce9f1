//! Where the critical powers of an aperiodic word occur.
//!
//! With `S^g_{x,y} = { s >= 1 : g = s·x + t·y for some integer t }`:
//!
//! * overlap case (`b > m`): `A = { k·b^q - b : b ∤ k, q ∈ S^m_{b-1,m} }`,
//! * square case (`b <= m`): `B_N = { k·b^q - N : b ∤ k, q ∈ S^N_{b-1,m} }`,
//! * Thue-Morse (`b = m = 2`) squares of length 6: `C = (8·B_1 + 3) ∪ (8·B_1 + 7)`.
//!
//! Critical factors of length `N·b^i` (`b ∤ N`) occur exactly at `b^i` times
//! the matching set. Every enumeration here is bounded by position and is
//! complete strictly below the bound.

use alloc::boxed::Box;
use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::exponent::RationalExponent;
use crate::repetition::critical_exponent_closed_form;
use crate::word::{digit_sum_unchecked, LazyWord, TMParams};

/// `S^g_{x,y}`: an arithmetic progression `first, first + step, ..` of
/// positive integers, or empty when `gcd(x, y) ∤ g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BezoutSet {
    first: Option<u64>,
    step: u64,
}

impl BezoutSet {
    pub fn new(g: u64, x: u64, y: u64) -> Result<Self> {
        if g == 0 || x == 0 || y == 0 {
            return Err(Error::Precondition("g, x and y must be positive"));
        }
        let d = x.gcd(&y);
        let step = y / d;
        if !g.is_multiple_of(d) {
            return Ok(BezoutSet { first: None, step });
        }
        // s·(x/d) ≡ g/d (mod y/d)
        let (x, g) = (i128::from(x / d), i128::from(g / d));
        let modulus = i128::from(step);
        let inv = x.extended_gcd(&modulus).x.rem_euclid(modulus);
        let s0 = (g.rem_euclid(modulus) * inv).rem_euclid(modulus) as u64;
        let first = if s0 == 0 { step } else { s0 };
        Ok(BezoutSet {
            first: Some(first),
            step,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.first.is_none()
    }

    pub fn first(&self) -> Option<u64> {
        self.first
    }

    pub fn step(&self) -> u64 {
        self.step
    }

    pub fn contains(&self, s: u64) -> bool {
        match self.first {
            Some(f) => s >= 1 && s % self.step == f % self.step,
            None => false,
        }
    }

    /// Members in increasing order; stops before `u64` overflow.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        let step = self.step;
        core::iter::successors(self.first, move |&s| s.checked_add(step))
    }

    /// Members `<= cap`.
    pub fn up_to(&self, cap: u64) -> Vec<u64> {
        self.iter().take_while(|&s| s <= cap).collect()
    }
}

/// All `s` in `1..=cap` with `g = s·x + t·y` solvable, or the empty list.
pub fn bezout_set(g: u64, x: u64, y: u64, cap: u64) -> Result<Vec<u64>> {
    Ok(BezoutSet::new(g, x, y)?.up_to(cap))
}

/// Which closed-form set an [`OccurrenceSet`] enumerates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OccurrenceKind {
    A,
    B(u64),
    C,
}

/// `b^scale` times one of the sets `A`, `B_N`, `C`, restricted to positions
/// `< bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OccurrenceSet {
    params: TMParams,
    kind: OccurrenceKind,
    scale: u32,
    bound: u64,
}

impl OccurrenceSet {
    pub fn kind(&self) -> OccurrenceKind {
        self.kind
    }

    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn params(&self) -> &TMParams {
        &self.params
    }

    /// Same set with a different scale exponent `i`.
    pub fn scaled(self, scale: u32) -> Self {
        OccurrenceSet { scale, ..self }
    }

    /// Length of the factor `w` whose critical powers the set locates.
    pub fn factor_length(&self) -> Option<u64> {
        let base = match self.kind {
            OccurrenceKind::A => u64::from(self.params.alphabet()),
            OccurrenceKind::B(n) => n,
            OccurrenceKind::C => 3,
        };
        self.params
            .base()
            .checked_pow(self.scale)
            .and_then(|f| f.checked_mul(base))
    }

    /// Ascending, duplicate-free positions below the bound, produced lazily.
    pub fn iter(&self) -> Box<dyn Iterator<Item = u64> + '_> {
        let b = self.params.base();
        let Some(factor) = b.checked_pow(self.scale) else {
            // every element is at least b^scale
            return Box::new(core::iter::empty());
        };
        // unscaled elements u with u·factor < bound
        let unscaled_bound = self.bound.div_ceil(factor);
        let m = u64::from(self.params.alphabet());
        let inner: Box<dyn Iterator<Item = u64>> = match self.kind {
            OccurrenceKind::A => Box::new(progression_merge(b, m, b, m, unscaled_bound)),
            OccurrenceKind::B(n) => Box::new(progression_merge(b, m, n, n, unscaled_bound)),
            OccurrenceKind::C => {
                let b1_bound = unscaled_bound.saturating_sub(3).div_ceil(8);
                Box::new(
                    progression_merge(2, 2, 1, 1, b1_bound)
                        .flat_map(|s| [8 * s + 3, 8 * s + 7])
                        .filter(move |&p| p < unscaled_bound),
                )
            }
        };
        Box::new(inner.map(move |u| u * factor))
    }

    pub fn positions(&self) -> Vec<u64> {
        self.iter().collect()
    }

    /// At most `limit` positions; `Err` if the set has more below the bound.
    pub fn positions_capped(&self, limit: usize) -> Result<Vec<u64>> {
        let out: Vec<u64> = self.iter().take(limit.saturating_add(1)).collect();
        if out.len() > limit {
            return Err(Error::Precondition("occurrence set exceeds the position limit"));
        }
        Ok(out)
    }
}

/// Merge of the streams `k·b^q - offset` (`b ∤ k`) over `q ∈ S^g_{b-1,m}`,
/// ascending and below `bound`.
fn progression_merge(b: u64, m: u64, offset: u64, g: u64, bound: u64) -> impl Iterator<Item = u64> {
    let mut heap: BinaryHeap<Reverse<(u64, u64, u64)>> = BinaryHeap::new();
    if let Ok(qs) = BezoutSet::new(g, b - 1, m) {
        for q in qs.iter() {
            let Ok(exp) = u32::try_from(q) else { break };
            let Some(power) = b.checked_pow(exp) else { break };
            // smallest element of this stream is power - offset (k = 1)
            match power.checked_sub(offset) {
                Some(p) if p < bound => heap.push(Reverse((p, 1, power))),
                Some(_) => break,
                None => continue,
            }
        }
    }
    let mut last = None;
    core::iter::from_fn(move || loop {
        let Reverse((pos, k, power)) = heap.pop()?;
        let mut next_k = k + 1;
        if next_k % b == 0 {
            next_k += 1;
        }
        if let Some(next) = next_k
            .checked_mul(power)
            .and_then(|v| v.checked_sub(offset))
            .filter(|&v| v < bound)
        {
            heap.push(Reverse((next, next_k, power)));
        }
        if last == Some(pos) {
            continue;
        }
        last = Some(pos);
        return Some(pos);
    })
}

fn require_aperiodic(params: &TMParams) -> Result<()> {
    if params.is_periodic() {
        return Err(Error::PeriodicParameters {
            b: params.base(),
            m: params.alphabet(),
        });
    }
    Ok(())
}

fn require_overlap_case(params: &TMParams) -> Result<()> {
    require_aperiodic(params)?;
    if !params.is_overlap_case() {
        return Err(Error::NotOverlapCase {
            b: params.base(),
            m: params.alphabet(),
        });
    }
    Ok(())
}

fn require_square_case(params: &TMParams) -> Result<()> {
    require_aperiodic(params)?;
    if !params.is_square_case() {
        return Err(Error::NotSquareCase {
            b: params.base(),
            m: params.alphabet(),
        });
    }
    Ok(())
}

/// The set `A` below `bound` (overlap case only).
pub fn set_a(params: &TMParams, bound: u64) -> Result<OccurrenceSet> {
    require_overlap_case(params)?;
    Ok(OccurrenceSet {
        params: *params,
        kind: OccurrenceKind::A,
        scale: 0,
        bound,
    })
}

/// The set `B_N` below `bound` (square case, `1 <= N < b`).
pub fn set_b(params: &TMParams, n: u64, bound: u64) -> Result<OccurrenceSet> {
    require_square_case(params)?;
    if n == 0 || n >= params.base() {
        return Err(Error::InadmissibleLength {
            length: n,
            reason: "B_N is defined for 1 <= N < b",
        });
    }
    Ok(OccurrenceSet {
        params: *params,
        kind: OccurrenceKind::B(n),
        scale: 0,
        bound,
    })
}

/// The set `C` of length-6 squares in the Thue-Morse word, below `bound`.
pub fn set_c(bound: u64) -> OccurrenceSet {
    OccurrenceSet {
        params: TMParams::new(2, 2, 0).expect("valid Thue-Morse parameters"),
        kind: OccurrenceKind::C,
        scale: 0,
        bound,
    }
}

/// Positions of `w^e` for critical factors `w` of length `N·b^scale`.
///
/// In the overlap case only `N = m` has critical factors. In the square
/// case `N` ranges over `1..b`, plus `N = 3` for Thue-Morse, whose length-3
/// critical squares are enumerated by `C` and its letter squares by `B_1`.
pub fn critical_occurrences(params: &TMParams, n: u64, scale: u32, bound: u64) -> Result<OccurrenceSet> {
    require_aperiodic(params)?;
    let b = params.base();
    let m = u64::from(params.alphabet());
    if n.is_multiple_of(b) {
        return Err(Error::InadmissibleLength {
            length: n,
            reason: "N must not be divisible by b",
        });
    }
    let set = if b > m {
        if n != m {
            return Err(Error::InadmissibleLength {
                length: n,
                reason: "in the overlap case critical factors have length m·b^i",
            });
        }
        set_a(params, bound)?
    } else if n < b {
        set_b(params, n, bound)?
    } else if b == 2 && m == 2 && n == 3 {
        OccurrenceSet {
            params: *params,
            ..set_c(bound)
        }
    } else {
        return Err(Error::InadmissibleLength {
            length: n,
            reason: "no critical factor of this length exists",
        });
    };
    Ok(set.scaled(scale))
}

/// The base lengths `N` (with `b ∤ N`) that have critical factors.
pub fn admissible_lengths(params: &TMParams) -> Result<Vec<u64>> {
    require_aperiodic(params)?;
    let b = params.base();
    let m = u64::from(params.alphabet());
    if b > m {
        return Ok(alloc::vec![m]);
    }
    let d = (b - 1).gcd(&m);
    let mut out: Vec<u64> = (1..b).filter(|n| n % d == 0).collect();
    if b == 2 && m == 2 {
        out.push(3);
    }
    Ok(out)
}

/// Checks `s_b(k·b^q - N) - s_b(k·b^q) = q(b-1) - N`.
pub fn digit_sum_identity_check(b: u64, k: u64, q: u32, n: u64) -> Result<bool> {
    if b < 2 {
        return Err(Error::InvalidBase(b));
    }
    if k == 0 || k.is_multiple_of(b) {
        return Err(Error::Precondition("k must be positive and not divisible by b"));
    }
    if n == 0 || n >= b {
        return Err(Error::Precondition("N must satisfy 1 <= N < b"));
    }
    if q == 0 {
        return Err(Error::Precondition("q must be positive"));
    }
    let x = b
        .checked_pow(q)
        .and_then(|p| p.checked_mul(k))
        .ok_or(Error::Overflow("k·b^q"))?;
    let lhs = i128::from(digit_sum_unchecked(x - n, b)) - i128::from(digit_sum_unchecked(x, b));
    let rhs = i128::from(q) * i128::from(b - 1) - i128::from(n);
    Ok(lhs == rhs)
}

/// Square case: whether a critical factor of length `len` (`b ∤ len`) exists.
pub fn critical_length_exists(params: &TMParams, len: u64) -> Result<bool> {
    require_square_case(params)?;
    let b = params.base();
    let m = u64::from(params.alphabet());
    if len == 0 || len.is_multiple_of(b) {
        return Err(Error::InadmissibleLength {
            length: len,
            reason: "length must be positive and not divisible by b",
        });
    }
    if len < b {
        Ok(len.is_multiple_of((b - 1).gcd(&m)))
    } else {
        Ok(b == 2 && m == 2 && len == 3)
    }
}

/// `b | i` and `b | i + len`.
pub fn is_synchronized(params: &TMParams, position: u64, len: u64) -> bool {
    let b = params.base();
    position.is_multiple_of(b) && position.checked_add(len).is_some_and(|e| e % b == 0)
}

/// A prefix length that contains a critical power of every admissible
/// length: the first critical occurrence plus one power length.
pub fn sufficient_horizon(params: &TMParams) -> Result<u64> {
    require_aperiodic(params)?;
    let e = critical_exponent_closed_form(params);
    let mut best: Option<u64> = None;
    for n in admissible_lengths(params)? {
        let set = critical_occurrences(params, n, 0, u64::MAX)?;
        let Some(first) = set.iter().next() else { continue };
        let len = e.length_for(n as usize)? as u64;
        let end = first.checked_add(len).ok_or(Error::Overflow("horizon"))?;
        best = Some(best.map_or(end, |b| b.min(end)));
    }
    best.ok_or(Error::Precondition("no critical factor found"))
}

/// Brute-force reference for the occurrence sets: positions `p < bound`
/// where the maximal repetition of period `period` starting at `p` has
/// exponent exactly `exponent` (so `p` is its left end).
pub fn scan_power_occurrences(
    word: &LazyWord,
    period: usize,
    exponent: RationalExponent,
    bound: usize,
) -> Result<Vec<u64>> {
    if period == 0 {
        return Err(Error::Precondition("period must be positive"));
    }
    let power_len = exponent.length_for(period)?;
    if power_len <= period {
        return Err(Error::Precondition("exponent must exceed 1"));
    }
    let want = power_len - period;
    let len = bound
        .checked_add(power_len + 1)
        .ok_or(Error::Overflow("scan length"))?;
    let text = word.prefix(len);
    let n = text.len();
    // streak[j]: number of consecutive j' >= j with text[j'] == text[j' + period]
    let mut streak = alloc::vec![0usize; n - period + 1];
    for j in (0..n - period).rev() {
        if text[j] == text[j + period] {
            streak[j] = streak[j + 1] + 1;
        }
    }
    Ok((0..bound)
        .filter(|&p| streak[p] == want && (p == 0 || text[p - 1] != text[p - 1 + period]))
        .map(|p| p as u64)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn params(b: u64, m: u32) -> TMParams {
        TMParams::new(b, m, 0).unwrap()
    }

    /// Membership straight from the definition.
    fn bezout_oracle(g: u64, x: u64, y: u64, cap: u64) -> Vec<u64> {
        (1..=cap)
            .filter(|&s| (i128::from(g) - i128::from(s) * i128::from(x)) % i128::from(y) == 0)
            .collect()
    }

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout_set(3, 4, 3, 15).unwrap(), vec![3, 6, 9, 12, 15]);
        assert_eq!(bezout_set(1, 1, 2, 9).unwrap(), vec![1, 3, 5, 7, 9]);
        assert!(bezout_set(1, 2, 4, 100).unwrap().is_empty());
        assert!(BezoutSet::new(0, 1, 1).is_err());
    }

    #[test]
    fn bezout_matches_definition() {
        for g in 1..12 {
            for x in 1..12 {
                for y in 1..12 {
                    assert_eq!(bezout_set(g, x, y, 60).unwrap(), bezout_oracle(g, x, y, 60));
                }
            }
        }
    }

    #[test]
    fn set_a_base5_alphabet3() {
        let a = set_a(&params(5, 3), 800).unwrap();
        assert_eq!(a.positions(), vec![120, 245, 370, 495, 745]);
        assert_eq!(a.iter().next(), Some(5u64.pow(3) - 5));
        assert!(matches!(set_a(&params(2, 2), 10), Err(Error::NotOverlapCase { .. })));
        assert!(matches!(set_a(&params(3, 2), 10), Err(Error::PeriodicParameters { .. })));
    }

    #[test]
    fn set_b_examples() {
        let b1 = set_b(&params(2, 2), 1, 8).unwrap();
        assert_eq!(b1.positions(), vec![1, 5, 7]);
        assert!(!set_b(&params(2, 3), 1, 1000).unwrap().positions().is_empty());
        assert!(!set_b(&params(3, 4), 2, 1000).unwrap().positions().is_empty());
        assert!(set_b(&params(3, 4), 1, 100_000).unwrap().positions().is_empty());
        assert!(matches!(set_b(&params(5, 3), 1, 10), Err(Error::NotSquareCase { .. })));
        assert!(matches!(set_b(&params(3, 4), 3, 10), Err(Error::InadmissibleLength { .. })));
    }

    #[test]
    fn set_c_examples() {
        assert_eq!(set_c(12).positions(), vec![11]);
        let c = set_c(10_000).positions();
        assert!(c.iter().all(|p| p % 8 == 3 || p % 8 == 7));
        assert!(c.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(&c[..2], &[11, 15]);
    }

    #[test]
    fn critical_occurrence_cases() {
        let p = params(5, 3);
        assert_eq!(
            critical_occurrences(&p, 3, 0, 800).unwrap().positions(),
            vec![120, 245, 370, 495, 745]
        );
        assert_eq!(
            critical_occurrences(&p, 3, 1, 4000).unwrap().positions(),
            vec![600, 1225, 1850, 2475, 3725]
        );
        assert!(critical_occurrences(&p, 2, 0, 800).is_err());
        assert!(critical_occurrences(&p, 5, 0, 800).is_err());
        assert!(critical_occurrences(&params(3, 2), 1, 0, 800).is_err());

        let tm = params(2, 2);
        assert_eq!(critical_occurrences(&tm, 3, 0, 12).unwrap().positions(), vec![11]);
        assert_eq!(critical_occurrences(&tm, 1, 0, 8).unwrap().positions(), vec![1, 5, 7]);
        assert_eq!(
            critical_occurrences(&tm, 1, 1, 24).unwrap().positions(),
            vec![2, 10, 14, 18]
        );
        assert!(critical_occurrences(&tm, 5, 0, 100).is_err());
        assert!(critical_occurrences(&params(2, 3), 3, 0, 100).is_err());
    }

    #[test]
    fn huge_scale_is_empty_not_overflow() {
        let set = critical_occurrences(&params(5, 3), 3, 60, u64::MAX).unwrap();
        assert!(set.positions().is_empty());
        let set = critical_occurrences(&params(5, 3), 3, 0, u64::MAX).unwrap();
        // stops cleanly before overflow
        assert!(set.iter().take(1000).count() == 1000);
    }

    #[test]
    fn capped_enumeration() {
        let set = set_c(1_000);
        assert!(set.positions_capped(3).is_err());
        assert_eq!(set.positions_capped(1000).unwrap(), set.positions());
    }

    #[test]
    fn digit_sum_identity_examples() {
        assert_eq!(digit_sum_identity_check(10, 1, 2, 5), Ok(true));
        assert_eq!(digit_sum_identity_check(2, 1, 1, 1), Ok(true));
        assert_eq!(digit_sum_identity_check(5, 3, 3, 4), Ok(true));
        assert!(digit_sum_identity_check(5, 5, 3, 4).is_err());
        assert!(digit_sum_identity_check(5, 3, 3, 5).is_err());
        assert!(digit_sum_identity_check(5, 3, 0, 4).is_err());
        assert!(digit_sum_identity_check(1, 3, 1, 1).is_err());
        assert!(matches!(digit_sum_identity_check(10, 7, 40, 1), Err(Error::Overflow(_))));
    }

    #[test]
    fn critical_lengths() {
        assert_eq!(critical_length_exists(&params(2, 2), 3), Ok(true));
        assert_eq!(critical_length_exists(&params(2, 2), 5), Ok(false));
        assert_eq!(critical_length_exists(&params(3, 4), 1), Ok(false));
        assert_eq!(critical_length_exists(&params(3, 4), 2), Ok(true));
        assert_eq!(critical_length_exists(&params(2, 3), 1), Ok(true));
        assert!(critical_length_exists(&params(5, 3), 1).is_err());
        assert!(critical_length_exists(&params(2, 3), 2).is_err());
    }

    #[test]
    fn synchronization() {
        let p = params(5, 3);
        assert!(is_synchronized(&p, 120, 10));
        assert!(!is_synchronized(&p, 120, 3));
        assert!(!is_synchronized(&params(2, 2), 11, 6));
        assert!(!is_synchronized(&p, u64::MAX - 4, 10));
    }

    #[test]
    fn admissible() {
        assert_eq!(admissible_lengths(&params(5, 3)).unwrap(), vec![3]);
        assert_eq!(admissible_lengths(&params(2, 2)).unwrap(), vec![1, 3]);
        assert_eq!(admissible_lengths(&params(3, 4)).unwrap(), vec![2]);
        assert_eq!(admissible_lengths(&params(4, 6)).unwrap(), vec![3]);
    }

    #[test]
    fn horizons() {
        assert_eq!(sufficient_horizon(&params(5, 3)).unwrap(), 130);
        assert_eq!(sufficient_horizon(&params(2, 2)).unwrap(), 3);
        assert!(sufficient_horizon(&params(3, 2)).is_err());
    }

    #[test]
    fn brute_force_scan_small() {
        let tm = LazyWord::new(params(2, 2));
        let two = RationalExponent::integer(2);
        assert_eq!(scan_power_occurrences(&tm, 1, two, 8).unwrap(), vec![1, 5, 7]);
        assert_eq!(scan_power_occurrences(&tm, 3, two, 12).unwrap(), vec![11]);
        let w = LazyWord::new(TMParams::new(5, 3, 1).unwrap());
        let e = RationalExponent::new(10, 3).unwrap();
        assert_eq!(
            scan_power_occurrences(&w, 3, e, 800).unwrap(),
            vec![120, 245, 370, 495, 745]
        );
        assert!(scan_power_occurrences(&tm, 0, two, 8).is_err());
        assert!(scan_power_occurrences(&tm, 2, RationalExponent::integer(1), 8).is_err());
    }
}
