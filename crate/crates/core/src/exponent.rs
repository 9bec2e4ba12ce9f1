use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{Error, Result};

/// An exact non-negative rational exponent, or infinity.
///
/// Finite values are kept in lowest terms, so derived equality is exact
/// rational equality. `Infinite` compares above every finite value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RationalExponent {
    Finite(Ratio<u64>),
    Infinite,
}

impl RationalExponent {
    pub fn new(numer: u64, denom: u64) -> Result<Self> {
        if denom == 0 {
            return Err(Error::Precondition("exponent denominator must be positive"));
        }
        Ok(RationalExponent::Finite(Ratio::new(numer, denom)))
    }

    pub fn integer(n: u64) -> Self {
        RationalExponent::Finite(Ratio::from_integer(n))
    }

    /// The exponent of a repetition of `length` letters with period `period`.
    pub fn of_repetition(length: usize, period: usize) -> Self {
        debug_assert!(period > 0);
        RationalExponent::Finite(Ratio::new(length as u64, period as u64))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, RationalExponent::Infinite)
    }

    pub fn as_ratio(&self) -> Option<Ratio<u64>> {
        match *self {
            RationalExponent::Finite(r) => Some(r),
            RationalExponent::Infinite => None,
        }
    }

    pub fn numer(&self) -> Option<u64> {
        self.as_ratio().map(|r| *r.numer())
    }

    pub fn denom(&self) -> Option<u64> {
        self.as_ratio().map(|r| *r.denom())
    }

    /// `r * len` when it is an integer.
    pub fn length_for(&self, len: usize) -> Result<usize> {
        let r = self.as_ratio().ok_or(Error::InfiniteExponent)?;
        let len = len as u64;
        let (q, rem) = r
            .numer()
            .checked_mul(len)
            .ok_or(Error::Overflow("power length"))?
            .div_rem(r.denom());
        if rem != 0 {
            return Err(Error::NonIntegralPower {
                numer: *r.numer(),
                denom: *r.denom(),
                len: len as usize,
            });
        }
        usize::try_from(q).map_err(|_| Error::Overflow("power length"))
    }
}

impl PartialOrd for RationalExponent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalExponent {
    fn cmp(&self, other: &Self) -> Ordering {
        use RationalExponent::*;
        match (self, other) {
            (Finite(a), Finite(b)) => a.cmp(b),
            (Finite(_), Infinite) => Ordering::Less,
            (Infinite, Finite(_)) => Ordering::Greater,
            (Infinite, Infinite) => Ordering::Equal,
        }
    }
}

/// `p/q`, `p` when the denominator is 1, or `inf`.
impl fmt::Display for RationalExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RationalExponent::Finite(r) if *r.denom() == 1 => write!(f, "{}", r.numer()),
            RationalExponent::Finite(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            RationalExponent::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for RationalExponent {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "inf" {
            return Ok(RationalExponent::Infinite);
        }
        let bad = || Error::Precondition("exponent must be `p/q`, `p` or `inf`");
        match s.split_once('/') {
            Some((p, q)) => {
                let p = p.parse().map_err(|_| bad())?;
                let q = q.parse().map_err(|_| bad())?;
                RationalExponent::new(p, q)
            }
            None => Ok(RationalExponent::integer(s.parse().map_err(|_| bad())?)),
        }
    }
}

impl From<Ratio<u64>> for RationalExponent {
    fn from(r: Ratio<u64>) -> Self {
        RationalExponent::Finite(r)
    }
}
