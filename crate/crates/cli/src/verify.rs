//! `tmlab verify`: every invariant suite over a grid of `(b, m)`.

use std::ops::RangeInclusive;

use clap::{Args, ValueEnum};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use tmlab_core::occurrences::{
    admissible_lengths, critical_length_exists, critical_occurrences, digit_sum_identity_check,
    scan_power_occurrences, sufficient_horizon,
};
use tmlab_core::repetition::{critical_exponent_closed_form, find_overlap, max_exponent_in_prefix};
use tmlab_core::runs::runs;
use tmlab_core::{LazyWord, TMParams};

use crate::error::{CliError, Outcome};
use crate::record::{OutputRecord, Payload, Provenance, Status, VerifyRow};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Construction,
    Overlap,
    Periodicity,
    Critical,
    Occurrences,
    DigitSum,
    Corollary,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::Construction => "construction",
            Suite::Overlap => "overlap",
            Suite::Periodicity => "periodicity",
            Suite::Critical => "critical",
            Suite::Occurrences => "occurrences",
            Suite::DigitSum => "digit-sum",
            Suite::Corollary => "corollary",
        }
    }
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run, comma separated (default: all).
    #[arg(long, value_enum, value_delimiter = ',')]
    suite: Vec<Suite>,
    /// Parameter grid such as `b=2..6,m=1..6`.
    #[arg(long, default_value = "b=2..6,m=1..6")]
    grid: String,
    /// A single base, overriding the grid.
    #[arg(short = 'b', value_name = "B")]
    base: Option<u64>,
    /// A single alphabet size, overriding the grid.
    #[arg(short = 'm', value_name = "M")]
    alphabet: Option<u32>,
    /// Prefix length examined by the word-level suites.
    #[arg(long, default_value_t = 20_000)]
    bound: u64,
    /// Random instances per cell for the digit-sum identity.
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    /// Seed for the digit-sum samples.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_range(text: &str) -> Option<RangeInclusive<u64>> {
    let text = text.trim();
    if let Some((lo, hi)) = text.split_once("..") {
        let hi = hi.strip_prefix('=').unwrap_or(hi);
        Some(lo.trim().parse().ok()?..=hi.trim().parse().ok()?)
    } else {
        let v = text.parse().ok()?;
        Some(v..=v)
    }
}

/// Parses `b=LO..HI,m=LO..HI`; either key may be omitted or a single value.
pub fn parse_grid(spec: &str) -> Result<(RangeInclusive<u64>, RangeInclusive<u64>), CliError> {
    let mut b = 2..=6;
    let mut m = 1..=6;
    for part in spec.split(',').filter(|s| !s.trim().is_empty()) {
        let bad = || CliError::usage(format!("bad grid entry {part:?}"));
        let (key, range) = part.split_once('=').ok_or_else(bad)?;
        let range = parse_range(range).ok_or_else(bad)?;
        if range.is_empty() {
            return Err(bad());
        }
        match key.trim() {
            "b" => b = range,
            "m" => m = range,
            _ => return Err(bad()),
        }
    }
    if *b.start() < 2 || *m.start() < 1 || *m.end() > u64::from(u32::MAX) {
        return Err(CliError::usage("grid needs b >= 2 and m >= 1"));
    }
    Ok((b, m))
}

struct Cell {
    params: TMParams,
    word: LazyWord,
    bound: usize,
    cap: usize,
}

type Check = (Status, String);

impl Cell {
    fn horizon(&self, wanted: u64) -> Option<usize> {
        usize::try_from(wanted).ok().filter(|&h| h <= self.cap)
    }

    fn construction(&self) -> Check {
        let by_morphism = self.params.prefix_by_morphism(self.bound);
        let by_digits = self.word.prefix(self.bound);
        let sigma = self.params.sigma();
        let b = self.params.base() as usize;
        let blocks_ok = by_digits
            .chunks(b)
            .all(|c| tmlab_core::word::is_sigma_cyclic(c, &sigma));
        let pass = by_morphism == by_digits && blocks_ok;
        (Status::from_pass(pass), format!("{} letters two ways, blocks σ-cyclic", self.bound))
    }

    fn overlap(&self) -> Result<Check, CliError> {
        let b = self.params.base();
        let m = u64::from(self.params.alphabet());
        if b <= m {
            let found = find_overlap(&self.word, self.bound.max(3))?;
            return Ok(match found {
                None => (Status::Pass, format!("no overlap below {}", self.bound)),
                Some(o) => (Status::Fail, format!("overlap at {} with period {}", o.position, o.period)),
            });
        }
        // b > m: an overlap must show up once the prefix holds a critical power
        let wanted = if self.params.is_periodic() {
            self.bound as u64
        } else {
            sufficient_horizon(&self.params)?.max(self.bound as u64)
        };
        let Some(h) = self.horizon(wanted) else {
            return Ok((Status::Skip, format!("needs a {wanted}-letter prefix")));
        };
        Ok(match find_overlap(&self.word, h.max(3))? {
            Some(o) => (Status::Pass, format!("overlap at {} with period {}", o.position, o.period)),
            None => (Status::Fail, format!("no overlap below {h}")),
        })
    }

    fn periodicity(&self) -> Check {
        let b = self.params.base();
        let m = u64::from(self.params.alphabet());
        let predicted = (b - 1).is_multiple_of(m);
        let text = self.word.prefix(self.bound);
        // a period of the whole prefix shows up as a run spanning it
        let period = runs(text.as_slice())
            .into_iter()
            .find(|r| r.start == 0 && r.end == text.len())
            .map(|r| r.period);
        let pass = match (predicted, period) {
            (true, Some(p)) => p == self.params.alphabet() as usize
                && self.params.period_word().is_some_and(|w| w.as_slice() == &text[..p]),
            (false, None) => !self.params.is_periodic(),
            _ => false,
        };
        let detail = match period {
            Some(p) => format!("prefix has period {p}"),
            None => format!("prefix of {} letters not periodic", self.bound),
        };
        (Status::from_pass(pass), detail)
    }

    fn critical(&self) -> Result<Check, CliError> {
        let closed = critical_exponent_closed_form(&self.params);
        let wanted = if self.params.is_periodic() {
            self.bound as u64
        } else {
            sufficient_horizon(&self.params)?.max(self.bound as u64)
        };
        let Some(h) = self.horizon(wanted) else {
            return Ok((Status::Skip, format!("needs a {wanted}-letter prefix")));
        };
        let report = max_exponent_in_prefix(&self.word, h.max(2))?;
        let pass = if self.params.is_periodic() {
            closed.is_infinite() && report.truncated
        } else {
            report.agrees()
        };
        Ok((
            Status::from_pass(pass),
            format!("closed {closed}, scan {} at {} (horizon {h})", report.empirical_max, report.witness_position),
        ))
    }

    /// Critical powers at every admissible period match the sets, and no
    /// other short period carries one.
    fn occurrences(&self) -> Result<Check, CliError> {
        if self.params.is_periodic() {
            return Ok((Status::Skip, "periodic".into()));
        }
        let b = self.params.base();
        let e = critical_exponent_closed_form(&self.params);
        let bound = self.bound as u64;
        let mut sets = 0;
        let mut total = 0;
        for n in admissible_lengths(&self.params)? {
            for i in 0..=2u32 {
                let period = n * b.pow(i);
                let power = e.length_for(period as usize)? as u64;
                if power * 4 > bound {
                    break;
                }
                let set = critical_occurrences(&self.params, n, i, bound)?;
                let predicted = set.positions_capped(self.cap)?;
                let found = scan_power_occurrences(&self.word, period as usize, e, self.bound)?;
                if predicted != found {
                    return Ok((Status::Fail, format!("period {period}: sets differ")));
                }
                sets += 1;
                total += predicted.len();
            }
        }
        for period in 1..=(4 * b).min(60) {
            let mut n = period;
            while n % b == 0 {
                n /= b;
            }
            if critical_occurrences(&self.params, n, 0, 0).is_ok() || e.length_for(period as usize).is_err() {
                continue;
            }
            let found = scan_power_occurrences(&self.word, period as usize, e, self.bound)?;
            if let Some(p) = found.first() {
                return Ok((Status::Fail, format!("unexpected power of period {period} at {p}")));
            }
        }
        Ok((Status::Pass, format!("{sets} sets, {total} positions")))
    }

    fn digit_sum(&self, samples: u64, seed: u64) -> Result<Check, CliError> {
        let b = self.params.base();
        let mut rng = StdRng::seed_from_u64(seed ^ (b << 32) ^ u64::from(self.params.alphabet()));
        let mut done = 0;
        while done < samples {
            let k: u64 = rng.gen_range(1..1_000_000);
            let q: u32 = rng.gen_range(1..=12);
            let n: u64 = rng.gen_range(1..b);
            if k.is_multiple_of(b) || b.checked_pow(q).and_then(|f| f.checked_mul(k)).is_none() {
                continue;
            }
            if !digit_sum_identity_check(b, k, q, n)? {
                return Ok((Status::Fail, format!("k={k} q={q} N={n}")));
            }
            done += 1;
        }
        Ok((Status::Pass, format!("{samples} random (k, q, N)")))
    }

    /// Which short factor lengths have critical powers, against a scan.
    fn corollary(&self) -> Result<Check, CliError> {
        if self.params.is_periodic() {
            return Ok((Status::Skip, "periodic".into()));
        }
        let b = self.params.base();
        let m = u64::from(self.params.alphabet());
        let e = critical_exponent_closed_form(&self.params);
        let mut lengths = Vec::new();
        for len in (1..=2 * b + 1).filter(|l| l % b != 0) {
            let predicted = if self.params.is_square_case() {
                critical_length_exists(&self.params, len)?
            } else {
                len == m
            };
            let Ok(power) = e.length_for(len as usize) else {
                if predicted {
                    return Ok((Status::Fail, format!("length {len} has no integral power")));
                }
                continue;
            };
            // a predicted length is scanned just past its first occurrence
            let wanted = if predicted {
                let first = critical_occurrences(&self.params, len, 0, u64::MAX)?.iter().next();
                match first {
                    Some(f) => f + 1,
                    None => return Ok((Status::Fail, format!("length {len} has an empty set"))),
                }
            } else {
                self.bound as u64
            };
            let Some(h) = self.horizon(wanted + power as u64) else {
                return Ok((Status::Skip, format!("length {len} needs a {wanted}-letter prefix")));
            };
            let found = !scan_power_occurrences(&self.word, len as usize, e, h - power)?.is_empty();
            if found != predicted {
                return Ok((Status::Fail, format!("length {len}: predicted {predicted}, scan {found}")));
            }
            if predicted {
                lengths.push(len.to_string());
            }
        }
        Ok((Status::Pass, format!("critical lengths {{{}}} up to {}", lengths.join(","), 2 * b + 1)))
    }
}

pub fn run(args: &VerifyArgs, cap: u64) -> Result<(OutputRecord, Outcome), CliError> {
    let (grid_b, grid_m) = parse_grid(&args.grid)?;
    let bs = args.base.map_or(grid_b, |b| b..=b);
    let ms = args.alphabet.map_or(grid_m, |m| u64::from(m)..=u64::from(m));
    let suites = if args.suite.is_empty() {
        Suite::value_variants().to_vec()
    } else {
        args.suite.clone()
    };
    let cap = usize::try_from(cap).unwrap_or(usize::MAX);
    let bound = usize::try_from(args.bound)
        .ok()
        .filter(|&n| n <= cap)
        .ok_or_else(|| CliError::usage(format!("bound {} exceeds TMLAB_MAX_POSITIONS", args.bound)))?;
    let mut rows = Vec::new();
    for suite in suites {
        for b in bs.clone() {
            for m in ms.clone() {
                let params = TMParams::new(b, m as u32, 0)?;
                let cell = Cell {
                    params,
                    word: LazyWord::new(params),
                    bound,
                    cap,
                };
                let (status, detail) = match suite {
                    Suite::Construction => cell.construction(),
                    Suite::Overlap => cell.overlap()?,
                    Suite::Periodicity => cell.periodicity(),
                    Suite::Critical => cell.critical()?,
                    Suite::Occurrences => cell.occurrences()?,
                    Suite::DigitSum => cell.digit_sum(args.samples, args.seed)?,
                    Suite::Corollary => cell.corollary()?,
                };
                rows.push(VerifyRow {
                    suite: suite.name().into(),
                    b,
                    m: m as u32,
                    status,
                    detail,
                });
            }
        }
    }
    let count = |s: Status| rows.iter().filter(|r| r.status == s).count();
    let (passed, failed, skipped) = (count(Status::Pass), count(Status::Fail), count(Status::Skip));
    let record = OutputRecord {
        command: String::new(),
        params: None,
        payload: Payload::Verify {
            rows,
            passed,
            failed,
            skipped,
        },
        provenance: Provenance {
            horizon: None,
            bound: Some(args.bound),
        },
    };
    Ok((record, Outcome::from_pass(failed == 0)))
}
