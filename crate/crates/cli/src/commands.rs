use tmlab_core::occurrences::{critical_occurrences, scan_power_occurrences, sufficient_horizon, OccurrenceKind};
use tmlab_core::repetition::{critical_exponent_closed_form, max_exponent_in_prefix};
use tmlab_core::{LazyWord, TMParams};

use crate::error::{CliError, Outcome};
use crate::record::{OracleReport, OutputRecord, ParamsEcho, Payload, Provenance, ScanReport, Status};
use crate::rename::{self, Rename};
use crate::WordArgs;

/// Prefix length used by `critical --scan` on periodic words, where no
/// occurrence set suggests one.
const PERIODIC_SCAN: u64 = 1000;

pub type Reply = (OutputRecord, Outcome);

fn params(args: &WordArgs) -> Result<(TMParams, Option<Rename>), CliError> {
    let p = TMParams::new(args.base, args.alphabet, args.start)?;
    let rename = args
        .rename
        .as_deref()
        .map(|s| Rename::parse(s, args.alphabet))
        .transpose()?;
    Ok((p, rename))
}

fn echo(p: &TMParams) -> Option<ParamsEcho> {
    Some(ParamsEcho {
        b: p.base(),
        m: p.alphabet(),
        start: p.start().value(),
    })
}

fn within_cap(what: &str, n: u64, cap: u64) -> Result<usize, CliError> {
    if n > cap {
        return Err(CliError::usage(format!(
            "{what} {n} exceeds TMLAB_MAX_POSITIONS ({cap})"
        )));
    }
    usize::try_from(n).map_err(|_| CliError::usage(format!("{what} {n} is too large")))
}

pub fn generate(args: &WordArgs, length: u64, check: bool, cap: u64) -> Result<Reply, CliError> {
    let (p, rename) = params(args)?;
    let len = within_cap("length", length, cap)?;
    let word = p.prefix_by_morphism(len);
    let checked = check.then(|| LazyWord::new(p).prefix(len) == word);
    let record = OutputRecord {
        command: String::new(),
        params: echo(&p),
        payload: Payload::Word {
            text: rename::render(&word, rename.as_ref()),
            length,
            checked,
        },
        provenance: Provenance::default(),
    };
    Ok((record, Outcome::from_pass(checked != Some(false))))
}

pub fn critical(args: &WordArgs, scan: Option<Option<u64>>, cap: u64) -> Result<Reply, CliError> {
    let (p, rename) = params(args)?;
    let closed = critical_exponent_closed_form(&p);
    let periodic = p.is_periodic();
    let suggested = if periodic {
        None
    } else {
        Some(sufficient_horizon(&p)?)
    };
    let mut horizon = None;
    let mut outcome = Outcome::Success;
    let scan = match scan {
        None => None,
        Some(requested) => {
            let h = requested.or(suggested).unwrap_or(PERIODIC_SCAN).max(2);
            let len = within_cap("horizon", h, cap)?;
            let report = max_exponent_in_prefix(&LazyWord::new(p), len)?;
            // a periodic word is one run, so the scan can only hit the horizon
            let pass = if periodic {
                report.truncated
            } else {
                report.agrees()
            };
            horizon = Some(h);
            outcome = Outcome::from_pass(pass);
            Some(ScanReport {
                empirical: report.empirical_max.to_string(),
                factor: rename::render(&report.critical_factor, rename.as_ref()),
                witness: report.witness_position as u64,
                witnesses: report.witnesses.iter().map(|&w| w as u64).collect(),
                truncated: report.truncated,
                suggested_horizon: suggested,
                status: Status::from_pass(pass),
            })
        }
    };
    let record = OutputRecord {
        command: String::new(),
        params: echo(&p),
        payload: Payload::Critical {
            closed_form: closed.to_string(),
            periodic,
            scan,
        },
        provenance: Provenance { horizon, bound: None },
    };
    Ok((record, outcome))
}

fn set_label(kind: OccurrenceKind, b: u64, scale: u32) -> String {
    let set = match kind {
        OccurrenceKind::A => "A".to_string(),
        OccurrenceKind::B(n) => format!("B_{n}"),
        OccurrenceKind::C => "C".to_string(),
    };
    match scale {
        0 => set,
        1 => format!("{b}*{set}"),
        i => format!("{b}^{i}*{set}"),
    }
}

/// Elements of `a` missing from `b`; both ascending.
fn difference(a: &[u64], b: &[u64]) -> Vec<u64> {
    a.iter().filter(|x| b.binary_search(x).is_err()).copied().collect()
}

pub fn occurrences(
    args: &WordArgs,
    n: u64,
    scale: u32,
    bound: u64,
    verify: bool,
    cap: u64,
) -> Result<Reply, CliError> {
    let (p, _) = params(args)?;
    let set = critical_occurrences(&p, n, scale, bound)?;
    let positions = set.positions_capped(usize::try_from(cap).unwrap_or(usize::MAX))?;
    let period = set
        .factor_length()
        .ok_or_else(|| CliError::usage("N·b^i does not fit in 64 bits"))?;
    let exponent = critical_exponent_closed_form(&p);
    let mut outcome = Outcome::Success;
    let oracle = if verify {
        let period_len = within_cap("period", period, cap)?;
        let power = exponent.length_for(period_len)? as u64;
        within_cap("bound plus power length", bound.saturating_add(power), cap)?;
        let found = scan_power_occurrences(&LazyWord::new(p), period_len, exponent, bound as usize)?;
        let missing = difference(&found, &positions);
        let unexpected = difference(&positions, &found);
        let pass = missing.is_empty() && unexpected.is_empty();
        outcome = Outcome::from_pass(pass);
        Some(OracleReport {
            status: Status::from_pass(pass),
            missing,
            unexpected,
        })
    } else {
        None
    };
    let record = OutputRecord {
        command: String::new(),
        params: echo(&p),
        payload: Payload::Occurrences {
            set: set_label(set.kind(), p.base(), scale),
            period,
            exponent: exponent.to_string(),
            positions,
            oracle,
        },
        provenance: Provenance {
            horizon: None,
            bound: Some(bound),
        },
    };
    Ok((record, outcome))
}
