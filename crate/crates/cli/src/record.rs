//! The machine-readable result of one command, and its three renderings.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputRecord {
    /// The arguments the command was invoked with.
    pub command: String,
    pub params: Option<ParamsEcho>,
    pub payload: Payload,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsEcho {
    pub b: u64,
    pub m: u32,
    pub start: u32,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub horizon: Option<u64>,
    pub bound: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl Status {
    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Word {
        text: String,
        length: u64,
        /// Result of the digit-sum cross-check, when requested.
        checked: Option<bool>,
    },
    Critical {
        /// `"p/q"` or `"inf"`.
        closed_form: String,
        periodic: bool,
        scan: Option<ScanReport>,
    },
    Occurrences {
        set: String,
        period: u64,
        exponent: String,
        positions: Vec<u64>,
        oracle: Option<OracleReport>,
    },
    Verify {
        rows: Vec<VerifyRow>,
        passed: usize,
        failed: usize,
        skipped: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub empirical: String,
    pub factor: String,
    pub witness: u64,
    /// Starts of the critical power with the shortest period.
    pub witnesses: Vec<u64>,
    /// The best power runs into the end of the scanned prefix.
    pub truncated: bool,
    /// A horizon large enough to contain a critical power.
    pub suggested_horizon: Option<u64>,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub status: Status,
    /// Positions only the brute-force scan found.
    pub missing: Vec<u64>,
    /// Positions only the closed form predicted.
    pub unexpected: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyRow {
    pub suite: String,
    pub b: u64,
    pub m: u32,
    pub status: Status,
    pub detail: String,
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")
}

impl OutputRecord {
    pub fn to_json(&self) -> Result<String, CliError> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.payload {
            Payload::Occurrences { positions, .. } => {
                w.write_record(["position"])?;
                for p in positions {
                    w.write_record([p.to_string()])?;
                }
            }
            Payload::Verify { rows, .. } => {
                w.write_record(["suite", "b", "m", "status", "detail"])?;
                for r in rows {
                    w.write_record([
                        r.suite.clone(),
                        r.b.to_string(),
                        r.m.to_string(),
                        r.status.label().to_string(),
                        r.detail.clone(),
                    ])?;
                }
            }
            _ => return Err(CliError::usage("--csv applies to position lists and verify tables")),
        }
        let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_plain(&self) -> String {
        let mut out = String::new();
        match &self.payload {
            Payload::Word { text, checked, .. } => {
                out.push_str(text);
                out.push('\n');
                if let Some(ok) = checked {
                    let verdict = if *ok { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "digit-sum check: {verdict}");
                }
            }
            Payload::Critical {
                closed_form,
                periodic,
                scan,
            } => {
                match scan {
                    None if *periodic => {
                        let _ = writeln!(out, "{closed_form} (periodic)");
                    }
                    None => {
                        let _ = writeln!(out, "{closed_form}");
                    }
                    Some(s) => {
                        let kind = if *periodic { " (periodic)" } else { "" };
                        let _ = writeln!(out, "closed form: {closed_form}{kind}");
                        let horizon = self.provenance.horizon.unwrap_or_default();
                        let _ = writeln!(out, "horizon:     {horizon}");
                        let _ = writeln!(out, "empirical:   {} at {}", s.empirical, s.witness);
                        let _ = writeln!(out, "factor:      {}", s.factor);
                        let _ = writeln!(out, "witnesses:   {}", join(&s.witnesses));
                        if s.truncated {
                            out.push_str("note:        the best power reaches the end of the prefix\n");
                        }
                        if let Some(h) = s.suggested_horizon {
                            if h > horizon {
                                let _ = writeln!(out, "note:        use --scan {h} or more to reach a critical power");
                            }
                        }
                        let _ = writeln!(out, "{}", s.status.label());
                    }
                }
            }
            Payload::Occurrences {
                positions, oracle, ..
            } => {
                out.push_str(&join(positions));
                out.push('\n');
                if let Some(o) = oracle {
                    let _ = writeln!(out, "oracle: {}", o.status.label());
                    if !o.missing.is_empty() {
                        let _ = writeln!(out, "  found by scan only: {}", join(&o.missing));
                    }
                    if !o.unexpected.is_empty() {
                        let _ = writeln!(out, "  predicted only:     {}", join(&o.unexpected));
                    }
                }
            }
            Payload::Verify {
                rows,
                passed,
                failed,
                skipped,
            } => {
                let width = rows.iter().map(|r| r.suite.len()).max().unwrap_or(5).max(5);
                let _ = writeln!(out, "{:<width$}  {:>3}  {:>3}  result  detail", "suite", "b", "m");
                for r in rows {
                    let _ = writeln!(
                        out,
                        "{:<width$}  {:>3}  {:>3}  {:<6}  {}",
                        r.suite,
                        r.b,
                        r.m,
                        r.status.label(),
                        r.detail
                    );
                }
                let overall = if *failed == 0 { "PASS" } else { "FAIL" };
                let _ = writeln!(out, "{passed} passed, {failed} failed, {skipped} skipped: {overall}");
            }
        }
        out
    }
}
