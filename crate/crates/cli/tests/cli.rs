use std::process::{Command, Output};

use serde_json::Value;

fn tmlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_tmlab"))
        .args(args)
        .env_remove("TMLAB_MAX_POSITIONS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

/// Runs a command that must succeed and returns its stdout.
fn ok(args: &[&str]) -> String {
    let out = tmlab(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    stdout(&out)
}

fn code(args: &[&str]) -> Option<i32> {
    tmlab(args).status.code()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.push("--json");
    serde_json::from_str(&ok(&full)).unwrap()
}

#[test]
fn generate_examples() {
    assert_eq!(ok(&["generate", "-b", "2", "-m", "2", "--start", "0", "-n", "16", "--rename", "ab"]), "abbabaabbaababba\n");
    assert_eq!(ok(&["generate", "-b", "5", "-m", "3", "--start", "1", "-n", "5", "--rename", "△♦♥"]), "♦♥△♦♥\n");
    assert_eq!(ok(&["generate", "-b", "2", "-m", "1", "-n", "4"]), "0000\n");
    assert_eq!(ok(&["generate", "-b", "2", "-m", "2", "-n", "0"]), "\n");
}

#[test]
fn generate_check() {
    let out = ok(&["generate", "-b", "4", "-m", "6", "-n", "500", "--check"]);
    assert!(out.ends_with("digit-sum check: PASS\n"));
    let v = json(&["generate", "-b", "4", "-m", "6", "-n", "50", "--check"]);
    assert_eq!(v["payload"]["checked"], true);
    assert_eq!(v["payload"]["length"], 50);
}

#[test]
fn wide_alphabets_are_dot_separated() {
    assert_eq!(ok(&["generate", "-b", "2", "-m", "12", "--start", "10", "-n", "4"]), "10.11.11.0\n");
}

#[test]
fn invalid_arguments_exit_2() {
    assert_eq!(code(&["generate", "-b", "1", "-m", "2", "-n", "4"]), Some(2));
    assert_eq!(code(&["generate", "-b", "2", "-m", "0", "-n", "4"]), Some(2));
    assert_eq!(code(&["generate", "-b", "2", "-m", "2", "--start", "2", "-n", "4"]), Some(2));
    assert_eq!(code(&["generate", "-b", "2", "-m", "2", "-n", "4", "--rename", "aa"]), Some(2));
    assert_eq!(code(&["generate", "-b", "2", "-m", "2", "-n", "4", "--rename", "abc"]), Some(2));
    assert_eq!(code(&["generate", "-b", "2", "-m", "2", "-n", "4", "--csv"]), Some(2));
    assert_eq!(code(&["generate", "-b", "two", "-m", "2", "-n", "4"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&["occurrences", "-b", "5", "-m", "3", "-N", "2"]), Some(2));
    assert_eq!(code(&["occurrences", "-b", "3", "-m", "4", "-N", "3"]), Some(2));
    assert_eq!(code(&["occurrences", "-b", "3", "-m", "2", "-N", "1"]), Some(2));
    assert_eq!(code(&["verify", "--grid", "b=1..3"]), Some(2));
    assert_eq!(code(&["verify", "--suite", "nonsense"]), Some(2));
}

#[test]
fn position_cap() {
    let capped = |cap: &str, args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_tmlab"))
            .args(args)
            .env("TMLAB_MAX_POSITIONS", cap)
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(capped("10", &["generate", "-b", "2", "-m", "2", "-n", "11"]), Some(2));
    assert_eq!(capped("10", &["generate", "-b", "2", "-m", "2", "-n", "10"]), Some(0));
    assert_eq!(capped("3", &["occurrences", "-b", "5", "-m", "3", "-N", "3", "--bound", "800"]), Some(2));
    assert_eq!(capped("5", &["occurrences", "-b", "5", "-m", "3", "-N", "3", "--bound", "800"]), Some(0));
    assert_eq!(capped("many", &["generate", "-b", "2", "-m", "2", "-n", "1"]), Some(2));
}

#[test]
fn critical_examples() {
    assert_eq!(ok(&["critical", "-b", "5", "-m", "3"]), "10/3\n");
    assert_eq!(ok(&["critical", "-b", "3", "-m", "2"]), "inf (periodic)\n");
    assert_eq!(ok(&["critical", "-b", "2", "-m", "2"]), "2\n");
    assert_eq!(ok(&["critical", "-b", "7", "-m", "2"]), "inf (periodic)\n");
    assert_eq!(ok(&["critical", "-b", "7", "-m", "3"]), "inf (periodic)\n");
    assert_eq!(ok(&["critical", "-b", "7", "-m", "5"]), "14/5\n");
    let scan = ok(&["critical", "-b", "5", "-m", "3", "--scan", "200"]);
    assert!(scan.contains("empirical:   10/3 at 120\n"), "{scan}");
    assert!(scan.ends_with("PASS\n"));
}

#[test]
fn critical_scan_defaults_to_sufficient_horizon() {
    let v = json(&["critical", "-b", "5", "-m", "3", "--scan"]);
    assert_eq!(v["provenance"]["horizon"], 130);
    assert_eq!(v["payload"]["scan"]["status"], "PASS");
    assert_eq!(v["payload"]["scan"]["witness"], 120);
    for (b, m) in [(2, 2), (3, 5), (6, 4), (7, 5), (4, 2)] {
        let (b, m) = (b.to_string(), m.to_string());
        ok(&["critical", "-b", &b, "-m", &m, "--scan"]);
    }
}

#[test]
fn critical_scan_too_short_fails() {
    let out = tmlab(&["critical", "-b", "5", "-m", "3", "--scan", "100"]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("--scan 130"), "{text}");
    assert!(text.ends_with("FAIL\n"));
}

#[test]
fn critical_scan_periodic() {
    let v = json(&["critical", "-b", "4", "-m", "3", "--scan", "90"]);
    assert_eq!(v["payload"]["closed_form"], "inf");
    assert_eq!(v["payload"]["periodic"], true);
    assert_eq!(v["payload"]["scan"]["empirical"], "30");
    assert_eq!(v["payload"]["scan"]["truncated"], true);
}

#[test]
fn occurrences_examples() {
    assert_eq!(ok(&["occurrences", "-b", "5", "-m", "3", "-N", "3", "-i", "0", "--bound", "800"]), "120 245 370 495 745\n");
    assert_eq!(ok(&["occurrences", "-b", "2", "-m", "2", "-N", "3", "-i", "0", "--bound", "12"]), "11\n");
    // the letter squares 11 and 00 of Thue-Morse start at 1, 5 and 7
    assert_eq!(ok(&["occurrences", "-b", "2", "-m", "2", "-N", "1", "-i", "0", "--bound", "8"]), "1 5 7\n");
    assert_eq!(ok(&["occurrences", "-b", "5", "-m", "3", "-N", "3", "-i", "1", "--bound", "1000"]), "600\n");
}

#[test]
fn occurrences_verify_against_scan() {
    let cases: &[&[&str]] = &[
        &["-b", "5", "-m", "3", "-N", "3", "--bound", "5000"],
        &["-b", "5", "-m", "3", "-N", "3", "-i", "1", "--bound", "5000"],
        &["-b", "2", "-m", "2", "-N", "1", "--bound", "3000"],
        &["-b", "2", "-m", "2", "-N", "3", "-i", "2", "--bound", "3000"],
        &["-b", "3", "-m", "4", "-N", "1", "--bound", "3000"],
        &["-b", "3", "-m", "4", "-N", "2", "-i", "1", "--bound", "3000"],
        &["-b", "4", "-m", "6", "-N", "2", "--bound", "3000"],
        &["-b", "7", "-m", "4", "-N", "4", "--bound", "3000"],
    ];
    for case in cases {
        let mut args = vec!["occurrences"];
        args.extend_from_slice(case);
        args.push("--verify");
        let out = ok(&args);
        assert!(out.ends_with("oracle: PASS\n"), "{args:?}: {out}");
    }
}

#[test]
fn empty_square_sets() {
    // gcd(b - 1, m) = 2 does not divide N = 1
    assert_eq!(ok(&["occurrences", "-b", "3", "-m", "4", "-N", "1", "--bound", "1000"]).trim(), "");
}

#[test]
fn occurrences_json_and_csv() {
    let v = json(&["occurrences", "-b", "5", "-m", "3", "-N", "3", "--bound", "800"]);
    assert_eq!(v["payload"]["kind"], "occurrences");
    assert_eq!(v["payload"]["set"], "A");
    assert_eq!(v["payload"]["exponent"], "10/3");
    assert_eq!(v["payload"]["period"], 3);
    assert_eq!(v["params"]["b"], 5);
    assert_eq!(v["provenance"]["bound"], 800);
    let positions: Vec<u64> = serde_json::from_value(v["payload"]["positions"].clone()).unwrap();
    assert_eq!(positions, [120, 245, 370, 495, 745]);
    let csv = ok(&["occurrences", "-b", "5", "-m", "3", "-N", "3", "--bound", "800", "--csv"]);
    assert_eq!(csv, "position\n120\n245\n370\n495\n745\n");
}

#[test]
fn json_reprints_identically() {
    let commands: &[&[&str]] = &[
        &["generate", "-b", "3", "-m", "5", "-n", "40", "--json"],
        &["critical", "-b", "6", "-m", "4", "--scan", "--json"],
        &["occurrences", "-b", "2", "-m", "2", "-N", "3", "--bound", "200", "--verify", "--json"],
        &["verify", "--suite", "construction,critical", "--grid", "b=2..3,m=2..3", "--bound", "500", "--json"],
    ];
    for args in commands {
        let text = ok(args);
        let value: Value = serde_json::from_str(&text).unwrap();
        let mut again = serde_json::to_string_pretty(&value).unwrap();
        again.push('\n');
        assert_eq!(again, text, "{args:?}");
        // the same flags give the same record
        assert_eq!(ok(args), text);
    }
}

#[test]
fn exponents_are_exact_fractions() {
    for (b, m, e) in [(5, 3, "10/3"), (7, 4, "7/2"), (6, 4, "3"), (2, 5, "2"), (4, 3, "inf")] {
        let (b, m) = (b.to_string(), m.to_string());
        let v = json(&["critical", "-b", &b, "-m", &m]);
        assert_eq!(v["payload"]["closed_form"], e);
    }
}

#[test]
fn out_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let path = path.to_str().unwrap();
    let printed = ok(&["generate", "-b", "2", "-m", "2", "-n", "8", "--out", path]);
    assert_eq!(printed, "");
    assert_eq!(std::fs::read_to_string(path).unwrap(), "01101001\n");
    ok(&["occurrences", "-b", "5", "-m", "3", "-N", "3", "--bound", "400", "--csv", "--out", path]);
    assert_eq!(std::fs::read_to_string(path).unwrap(), "position\n120\n245\n370\n");
}

#[test]
fn verify_examples() {
    let out = ok(&["verify", "--suite", "overlap", "-b", "3", "-m", "5", "--bound", "10000"]);
    assert!(out.contains("no overlap below 10000"), "{out}");
    assert!(out.ends_with("1 passed, 0 failed, 0 skipped: PASS\n"), "{out}");
    let out = ok(&["verify", "--suite", "digit-sum", "--samples", "10000"]);
    assert!(out.ends_with(": PASS\n"), "{out}");
}

#[test]
fn verify_full_grid() {
    let v = json(&["verify", "--grid", "b=2..6,m=1..6", "--bound", "20000"]);
    let rows = v["payload"]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 7 * 30);
    assert_eq!(v["payload"]["failed"], 0);
    for row in rows {
        let status = row["status"].as_str().unwrap();
        if status == "SKIP" {
            // only periodic words lack occurrence sets
            let (b, m) = (row["b"].as_u64().unwrap(), row["m"].as_u64().unwrap());
            assert_eq!((b - 1) % m, 0, "{row}");
        } else {
            assert_eq!(status, "PASS", "{row}");
        }
    }
}

#[test]
fn verify_csv_table() {
    let csv = ok(&["verify", "--suite", "periodicity", "--grid", "b=3,m=1..2", "--bound", "100", "--csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("suite,b,m,status,detail"));
    assert_eq!(lines.count(), 2);
}
