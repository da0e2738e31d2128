//! End-to-end tests of the binary: exit codes, output shapes, the JSON
//! round-trip contract and the density-table sum identity.

use std::process::{Command, Output};

use num_traits::Zero;
use primroot::arith::{parse_rational, Rational};

fn primroot(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_primroot"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = primroot(args);
    assert!(
        out.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf8 output")
}

#[test]
fn density_json_matches_contract() {
    let out = stdout(&["density", "--g", "2", "--f", "28", "--a", "3", "--format", "json"]);
    assert!(out.starts_with(
        "{\"coeff\":\"7/82\",\"value\":\"0.0319230572602\",\"b\":2,\"case\":\"b_even\""
    ));
}

#[test]
fn density_rejects_g_outside_g_with_exit_1() {
    let out = primroot(&["density", "--g", "4", "--f", "5", "--a", "2"]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert_eq!(stderr.trim(), "error: g is a perfect square (not in G)");
    assert!(out.stdout.is_empty());
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(primroot(&["density", "--nope", "3"]).status.code(), Some(2));
    assert_eq!(
        primroot(&["density", "--g", "1.5"]).status.code(),
        Some(2),
        "malformed rational is a usage error"
    );
    assert_eq!(
        primroot(&["census", "--g", "2", "--x", "1"]).status.code(),
        Some(2),
        "out-of-range x is a usage error"
    );
    assert_eq!(primroot(&["no-such-command"]).status.code(), Some(2));
}

#[test]
fn negative_g_is_accepted() {
    let out = stdout(&["density", "--g", "-3", "--f", "4", "--a", "3", "--format", "json"]);
    assert!(out.contains("\"coeff\":"));
}

#[test]
fn json_round_trips_byte_identical() {
    // serde_json with preserve_order re-serializes in the emitted field order
    for args in [
        vec!["density", "--g", "5", "--format", "json"],
        vec!["density-table", "--g", "2", "--f", "8", "--format", "json"],
        vec!["oracle", "--g", "2", "--oracle-n", "2000", "--format", "json"],
        vec!["wud", "--g", "5", "--fmax", "8", "--format", "json"],
        vec!["census", "--g", "2", "--f", "4", "--x", "2000", "--format", "json"],
        vec!["constant", "--cutoff", "100", "--format", "json"],
    ] {
        let emitted = stdout(&args);
        let parsed: serde_json::Value = serde_json::from_str(&emitted).expect("valid json");
        assert_eq!(
            serde_json::to_string(&parsed).unwrap(),
            emitted.trim_end(),
            "round trip for {args:?}"
        );
    }
}

#[test]
fn density_table_sums_to_unrestricted_density() {
    let table = stdout(&["density-table", "--g", "2", "--f", "28", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&table).unwrap();
    let mut sum = Rational::zero();
    let rows = parsed["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 12);
    for row in rows {
        sum += parse_rational(row["coeff"].as_str().unwrap()).unwrap();
    }
    let whole = stdout(&["density", "--g", "2", "--f", "1", "--format", "json"]);
    let parsed: serde_json::Value = serde_json::from_str(&whole).unwrap();
    let expected = parse_rational(parsed["coeff"].as_str().unwrap()).unwrap();
    assert_eq!(sum, expected);
}

#[test]
fn census_csv_rows() {
    let csv = stdout(&["census", "--g", "2", "--f", "28", "--x", "100000", "--format", "csv"]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("a,count,predicted_coeff,predicted"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 12);
    for a in [3, 19, 27] {
        assert!(
            rows.iter()
                .any(|r| r.starts_with(&format!("{a},")) && r.contains(",7/82,")),
            "class {a} should be predicted at 7/82: {rows:?}"
        );
    }
}

#[test]
fn census_threads_flag_is_deterministic() {
    let one = stdout(&[
        "census", "--g", "2", "--f", "4", "--x", "50000", "--threads", "1", "--format", "json",
    ]);
    let four = stdout(&[
        "census", "--g", "2", "--f", "4", "--x", "50000", "--threads", "4", "--format", "json",
    ]);
    assert_eq!(one, four);
}

#[test]
fn sieve_cache_is_written_and_reused() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("spf.aprs1");
    let cache_str = cache.to_str().unwrap();
    let args = [
        "census", "--g", "2", "--f", "8", "--x", "20000", "--sieve-cache", cache_str, "--format",
        "csv",
    ];
    let first = stdout(&args);
    assert!(cache.exists(), "cache file written");
    let len = std::fs::metadata(&cache).unwrap().len();
    assert_eq!(len, 5 + 8 + 4 * 20001, "magic + limit + raw u32 table");
    let second = stdout(&args);
    assert_eq!(first, second);
}

#[test]
fn heuristic_tracks_census_at_small_x() {
    let out = stdout(&[
        "heuristic", "--g", "2", "--f", "1", "--a", "1", "--x", "1000000", "--format", "json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rel: f64 = parsed["relative_difference"]
        .as_str()
        .unwrap()
        .parse()
        .unwrap();
    assert!(rel < 0.02, "relative difference {rel}");
}

#[test]
fn oracle_reports_agreement() {
    let out = stdout(&[
        "oracle", "--g", "5", "--f", "5", "--a", "1", "--oracle-n", "10000", "--format", "json",
    ]);
    let parsed: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(parsed["closed_coeff"].as_str().unwrap(), "0/1");
    let value: f64 = parsed["value"].as_str().unwrap().parse().unwrap();
    let bound: f64 = parsed["tail_bound"].as_str().unwrap().parse().unwrap();
    assert!(value.abs() <= bound);
}
