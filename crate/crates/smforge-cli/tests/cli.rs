// SPDX-License-Identifier: Apache-2.0
//! End-to-end runs of the `smforge` binary.

use serde_json::Value;
use std::path::Path;
use std::process::{Command, Output};

fn smforge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_smforge"))
        .args(args)
        .env_remove("SMFORGE_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

/// Reduced forms of `d` by scanning every `(a, b)` box directly.
fn brute_forms(d: i64) -> Vec<(i64, i64, i64)> {
    let gcd = |mut x: i64, mut y: i64| {
        (x, y) = (x.abs(), y.abs());
        while y != 0 {
            (x, y) = (y, x % y);
        }
        x
    };
    let mut out = Vec::new();
    for a in 1..=d.abs() {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let reduced = a <= c && !(b < 0 && a == c);
            if reduced && gcd(gcd(a, b), c) == 1 {
                out.push((a, b, c));
            }
        }
    }
    out
}

fn schema() -> jsonschema::JSONSchema {
    let path =
        Path::new(env!("CARGO_MANIFEST_DIR")).join("../../schema/elimination_report.schema.json");
    let text = std::fs::read_to_string(path).expect("schema file ships with the repository");
    let value: Value = serde_json::from_str(&text).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(schema: &jsonschema::JSONSchema, report: &Value) {
    if let Err(errors) = schema.validate(report) {
        let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
        panic!("report violates schema: {msgs:?}");
    }
}

#[test]
fn forms_json_matches_brute_force() {
    let out = smforge(&["forms", "--disc", "-23", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let got: Vec<(i64, i64, i64)> = stdout_json(&out)
        .as_array()
        .unwrap()
        .iter()
        .map(|f| {
            (
                f["a"].as_i64().unwrap(),
                f["b"].as_i64().unwrap(),
                f["c"].as_i64().unwrap(),
            )
        })
        .collect();
    let mut want = brute_forms(-23);
    assert_eq!(want.len(), 3);
    let mut sorted = got.clone();
    sorted.sort_unstable();
    want.sort_unstable();
    assert_eq!(sorted, want);
}

#[test]
fn forms_plain_text_is_one_triple_per_line() {
    let out = smforge(&["forms", "--disc", "-56"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), brute_forms(-56).len());
    assert!(text.lines().all(|l| l.split(' ').count() == 3));
}

#[test]
fn validation_and_usage_errors_exit_two() {
    assert_eq!(smforge(&["hilbert", "--disc", "5"]).status.code(), Some(2));
    assert_eq!(smforge(&["forms", "--disc", "-5"]).status.code(), Some(2));
    assert_eq!(
        smforge(&["forms", "--disc", "-23", "--prec", "32"])
            .status
            .code(),
        Some(2)
    );
    let unknown = smforge(&["forms", "--disc", "-23", "--frobnicate"]);
    assert_eq!(unknown.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&unknown.stderr).contains("Usage"));
    assert_eq!(smforge(&["transmogrify"]).status.code(), Some(2));
    assert_eq!(
        smforge(&["y0", "--tau", "sqrt(7)", "--tau2", "sqrt(-7)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        smforge(&["eliminate", "linear", "--min", "50", "--max", "10"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn hilbert_polynomial_and_cache_flag() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let out = smforge(&["hilbert", "--disc", "-23", "--json", "--cache", cache]);
    assert_eq!(out.status.code(), Some(0));
    let coeffs = stdout_json(&out)["coefficients"].clone();
    assert_eq!(
        coeffs,
        serde_json::json!(["1", "3491750", "-5151296875", "12771880859375"])
    );
    let cached = std::fs::read_to_string(dir.path().join("hcp_23.txt")).unwrap();
    assert!(cached.starts_with("-23 3\n"));

    let plain = smforge(&["hilbert", "--disc", "-23"]);
    assert_eq!(String::from_utf8(plain.stdout).unwrap(), cached);
}

#[test]
fn y0_membership() {
    let on = smforge(&[
        "y0",
        "--tau",
        "sqrt(-2)",
        "--tau2",
        "1/2*sqrt(-2)",
        "--json",
    ]);
    assert_eq!(on.status.code(), Some(0));
    assert_eq!(stdout_json(&on)["on_y02"], Value::Bool(true));
    let off = smforge(&["y0", "--tau", "sqrt(-1)", "--tau2", "sqrt(-2)", "--json"]);
    assert_eq!(stdout_json(&off)["on_y02"], Value::Bool(false));
}

#[test]
fn indep_verdicts() {
    let out = smforge(&["indep", "--alpha", "1728", "--beta", "287496", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["status"], "independent");
    // 1728 = 2^6 3^3 and 287496 = 2^3 3^3 11^3.
    assert_eq!(v["prime"], 2);
    assert_eq!(v["valuations"], serde_json::json!([6, 3]));

    let out = smforge(&[
        "indep",
        "--alpha",
        "j(-23,1)^2",
        "--beta",
        "-j(-23,1)^3",
        "--json",
    ]);
    let v = stdout_json(&out);
    assert_eq!(v["status"], "dependent");
    assert_eq!(v["ratio"], "3/2");
    assert_eq!(v["zeta_checked"], true);

    let out = smforge(&[
        "indep", "--alpha", "j(-23,0)", "--beta", "j(-92,0)", "--json",
    ]);
    assert_eq!(stdout_json(&out)["status"], "independent");

    let bad = smforge(&["indep", "--alpha", "j(-23,3)", "--beta", "2"]);
    assert_eq!(bad.status.code(), Some(2));
    let mismatch = smforge(&["indep", "--alpha", "j(-23,0)", "--beta", "j(-31,0)"]);
    assert_ne!(mismatch.status.code(), Some(0));
}

#[test]
fn linear_range_reports_validate() {
    let dir = tempfile::tempdir().unwrap();
    let out = smforge(&[
        "eliminate",
        "linear",
        "--min",
        "20",
        "--max",
        "40",
        "--json",
        "--outdir",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let schema = schema();
    let reports = stdout_json(&out);
    let reports = reports.as_array().unwrap();
    assert!(!reports.is_empty());
    for r in reports {
        assert_valid(&schema, r);
    }
    let survivor = reports
        .iter()
        .find(|r| r["discs"] == serde_json::json!([-92, -23]))
        .unwrap();
    assert_eq!(survivor["outcome"], "survivor");
    let file = dir.path().join("linear_small_r3_-92_-23.json");
    let on_disk: Value = serde_json::from_str(&std::fs::read_to_string(file).unwrap()).unwrap();
    assert_eq!(&on_disk, survivor);
}

#[test]
fn verify_paper_is_idempotent_and_schema_valid() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let run = |dir: &Path| {
        smforge(&[
            "verify",
            "paper",
            "--json",
            "--outdir",
            dir.to_str().unwrap(),
        ])
    };
    let (first, second) = (run(a.path()), run(b.path()));
    assert_eq!(
        first.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&first.stderr)
    );
    assert_eq!(first.stdout, second.stdout);

    let summary = stdout_json(&first);
    assert_eq!(summary["matches_theorem"], true);
    assert_eq!(
        summary["linear"]["survivors"],
        serde_json::json!([[-92, -23], [-124, -31]])
    );
    assert_eq!(summary["mult"]["survivors"], serde_json::json!([]));

    let schema = schema();
    let mut names: Vec<_> = std::fs::read_dir(a.path())
        .unwrap()
        .map(|e| e.unwrap().file_name())
        .collect();
    names.sort();
    assert!(names.len() > 500);
    let mut eliminated_with_convergents = 0;
    for name in &names {
        let x = std::fs::read(a.path().join(name)).unwrap();
        let y = std::fs::read(b.path().join(name)).expect("same files in both runs");
        assert_eq!(x, y, "{name:?} differs between runs");
        let report: Value = serde_json::from_slice(&x).unwrap();
        assert_valid(&schema, &report);
        if report["outcome"] == "eliminated" && report["constants"]["convergents"].is_array() {
            eliminated_with_convergents += 1;
        }
    }
    assert!(eliminated_with_convergents > 0);
}
