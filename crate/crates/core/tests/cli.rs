//! Exit-code contract and output of the command-line front end.

use std::path::{Path, PathBuf};
use std::process::Command;

use umbilic::cli::run;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn umbilic(args: &[&str]) -> Outcome {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("umbilic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

const PENCIL: &str = r#"{"transversal":{"kind":"geodesic"},"closed_form":{"name":"pencil"},"window":[-3,3],"n":121}"#;

fn steep_pencil() -> String {
    let samples: Vec<String> = (0..41)
        .map(|i| {
            let t = -1.0 + 0.05 * i as f64;
            format!(r#"{{"t":{t},"h":{}}}"#, -(2.0 * t).tanh())
        })
        .collect();
    format!(
        r#"{{"transversal":{{"kind":"geodesic"}},"samples":[{}]}}"#,
        samples.join(",")
    )
}

#[test]
fn validate_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "pencil.route", PENCIL);
    let o = umbilic(&["validate", good.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    let report: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(report["valid"], true);
    assert!(report["worst_slack"].as_f64().unwrap().abs() <= 1e-9);
    assert!(report["schema"]
        .as_str()
        .unwrap()
        .starts_with("umbilic-report/"));

    let o = umbilic(&["validate", "--mode", "c1", good.to_str().unwrap()]);
    assert_eq!(o.code, 0);

    let bad = write(dir.path(), "bad.route", &steep_pencil());
    let o = umbilic(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    let report: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    let violations = report["violations"].as_array().unwrap();
    assert_eq!(
        report["violation_count"].as_u64().unwrap() as usize,
        violations.len()
    );
    assert!(!violations.is_empty());
    assert!(violations
        .iter()
        .all(|v| v["slack"].as_f64().unwrap() < 0.0));
}

#[test]
fn input_errors_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let broken = write(
        dir.path(),
        "broken.route",
        r#"{"transversal":{"kind":"geodesic"},"samples":[{"t":1,"h":0},{"t":0,"h":0}]}"#,
    );
    let o = umbilic(&["validate", broken.to_str().unwrap()]);
    assert_eq!(o.code, 1);
    assert!(o.err.contains("samples"), "{}", o.err);

    let o = umbilic(&["validate", "/definitely/not/here.route"]);
    assert_eq!(o.code, 1);
    assert_eq!(umbilic(&["validate", "--bogus", "x"]).code, 1);
    assert_eq!(umbilic(&["frobnicate"]).code, 1);
    assert_eq!(umbilic(&[]).code, 1);
    assert_eq!(umbilic(&["--help"]).code, 0);
}

#[test]
fn audit_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let good = write(dir.path(), "pencil.route", PENCIL);
    let o = umbilic(&["audit", good.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    let report: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(report["checked_pairs"], 121 * 120 / 2);

    let bad = write(dir.path(), "bad.route", &steep_pencil());
    // rejected without --force
    assert_eq!(umbilic(&["audit", bad.to_str().unwrap()]).code, 1);
    let o = umbilic(&["audit", "--force", bad.to_str().unwrap()]);
    assert_eq!(o.code, 2);
    let report: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert!(!report["intersections"].as_array().unwrap().is_empty());
}

#[test]
fn hypercycle_audit_with_extension() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"transversal":{"kind":"hypercycle","phi":0.7},"closed_form":{"name":"pencil"},"window":[-2,2],"n":21}"#;
    let f = write(dir.path(), "h.route", doc);
    let o = umbilic(&["audit", "--extend", "5", f.to_str().unwrap()]);
    assert_eq!(o.code, 0, "{}", o.err);
    let report: serde_json::Value = serde_json::from_str(&o.out).unwrap();
    assert_eq!(report["extension_leaves"], 10);
}

#[test]
fn leaves_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "pencil.route", PENCIL);
    let o = umbilic(&["leaves", f.to_str().unwrap()]);
    assert_eq!(o.code, 0);
    let lines: Vec<&str> = o.out.lines().collect();
    assert_eq!(lines.len(), 122);
    assert!(lines[0].starts_with("t\th\tbeta"));
    let cols: Vec<&str> = lines[61].split('\t').collect();
    assert_eq!(cols[3], "totally_geodesic");
    let a_minus: f64 = cols[9].parse().unwrap();
    assert!((a_minus + 1.0).abs() < 1e-9);
}

#[test]
fn render_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let doc = r#"{"transversal":{"kind":"geodesic"},"closed_form":{"name":"pencil"},"window":[-2,2],"n":41}"#;
    let f = write(dir.path(), "pencil.route", doc);
    let (a, b) = (dir.path().join("a.svg"), dir.path().join("b.svg"));
    for out in [&a, &b] {
        let o = umbilic(&[
            "render",
            "--viewport",
            "-3,3,3,600,300",
            "--out",
            out.to_str().unwrap(),
            f.to_str().unwrap(),
        ]);
        assert_eq!(o.code, 0, "{}", o.err);
    }
    let (a, b) = (std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
    assert_eq!(a, b);
    let text = String::from_utf8(a).unwrap();
    let doc = roxmltree::Document::parse(&text).unwrap();
    let leaves = doc
        .descendants()
        .filter(|n| n.has_tag_name("path") && n.attribute("class") == Some("leaf"))
        .count();
    assert_eq!(leaves, 41);
    assert_eq!(
        umbilic(&["render", "--viewport", "1,1,1,1,1", f.to_str().unwrap()]).code,
        1
    );
}

#[test]
fn lemma_check_reports_full_agreement() {
    let o = umbilic(&["lemma-check", "--seed", "7", "--n", "10000"]);
    assert_eq!(o.code, 0, "{}", o.out);
    for line in o.out.lines() {
        let frac = line
            .split("agreement ")
            .nth(1)
            .unwrap()
            .split(' ')
            .next()
            .unwrap();
        let (a, b) = frac.split_once('/').unwrap();
        assert_eq!(a, b);
        assert!(b.parse::<usize>().unwrap() > 9_900);
    }
}

#[test]
fn examples_lists_builtins() {
    let o = umbilic(&["examples"]);
    assert_eq!(o.code, 0);
    for name in umbilic::foliation::BuiltinFamily::NAMES {
        assert!(o.out.contains(name));
    }
}

#[test]
fn binary_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.route", &steep_pencil());
    let status = Command::new(env!("CARGO_BIN_EXE_umbilic"))
        .args(["validate", bad.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(env!("CARGO_BIN_EXE_umbilic"))
        .arg("--nope")
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(1));
}
