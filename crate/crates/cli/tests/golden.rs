mod common;

use common::{cli_dir, dirac, dirac_in, golden};
use dirac_core::format::{parse_spec, write_spec, SpecFile};
use dirac_core::homsp::RobinsonDatum;
use dirac_core::linalg::{Mat, Subspace};
use dirac_core::Q;
use serde_json::Value;

/// Runs the command with `--format json`, compares the report with the
/// golden file of the same name and returns the exit code.
fn check(name: &str, args: &[&str]) -> i32 {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let first = dirac(&full);
    let second = dirac(&full);
    assert_eq!(first.stdout, second.stdout, "{name}: report is not deterministic");
    golden(&cli_dir().join("tests/golden").join(format!("{name}.json")), &first.stdout);
    let v: Value = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(v["exit_code"], first.code);
    first.code
}

#[test]
fn validate_reports() {
    assert_eq!(check("validate-E1", &["validate", "fixtures/E1.dmt.json"]), 0);
    assert_eq!(check("validate-sl2-cd", &["validate", "fixtures/sl2-cd.dmt.json"]), 0);
    assert_eq!(check("validate-E4", &["validate", "fixtures/E4.dmt.json"]), 1);
    assert_eq!(check("validate-missing", &["validate", "fixtures/missing.dmt.json"]), 2);
}

#[test]
fn e4_witness_is_the_annihilator_vector() {
    let run = dirac(&["--format", "json", "validate", "fixtures/E4.dmt.json"]);
    let v: Value = serde_json::from_str(&run.stdout).unwrap();
    let failed: Vec<&Value> = v["checks"].as_array().unwrap().iter().filter(|c| c["pass"] == false).collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["name"], "g.coisotropic");
    // ann(span e1) = span e2* and beta = I maps it to e2, outside g.
    assert_eq!(failed[0]["witness"], "annihilator vector (0, 1)");
}

#[test]
fn qpair_reports() {
    assert_eq!(check("qpair-E1", &["qpair", "fixtures/E1.dmt.json"]), 0);
    assert_eq!(check("qpair-sl2-qp", &["qpair", "fixtures/sl2-qp.dmt.json"]), 0);
}

#[test]
fn robinson_reports() {
    assert_eq!(check("robinson-E1", &["robinson", "fixtures/E1.dmt.json", "fixtures/E1-g.rob.json"]), 0);
    assert_eq!(check("robinson-E2-minus", &["robinson", "fixtures/E2.dmt.json", "fixtures/E2-minus.rob.json"]), 0);
    assert_eq!(check("robinson-sl2-cd", &["robinson", "fixtures/sl2-cd.dmt.json", "fixtures/sl2-cd-g.rob.json"]), 0);
    // c = span(1, 0) is h itself, which is not coisotropic for beta = diag(1, -1).
    let bad = std::env::temp_dir().join("dirac-golden-bad.rob.json");
    let datum = RobinsonDatum::<Q> {
        c: Subspace::span_i64(2, &[&[1, 0]]).unwrap(),
        k: Subspace::zero(2),
        k_samples: vec![Mat::identity(2)],
    };
    std::fs::write(&bad, write_spec(&SpecFile::Robinson(datum))).unwrap();
    let run = dirac(&["robinson", "fixtures/E2.dmt.json", bad.to_str().unwrap()]);
    assert_eq!(run.code, 1, "{}", run.stdout);
    assert!(run.stdout.contains("FAIL robinson.build"), "{}", run.stdout);
}

#[test]
fn search_reports() {
    let cands = ["-c", "1,0", "-c", "0,1", "-c", "1,1", "-c", "1,-1"];
    let mut args = vec!["search", "fixtures/E2.dmt.json"];
    args.extend(cands);
    assert_eq!(check("search-E2", &args), 0);
    args.push("--lagrangian");
    assert_eq!(check("search-E2-lagrangian", &args), 0);
}

#[test]
fn exit_code_two_on_bad_input() {
    let dir = std::env::temp_dir().join("dirac-golden-malformed");
    std::fs::create_dir_all(&dir).unwrap();
    std::fs::write(dir.join("bad.json"), r#"{"format_version": 1, "kind": "triple", "payload": {"beta": "1/0"}}"#).unwrap();
    assert_eq!(dirac_in(&dir, &["validate", "bad.json"]).code, 2);
    assert_eq!(dirac_in(&dir, &["validate", "nope.json"]).code, 2);
    assert_eq!(dirac(&["frobnicate"]).code, 2);
    assert_eq!(dirac(&["search", "fixtures/E2.dmt.json", "-c", "1,1/0"]).code, 2);
    // A file of the wrong kind is an input error too.
    assert_eq!(dirac(&["qpair", "fixtures/sl2.rep.json"]).code, 2);
}

#[test]
fn qpair_output_reparses_and_validates() {
    let dir = std::env::temp_dir().join("dirac-golden-qpair");
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("q.lgd.json");
    let fx = cli_dir().join("fixtures/E1.dmt.json");
    let run = dirac_in(&dir, &["qpair", fx.to_str().unwrap(), "-o", "q.lgd.json"]);
    assert_eq!(run.code, 0, "{}", run.stdout);
    assert!(run.stdout.contains("wrote q.lgd.json"));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(matches!(parse_spec::<Q>(&text).unwrap(), SpecFile::Groupoid(_)));
    assert_eq!(dirac_in(&dir, &["validate", "q.lgd.json"]).code, 0);
    assert_eq!(dirac_in(&dir, &["dualize", "q.lgd.json"]).code, 0);
}

#[test]
fn stdin_and_text_mode() {
    let text = std::fs::read_to_string(cli_dir().join("fixtures/E1.dmt.json")).unwrap();
    let mut child = std::process::Command::new(env!("CARGO_BIN_EXE_dirac"))
        .args(["validate", "-"])
        .env("DIRAC_COLOR", "0")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(text.as_bytes()).unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let s = String::from_utf8(out.stdout).unwrap();
    assert!(s.starts_with("dirac validate: 10 checks, 0 failed, exit 0\n"), "{s}");
    assert!(!s.contains('\x1b'));
}
