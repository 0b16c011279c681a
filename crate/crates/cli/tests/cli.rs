use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

fn ratiolog(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_ratiolog")).args(args).output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let (code, stdout, stderr) = ratiolog(&all);
    let report = serde_json::from_str(&stdout).unwrap_or_else(|e| panic!("{e}: {stdout} {stderr}"));
    (code, report)
}

fn bfile(name: &str) -> String {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/data/bfiles");
    dir.join(name).display().to_string()
}

#[test]
fn domb_ratio_log_convex_through_181() {
    let (code, r) = json(&["check", "domb", "--property", "ratio-log-convex", "--from", "2", "--to", "181"]);
    assert_eq!(code, 0);
    assert_eq!(r["command"], "check");
    assert_eq!(r["outcome"]["holds"], true);
    assert_eq!(r["outcome"]["checked_range"], serde_json::json!([2, 181]));
}

#[test]
fn explicit_sequence_violation_has_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.json");
    std::fs::write(&path, r#"{"name": "small", "kind": "explicit", "terms": ["1", "2", "3", "4", "5"]}"#).unwrap();
    let p = path.to_str().unwrap();
    let (code, r) = json(&["check", p, "--property", "log-convex", "--from", "1", "--to", "1", "--strict"]);
    assert_eq!(code, 1);
    let v = &r["outcome"]["first_violation"];
    assert_eq!((v["index"].as_i64(), v["lhs"].as_str(), v["rhs"].as_str()), (Some(1), Some("3"), Some("4")));
    let (code, text, _) = ratiolog(&["check", p, "--property", "log-concave", "--from", "1", "--to", "3"]);
    assert_eq!(code, 0, "{text}");
}

#[test]
fn usage_and_input_errors_exit_2() {
    assert_eq!(ratiolog(&["check", "domb", "--property", "sideways", "--from", "2", "--to", "3"]).0, 2);
    assert_eq!(ratiolog(&["check", "nope", "--property", "log-convex", "--from", "2", "--to", "3"]).0, 2);
    assert_eq!(ratiolog(&["check", "domb", "--property", "log-convex", "--from", "5", "--to", "3"]).0, 2);
    assert_eq!(ratiolog(&["gamma-check", "--params", "1,2,3"]).0, 2);
    assert_eq!(ratiolog(&["certify", "motzkin"]).0, 2);
    // Zero term d_1 makes the derangement ratio check undefined there.
    let (code, _, err) = ratiolog(&["check", "derangement", "--property", "ratio-log-convex", "--from", "2", "--to", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("error"));
    assert_eq!(ratiolog(&["check", "derangement", "--property", "log-convex", "--from", "3", "--to", "50"]).0, 0);
}

#[test]
fn builtin_certificates() {
    let (code, r) = json(&["certify", "motzkin", "--builtin"]);
    assert_eq!(code, 1);
    assert_eq!(r["outcome"]["verdict"], "refuted");
    let (code, r) = json(&["certify", "domb", "--builtin"]);
    assert_eq!(code, 1);
    let failed: Vec<&str> = r["outcome"]["hypotheses"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|h| h["status"] == "fails")
        .map(|h| h["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["(iii)"]);
}

#[test]
fn certificate_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cert.json");
    // Constant r(n) = 0 violates the positive lower bound requirement.
    std::fs::write(&path, r#"{"sequence": "domb", "theorem": "minus", "r": {"num": ["0"]}, "s": {"num": ["16"]}, "N": 181}"#).unwrap();
    let (code, r) = json(&["certify", "--file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert_eq!(r["outcome"]["theorem"], "minus");
    std::fs::write(&path, r#"{"sequence": "domb", "theorem": "minus", "N": 181}"#).unwrap();
    assert_eq!(ratiolog(&["certify", "--file", path.to_str().unwrap()]).0, 2);
}

#[test]
fn json_reports_are_deterministic() {
    let args = ["certify", "fine", "--builtin", "--format", "json"];
    let strip = |s: String| {
        let mut v: Value = serde_json::from_str(&s).unwrap();
        v.as_object_mut().unwrap().remove("timing_ms");
        v
    };
    assert_eq!(strip(ratiolog(&args).1), strip(ratiolog(&args).1));
}

#[test]
fn gen_uses_cache() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let (_, first) = json(&["gen", "domb", "--count", "100", "--cache", d]);
    assert_eq!(first["outcome"]["generated"], 100);
    let (code, second) = json(&["gen", "domb", "--count", "120", "--cache", d]);
    assert_eq!(code, 0);
    assert_eq!((second["outcome"]["from_cache"].as_u64(), second["outcome"]["generated"].as_u64()), (Some(100), Some(20)));
    assert_eq!(second["outcome"]["terms"][4], "2716");
    let (_, text, _) = ratiolog(&["gen", "motzkin", "--count", "5"]);
    assert_eq!(text, "0 1\n1 1\n2 2\n3 4\n4 9\n");
}

#[test]
fn oeis_diff_against_local_bfiles() {
    for (seq, file) in [
        ("derangement", "b000166.txt"),
        ("motzkin", "b001006.txt"),
        ("fine", "b000957.txt"),
        ("franel", "b000172.txt"),
        ("domb", "b002895.txt"),
        ("catalan", "b000108.txt"),
        ("central-binomial", "b000984.txt"),
        ("fuss-catalan:3", "b001764.txt"),
    ] {
        let (code, r) = json(&["oeis-diff", seq, "--bfile", &bfile(file)]);
        assert_eq!(code, 0, "{seq}");
        assert_eq!(r["outcome"]["notes"].as_array().unwrap().len(), 0, "{seq}");
    }
    let (code, r) = json(&["oeis-diff", "motzkin", "--bfile", &bfile("b000166.txt")]);
    assert_eq!(code, 1);
    assert_eq!(r["outcome"]["notes"].as_array().unwrap().len(), 1);
}

#[test]
fn gamma_check_and_onset() {
    let (code, r) = json(&["gamma-check", "--params", "0,0,1,2,1,1", "--verify-k", "4"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"]["eligibility"]["eligible"], true);
    let (code, r) = json(&["gamma-check", "--params", "1,0,0,1,1,1"]);
    assert_eq!(code, 2);
    assert_eq!(r["outcome"]["eligibility"]["eligible"], false);
    let (code, r) = json(&["onset", "derangement", "--k", "2", "--horizon", "200"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"]["onset"], 4);
    assert_eq!(r["outcome"]["window_relative"], true);
    let (code, _) = json(&["order", "derangement", "--k", "2", "--horizon", "80", "--from", "4"]);
    assert_eq!(code, 0);
    let (code, _) = json(&["order", "derangement", "--k", "2", "--horizon", "80", "--from", "3"]);
    assert_eq!(code, 1);
}

#[test]
fn h_kernel_grid() {
    let (code, r) = json(&["h-kernel", "--p", "2", "--q", "3", "--grid", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r["outcome"]["points"].as_array().unwrap().len(), 9);
    assert_eq!(r["outcome"]["label"], "numeric evidence, not proof");
    let (code, _, _) = ratiolog(&["h-kernel", "--p", "1", "--q", "1"]);
    assert_eq!(code, 2);
    let (code, r) = json(&["h-kernel", "--p", "2", "--q", "2", "--t", "0.5,1", "--u", "-1,-0.25"]);
    assert_eq!(code, 0);
    assert_eq!(r["inputs"]["u"], serde_json::json!(["-1", "-1/4"]));
}

#[test]
fn list_names_catalog() {
    let (code, r) = json(&["list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["outcome"]["sequences"].as_array().unwrap().iter().map(|s| s["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"domb") && names.contains(&"fuss-catalan:P"));
}
