use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn scratch(name: &str, text: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path.to_string_lossy().into_owned()
}

fn charmod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_charmod")).args(args).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

fn without_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

#[test]
fn veronese_invariants() {
    let out = charmod(&["invariants", &fixture("veronese.cmr"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    for key in ["dim", "depth", "pd_q", "nu", "type", "cmd", "is_cm", "is_gorenstein", "betti", "hilbert_numerator"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert_eq!(r["dim"], 2);
    assert_eq!(r["depth"], 2);
    assert_eq!(r["type"], 2);
    assert_eq!(r["is_cm"], true);
    assert_eq!(r["is_gorenstein"], false);
    assert_eq!(r["betti"], serde_json::json!([[0, 0, 1], [1, 2, 3], [2, 3, 2]]));
}

#[test]
fn characteristic_module_of_residue_field() {
    let out = charmod(&["tmod", "--module", "k", &fixture("e2.cmr"), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json(&out)["results"];
    assert_eq!(r["nu"], 1);
    assert_eq!(r["hilbert_function"]["values"], serde_json::json!([1, 0, 0, 0, 0, 0]));
}

#[test]
fn thm8_on_polynomial_ring_is_verified() {
    let path = scratch("poly.cmr", "field 32003\nring x y\norder grevlex\nideal\nend\n");
    let out = charmod(&["check", "thm8", &path, "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "verified");
    assert_eq!(v["results"]["witness"]["conditions"], serde_json::json!([true; 7].to_vec()));
}

#[test]
fn refuted_check_exits_one() {
    let out = charmod(&["check", "thm8", &fixture("e2.cmr"), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["results"]["verdict"], "refuted");
}

#[test]
fn gorenstein_check_on_fixtures() {
    for f in ["hypersurface.cmr", "ci.cmr", "veronese.cmr", "e2.cmr", "stanley_reisner.cmr"] {
        let out = charmod(&["check", "gorenstein", &fixture(f), "--json"]);
        assert_eq!(out.status.code(), Some(0), "{f}");
    }
}

#[test]
fn input_errors_exit_two() {
    let bad = scratch("bad.cmr", "field 32003\nring x y\nideal\nx^2 + y\nend\n");
    let out = charmod(&["invariants", &bad]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("inhomogeneous"));
    assert_eq!(charmod(&["tmod", &fixture("e2.cmr")]).status.code(), Some(2));
    assert_eq!(charmod(&["tmod", "--module", "N", &fixture("e2.cmr")]).status.code(), Some(2));
    assert_eq!(charmod(&["check", "nonsense", &fixture("e2.cmr")]).status.code(), Some(2));
    assert_eq!(charmod(&["corpus", "nonsense"]).status.code(), Some(2));
    assert_eq!(charmod(&["invariants", "/nonexistent.cmr"]).status.code(), Some(2));
}

#[test]
fn corpus_output_is_deterministic() {
    let args = ["corpus", "monomial", "--seed", "42", "--count", "6", "--json"];
    let a = without_timing(json(&charmod(&args)));
    let b = without_timing(json(&charmod(&args)));
    assert_eq!(a, b);
    let single = Command::new(env!("CARGO_BIN_EXE_charmod"))
        .args(args)
        .env("CHARMOD_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(without_timing(json(&single)), a);
    let ids: Vec<u64> = a["results"]["instances"].as_array().unwrap().iter().map(|i| i["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, (0..6).collect::<Vec<_>>());
}

#[test]
fn check_all_reports_every_checker() {
    let out = charmod(&["check", "all", &fixture("veronese.cmr"), "--json"]);
    let v = json(&out);
    let checks = v["results"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 9);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn text_output() {
    let out = charmod(&["canonical", &fixture("veronese.cmr")]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("command: canonical\n"));
    assert!(text.contains("nu: 2"));
}

#[test]
fn hunt_runs() {
    let out = charmod(&["hunt-counterexample", "--seed", "3", "--count", "5", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["results"]["candidates"].is_array());
}
