use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn jetlink() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_jetlink"));
    c.env_remove("JETLINK_CACHE_DIR");
    c
}

fn run(args: &[&str]) -> Output {
    jetlink().args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("json document")
}

fn strip_timing(mut v: Value) -> Value {
    v.as_object_mut().unwrap().remove("timing_ms");
    v
}

fn p2_config() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/configs/p2.toml")
}

fn write_variant(dir: &Path, name: &str, from: &str, to: &str) -> PathBuf {
    let text = std::fs::read_to_string(p2_config()).unwrap();
    let changed = text.replace(from, to);
    assert_ne!(changed, text, "replacement {from:?} did not apply");
    let path = dir.join(name);
    std::fs::write(&path, changed).unwrap();
    path
}

#[test]
fn spaces_lists_families_and_loaded_configs() {
    let doc = json(&["spaces"]);
    let ids: Vec<&str> = doc["results"].as_array().unwrap().iter().map(|r| r["id"].as_str().unwrap()).collect();
    assert!(ids.len() >= 4);
    for f in ["pn", "odd-quadric", "even-quadric", "gr"] {
        assert!(ids.contains(&f), "{ids:?}");
    }
    let cfg = p2_config();
    let doc = json(&["spaces", "--config", cfg.to_str().unwrap()]);
    assert!(doc["results"].as_array().unwrap().iter().any(|r| r["id"] == "p2" && r["kind"] == "config"));
}

#[test]
fn compute_p2_all_cycles() {
    let doc = json(&["compute", "--space", "pn", "--n", "2", "--d", "3", "--cycle", "all"]);
    for key in ["request", "space_hash", "results", "diagnostics"] {
        assert!(doc.get(key).is_some(), "missing {key}");
    }
    let r = doc["results"].as_array().unwrap();
    let by = |c: &str| r.iter().find(|x| x["cycle"] == c).unwrap().clone();
    assert_eq!(by("P1")["value"]["c2"], "-6");
    assert_eq!(by("P0")["value"]["c3"], "-9");
    assert_eq!(by("P2")["value"], serde_json::json!({}));
    assert_eq!(by("P2")["hypothesis_chern_number"], "12");
}

#[test]
fn compute_config_matches_builtin() {
    let cfg = p2_config();
    let a = json(&["compute", "--config", cfg.to_str().unwrap(), "--d", "4"]);
    let b = json(&["compute", "--space", "pn", "--n", "2", "--d", "4"]);
    let values = |d: &Value| d["results"].as_array().unwrap().iter().map(|r| r["value"].clone()).collect::<Vec<_>>();
    assert_eq!(values(&a), values(&b));
}

#[test]
fn odd_quadric_odd_cycle_is_zero() {
    let doc = json(&["compute", "--space", "odd-quadric", "--n", "1", "--d", "3", "--cycle", "Z_1"]);
    assert_eq!(doc["results"][0]["value"], serde_json::json!({}));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let parse = write_variant(dir.path(), "parse.toml", "c2 = \"b2 - b1^2\"", "c2 = \"b2 - * b1\"");
    let out = run(&["compute", "--config", parse.to_str().unwrap(), "--d", "3"]);
    assert_eq!(out.status.code(), Some(2));

    let invalid = write_variant(dir.path(), "invalid.toml", "c2 = \"b2 - b1^2\"", "c2 = \"b1^3\"");
    let out = run(&["compute", "--config", invalid.to_str().unwrap(), "--d", "3"]);
    assert_eq!(out.status.code(), Some(3));

    let out = run(&["compute", "--space", "pn", "--n", "2", "--d", "1", "--cycle", "P1"]);
    assert_eq!(out.status.code(), Some(4));

    // a group too small for its kernel: the jet Euler class leaves I₁
    let text = std::fs::read_to_string(p2_config()).unwrap();
    let small = text
        .replace("generators = [{ name = \"c2\", degree = 4 }, { name = \"c3\", degree = 6 }]", "generators = [{ name = \"c3\", degree = 6 }]")
        .replace("c2 = \"b2 - b1^2\"\n", "");
    let path = dir.path().join("small.toml");
    std::fs::write(&path, small).unwrap();
    let out = run(&["compute", "--config", path.to_str().unwrap(), "--d", "3", "--cycle", "P1"]);
    assert_eq!(out.status.code(), Some(5), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn scan_finds_d2() {
    let doc = json(&["scan", "--space", "pn", "--n", "3", "--d", "2..6"]);
    assert_eq!(doc["results"][0]["exceptional"], serde_json::json!([{ "d": 2 }]));
}

#[test]
fn check_grassmannian_returns_verdict() {
    let doc = json(&["check", "--space", "gr", "--k", "2", "--n", "5", "--d", "2"]);
    assert!(doc["results"][0]["surjective"].is_boolean());
}

#[test]
fn latex_export_matches_golden() {
    let golden = std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/p2_d3.tex")).unwrap();
    let out = run(&["--format", "latex", "export", "--space", "pn", "--n", "2", "--d", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);

    let dir = tempfile::tempdir().unwrap();
    let doc = dir.path().join("p2.json");
    std::fs::write(&doc, run(&["compute", "--space", "pn", "--n", "2", "--d", "3"]).stdout).unwrap();
    let out = run(&["--format", "latex", "export", "--input", doc.to_str().unwrap()]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), golden);
}

#[test]
fn documents_are_deterministic() {
    let args = ["compute", "--space", "even-quadric", "--n", "2", "--d", "3"];
    assert_eq!(strip_timing(json(&args)), strip_timing(json(&args)));
}

#[test]
fn cache_changes_timing_only() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["compute", "--space", "gr", "--k", "2", "--n", "4", "--d", "3"];
    let with_cache = |a: &[&str]| {
        let out = jetlink().env("JETLINK_CACHE_DIR", dir.path()).args(a).output().unwrap();
        assert!(out.status.success());
        strip_timing(serde_json::from_slice(&out.stdout).unwrap())
    };
    let cold = with_cache(&args);
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = with_cache(&args);
    std::fs::remove_dir_all(dir.path()).unwrap();
    let rebuilt = with_cache(&args);
    let plain = strip_timing(json(&args));
    assert_eq!(cold, warm);
    assert_eq!(cold, rebuilt);
    assert_eq!(cold, plain);
}

#[test]
fn lex_and_grevlex_agree() {
    let values = |order: &str| {
        let doc = json(&["--order", order, "compute", "--space", "odd-quadric", "--n", "2", "--d", "4"]);
        doc["results"].as_array().unwrap().iter().map(|r| r["value"].clone()).collect::<Vec<_>>()
    };
    assert_eq!(values("grevlex"), values("lex"));
}

#[test]
fn divisor_check_all_cycles_equal() {
    let doc = json(&["divisor-check", "--n", "2", "--d", "4"]);
    let r = doc["results"].as_array().unwrap();
    assert!(!r.is_empty());
    assert!(r.iter().all(|x| x["equal"] == true), "{r:?}");
}

#[test]
fn generic_check_reports_rank() {
    let doc = json(&["generic-check", "--space", "pn", "--n", "1", "--sample", "b1", "--sample", "2*b1", "--sample", "3*b1"]);
    assert_eq!(doc["results"][0]["span_rank"], 1);
    assert_eq!(doc["results"][0]["hyperplane_free"], true);
}

#[test]
fn selftest_passes() {
    let out = run(&["--format", "table", "selftest"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(!String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}
