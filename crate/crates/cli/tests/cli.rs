use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use sha2::{Digest, Sha256};
use submeasure_core::io::write_submeasure;
use submeasure_core::zoo::gen_minimal_pathological;
use submeasure_core::Limits;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_submeasure-lab"))
        .args(args)
        .env_remove("SUBMEASURE_LAB_MAX_GROUND")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_str(&stdout(out)).unwrap()
}

fn write_minimal(dir: &Path) -> String {
    let path = dir.join("minpath.json");
    std::fs::write(&path, write_submeasure(&gen_minimal_pathological(), &Limits::default()).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

fn gen(dir: &Path, args: &[&str]) -> Value {
    let mut all = vec!["gen"];
    all.extend_from_slice(args);
    all.extend_from_slice(&["--out", dir.to_str().unwrap()]);
    json(&lab(&all))
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn pathology_of_minimal_example() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_minimal(dir.path());
    let out = lab(&["compute", "pathology", "--input", &input]);
    assert_eq!(stdout(&out), "{\"degree\":\"4/3\",\"argmax\":[0,1,2]}\n");
    assert!(out.status.success());
}

#[test]
fn hat_prints_value_and_witness() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_minimal(dir.path());
    let v = json(&lab(&["compute", "hat", "--input", &input, "--set", "0,1,2"]));
    assert_eq!(v["value"], "3/2");
    assert_eq!(v["witness"], serde_json::json!(["1/2", "1/2", "1/2"]));
}

#[test]
fn decimal_flag_adds_display_fields() {
    let dir = tempfile::tempdir().unwrap();
    let input = write_minimal(dir.path());
    let v = json(&lab(&["compute", "pathology", "--input", &input, "--decimal", "4"]));
    assert_eq!(v["degree"], "4/3");
    assert_eq!(v["degree_decimal"], "1.3333");
}

#[test]
fn gen_mazur_writes_submeasure_and_covering() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = gen(dir.path(), &["mazur", "--n", "2"]);
    assert_eq!(manifest["generator"], "mazur");
    let phi = read_json(&dir.path().join("mazur2.json"));
    assert_eq!(phi["ground"], 16);
    assert_eq!(phi["repr"]["kind"], "min_cover");
    let cov = read_json(&dir.path().join("mazur2_covering.json"));
    assert_eq!(cov["ground"], 16);
    assert_eq!(cov["family"].as_array().unwrap().len(), 4);
}

#[test]
fn gen_solecki_and_eval() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), &["solecki", "--n", "2"]);
    assert_eq!(read_json(&dir.path().join("solecki2.json"))["ground"], 6);
    gen(dir.path(), &["solecki", "--n", "3"]);
    let input = dir.path().join("solecki3.json");
    let v = json(&lab(&["compute", "eval", "--input", input.to_str().unwrap(), "--set", "all"]));
    assert_eq!(v, serde_json::json!({ "value": "5/1" }));
}

#[test]
fn gen_edfin_and_cover_stats() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), &["edfin", "--n", "2"]);
    let cov = dir.path().join("edfin2_covering.json");
    assert_eq!(read_json(&cov)["family"].as_array().unwrap().len(), 6);
    let v = json(&lab(&["compute", "cover-stats", "--input", cov.to_str().unwrap()]));
    assert_eq!(v["delta"], "1/3");
    assert_eq!(v["family_size"], 6);
}

#[test]
fn manifest_hashes_match_files() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = gen(dir.path(), &["finxempty", "--blocks", "2,3"]);
    let on_disk = read_json(&dir.path().join("manifest.json"));
    assert_eq!(manifest, on_disk);
    for f in manifest["files"].as_array().unwrap() {
        let bytes = std::fs::read(dir.path().join(f["file"].as_str().unwrap())).unwrap();
        assert_eq!(f["bytes"], bytes.len());
        assert_eq!(f["sha256"], hex::encode(Sha256::digest(&bytes)));
    }
}

#[test]
fn generation_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for args in [
        &["propertyA", "--variant", "b", "--stages", "2,2"][..],
        &["coloring", "--name", "sierpinski", "--n", "12"][..],
        &["edfin", "--n", "3"][..],
    ] {
        let ma = gen(a.path(), args);
        let mb = gen(b.path(), args);
        assert_eq!(ma, mb);
        for f in ma["files"].as_array().unwrap() {
            let name = f["file"].as_str().unwrap();
            assert_eq!(std::fs::read(a.path().join(name)).unwrap(), std::fs::read(b.path().join(name)).unwrap());
        }
    }
}

#[test]
fn input_errors_exit_with_2() {
    let dir = tempfile::tempdir().unwrap();
    let missing = lab(&["compute", "eval", "--input", "/nonexistent/file.json", "--set", "all"]);
    assert_eq!(missing.status.code(), Some(2));

    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"ground": 2, "repr": {"kind": "table", "values": [{"set": [0], "value": "x"}]}}"#).unwrap();
    let out = lab(&["compute", "eval", "--input", bad.to_str().unwrap(), "--set", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("repr.values[0].value"));

    let input = write_minimal(dir.path());
    let out = lab(&["compute", "eval", "--input", &input, "--set", "7"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn size_guard_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    gen(dir.path(), &["solecki", "--n", "3"]);
    let input = dir.path().join("solecki3.json");
    let out = lab(&["compute", "pathology", "--input", input.to_str().unwrap(), "--max-ground", "8"]);
    assert_eq!(out.status.code(), Some(3));

    let env = Command::new(env!("CARGO_BIN_EXE_submeasure-lab"))
        .args(["compute", "pathology", "--input", input.to_str().unwrap()])
        .env("SUBMEASURE_LAB_MAX_GROUND", "4")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(3));
}

#[test]
fn verify_mazur_degree_level_2() {
    let out = lab(&["verify", "mazur-degree", "--level", "2", "--format", "json"]);
    let v = json(&out);
    let rows = v["rows"].as_array().unwrap();
    assert!(!rows.is_empty());
    assert_eq!(v["passed"], true);
    assert!(rows.iter().all(|r| r["verdict"] == "pass"));
}

#[test]
fn verify_seeded_suites_are_reproducible() {
    for suite in [["banach-roundtrip", "7"], ["color1-bound", "1"]] {
        let first = lab(&["verify", suite[0], "--seed", suite[1], "--format", "csv"]);
        let second = lab(&["verify", suite[0], "--seed", suite[1], "--format", "csv"]);
        assert!(first.status.success(), "{}", suite[0]);
        assert_eq!(first.stdout, second.stdout);
        assert!(stdout(&first).lines().count() > 1);
    }
}

#[test]
fn verify_text_table_ends_with_summary() {
    let out = lab(&["verify", "minimal"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.lines().last().unwrap().contains("0 failed"));
    assert!(text.lines().filter(|l| l.starts_with("pass")).count() >= 2);
}
