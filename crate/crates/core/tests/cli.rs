//! Drives the `preproj` binary: exit codes, determinism and output formats.

use std::path::Path;
use std::process::{Command, Output};

use num_rational::BigRational;
use preproj::cli::render_table;
use preproj::json::module_to_json;
use preproj::leclerc::build_fixture;
use serde_json::Value;

fn preproj(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_preproj")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

fn write_m2(dir: &Path) -> String {
    let fx = build_fixture(&BigRational::from_integer(2.into())).unwrap();
    let path = dir.join("m2.json");
    std::fs::write(&path, serde_json::to_string_pretty(&module_to_json(&fx.m_lambda)).unwrap()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn roots_of_a5() {
    let out = preproj(&["roots", "A5"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["format"], 1);
    assert_eq!(v["count"], 15);
}

#[test]
fn unknown_type_is_a_usage_error() {
    assert_eq!(preproj(&["roots", "X9"]).status.code(), Some(2));
    assert_eq!(preproj(&["roots", "A0"]).status.code(), Some(2));
    assert_eq!(preproj(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(preproj(&["mu", "A5", "[1,7]"]).status.code(), Some(2));
}

#[test]
fn missing_and_malformed_files_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format\": 1, \"dims\": [1]").unwrap();
    let bad = bad.to_str().unwrap();
    assert_eq!(preproj(&["decompose", bad]).status.code(), Some(2));
    assert_eq!(preproj(&["decompose", "/nonexistent/m.json"]).status.code(), Some(2));
}

#[test]
fn self_extensions_of_m2() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = write_m2(dir.path());
    let out = preproj(&["ext", &m2, &m2]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!((v["direct"].clone(), v["cb"].clone(), v["agree"].clone()), (2.into(), 2.into(), true.into()));
}

#[test]
fn field_mismatch_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let m2 = write_m2(dir.path());
    assert_eq!(preproj(&["--field", "fp:2147483647", "hom", &m2, &m2]).status.code(), Some(2));
}

#[test]
fn sampling_is_deterministic() {
    let args = ["sample", "A5", "[1,2]+[2,4]+[3,3]+[4,5]", "--seed", "7"];
    let (a, b) = (preproj(&args), preproj(&args));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = preproj(&["sample", "A5", "[1,2]+[2,4]+[3,3]+[4,5]", "--seed", "8"]);
    assert_ne!(a.stdout, other.stdout);
    let v = json(&a);
    assert_eq!(v["seed"], 7);
}

#[test]
fn table_output_flattens_the_json_report() {
    for args in [vec!["roots", "D4"], vec!["mu", "A5", "[1,2]+[2,4]+[3,3]+[4,5]", "--seed", "7"]] {
        let j = preproj(&args);
        let mut targs = args.clone();
        targs.extend(["--format", "table"]);
        let t = preproj(&targs);
        assert_eq!(t.status.code(), Some(0));
        assert_eq!(String::from_utf8(t.stdout).unwrap(), render_table(&json(&j)));
    }
}

#[test]
fn sample_round_trips_through_decompose() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.json");
    let p = path.to_str().unwrap();
    assert_eq!(preproj(&["sample", "A2", "[1,1]+[2,2]", "--out", p]).status.code(), Some(0));
    let out = preproj(&["decompose", p]);
    assert_eq!(out.status.code(), Some(0));
    let label = preproj(&["label", p]);
    assert_eq!(json(&label)["alpha"], serde_json::json!([1, 0, 1]));
}

#[test]
fn mu_of_alpha() {
    let v = json(&preproj(&["mu", "A5", "[1,2]+[2,4]+[3,3]+[4,5]", "--seed", "7"]));
    assert_eq!((v["mu"].clone(), v["component_dim"].clone()), (1.into(), 12.into()));
}

#[test]
fn theorem1_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("labels.json");
    std::fs::write(&path, "[[1,0,0],[0,1,0],[0,0,1],[1,1,0]]").unwrap();
    let out = preproj(&["theorem1", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verified"], true);
    std::fs::write(&path, "[[1,0,0],[1,0,0],[0,0,1],[1,1,0]]").unwrap();
    assert_eq!(preproj(&["theorem1", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn search_over_a2() {
    let out = preproj(&["search", "A2", "--max-sum", "2", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["search"]["max_clique"], 3);
    assert_eq!(v["search"]["bound_holds"], true);
    assert_eq!(v["conjecture7"][0]["equality"], true);
}

#[test]
fn verify_leclerc_passes() {
    let out = preproj(&["verify-leclerc", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["format"], 1);
    assert_eq!(v["pass"], true);
}
