use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use ehrhart_core::constructions::{pip_b1, pip_b2, period_polygon};
use ehrhart_core::lattice::count_lattice_points;
use ehrhart_core::RationalPolygon;
use serde_json::{json, Value};
use tempfile::TempDir;

fn lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ehrhart-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> Value {
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid json")
}

fn write_polygon(dir: &Path, name: &str, p: &RationalPolygon) -> String {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string(p).unwrap()).unwrap();
    path.to_str().unwrap().to_owned()
}

#[test]
fn periods_of_two_point_pip() {
    let dir = TempDir::new().unwrap();
    let path = write_polygon(dir.path(), "p.json", &pip_b2(1).unwrap().polygon);
    let v = stdout_json(&lab(&["periods", &path]));
    assert_eq!(v, json!({"s": [1, 1, 1], "quasi_period": 1, "j": [2, 1, 1]}));
}

#[test]
fn count_matches_library() {
    let dir = TempDir::new().unwrap();
    let polys = [
        pip_b1(2).unwrap().polygon,
        pip_b2(3).unwrap().polygon,
        period_polygon(2, 3).unwrap().polygon,
    ];
    for (i, p) in polys.iter().enumerate() {
        let path = write_polygon(dir.path(), &format!("p{i}.json"), p);
        for n in [1u64, 2, 5] {
            let v = stdout_json(&lab(&["count", &path, "--n", &n.to_string()]));
            assert_eq!(v["count"], json!(count_lattice_points(p, n)));
            let o = stdout_json(&lab(&["oracle-count", &path, "--n", &n.to_string()]));
            assert_eq!(o["count"], v["count"]);
        }
    }
}

#[test]
fn unreduced_input_is_canonicalized() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t.json");
    fs::write(&path, r#"{"vertices": [["2/6", "2/6"], ["0", "-3/3"], ["-1/3", "4/6"]]}"#).unwrap();
    let out = lab(&["dual", path.to_str().unwrap()]);
    let dual = stdout_json(&out);
    assert_eq!(dual, json!({"vertices": [["-5", "-1"], ["4", "-1"], ["1", "2"]]}));
}

#[test]
fn construct_period_is_verified() {
    let v = stdout_json(&lab(&["construct", "period", "--r", "2", "--s", "3"]));
    assert_eq!(v["verified"], json!(true));
    assert_eq!(v["claim"], json!({"period_sequence": [2, 3, 1]}));
    let p: RationalPolygon = serde_json::from_value(v["polygon"].clone()).unwrap();
    assert_eq!(p, period_polygon(2, 3).unwrap().polygon);
}

#[test]
fn construct_subcommands() {
    for args in [
        vec!["construct", "scott", "--I", "2", "--b", "7"],
        vec!["construct", "pip-b1", "--I", "3"],
        vec!["construct", "pip-b2", "--I", "3"],
        vec!["construct", "heptagon", "--s", "4"],
        vec!["construct", "triangle-q", "--r", "5"],
    ] {
        let v = stdout_json(&lab(&args));
        assert_eq!(v["verified"], json!(true), "{args:?}");
    }
}

#[test]
fn word_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t.json");
    fs::write(&path, r#"{"vertices": [["0", "-1"], ["1/3", "1/3"], ["-1/3", "2/3"]]}"#).unwrap();
    let extracted = stdout_json(&lab(&["word", "extract", path.to_str().unwrap()]));
    let word_path = dir.path().join("w.json");
    fs::write(&word_path, extracted["word"].to_string()).unwrap();
    let product = stdout_json(&lab(&["word", "product", word_path.to_str().unwrap()]));
    assert_eq!(product["identity"], json!(true));
    let path_out = stdout_json(&lab(&["word", "reconstruct", word_path.to_str().unwrap()]));
    assert_eq!(path_out["winding"], json!(1));
    let report = stdout_json(&lab(&["reflexive", path.to_str().unwrap()]));
    assert_eq!(report["pseudo_reflexive"], json!(true));
    assert_eq!(report["reflexive"], json!(false));
    assert_eq!((report["boundary"].clone(), report["dual_boundary"].clone()), (json!(1), json!(15)));
}

#[test]
fn scott_map_csv() {
    let out = lab(&["scott-map", "--max-I", "6", "--max-b", "18", "--pips"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("I,b,realizable_integral,realizable_pip_known"));
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 7 * 19);
    assert!(rows.contains(&"1,9,true,true"));
    assert!(rows.contains(&"1,1,false,true"));
    assert!(rows.contains(&"0,2,false,false"));
    assert!(rows.contains(&"6,18,true,true"));
}

#[test]
fn pip_scan_csv_is_stable() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = lab(&["pip-scan", "--max-den", "2", "--coord-bound", "1", "-o", path.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let text = fs::read_to_string(&a).unwrap();
    assert_eq!(text, fs::read_to_string(&b).unwrap());
    assert!(text.starts_with("I,b,vertices\n"));
    assert!(text.lines().count() > 1);
}

#[test]
fn empty_pip_scan_has_header() {
    let out = lab(&["pip-scan", "--max-den", "0", "--coord-bound", "3"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "I,b,vertices\n");
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    // usage errors name the flag
    let out = lab(&["construct", "period", "--r", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--s"));
    let out = lab(&["count", "p.json", "--n", "many"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("--n"));
    // validation errors
    assert_eq!(lab(&["construct", "scott", "--I", "1", "--b", "10"]).status.code(), Some(2));
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"vertices": [["0", "0"], ["1", "1"], ["2", "2"]]}"#).unwrap();
    assert_eq!(lab(&["ehrhart", bad.to_str().unwrap()]).status.code(), Some(2));
    fs::write(&bad, r#"{"vertices": [["0", "0"], ["1/0", "1"]]}"#).unwrap();
    assert_eq!(lab(&["count", bad.to_str().unwrap()]).status.code(), Some(2));
    assert_eq!(lab(&["count", "/nonexistent/p.json"]).status.code(), Some(2));
    assert_eq!(lab(&["pip-scan", "--max-den", "2", "--coord-bound", "1", "--dilate-bound", "1"]).status.code(), Some(2));
    assert_eq!(lab(&["--help"]).status.code(), Some(0));
}

#[test]
fn library_run_reports_codes() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = ehrhart_lab::run(["ehrhart-lab", "construct", "pip-b2", "--I", "2"], &mut out, &mut err);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_slice(&out).unwrap();
    assert_eq!(v["claim"], json!({"pip": {"interior": 2, "boundary": 2}}));
    let code = ehrhart_lab::run(["ehrhart-lab", "bogus"], &mut out, &mut err);
    assert_eq!(code, 2);
}
