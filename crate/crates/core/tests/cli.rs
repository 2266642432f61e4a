use std::path::PathBuf;
use std::process::Command;

use alexmod::diagrams::DiskArcPresentation;
use alexmod::modules::PresentedModule;
use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_alexmod"))
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

fn run(args: &[&str]) -> (i32, String) {
    let out = bin().args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap())
}

fn json(args: &[&str]) -> (i32, Value) {
    let (code, out) = run(args);
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

#[test]
fn analyze_diagram_reports() {
    let (code, v) = json(&["analyze-diagram", data("trefoil.gauss").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["module"]["invariants"]["alexander"][0], "t^2 - t + 1");
    assert_eq!(v["module"]["symmetric_alexander"][0], true);
    let (code, v) = json(&["analyze-diagram", data("virtual_example.gauss").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["module"]["dm_order"], "2");
    assert_eq!(v["module"]["classification"]["not_classical"], true);
    let (_, v) = json(&["analyze-diagram", data("trivial2.gauss").to_str().unwrap()]);
    assert_eq!(v["module"]["invariants"]["corank"], 1);
    assert_eq!(v["module"]["invariants"]["beta"], 1);
}

#[test]
fn realize_exit_codes_and_files() {
    let m = data("t_plus_one_3.json");
    let (code, v) = json(&["realize", m.to_str().unwrap(), "--partition", "1"]);
    assert_eq!((code, v["genus"].as_u64()), (0, Some(1)));
    let out = bin().args(["realize", m.to_str().unwrap(), "--partition", "0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("minimal feasible genus 1"));
    let dir = std::env::temp_dir().join(format!("alexmod-cli-{}", std::process::id()));
    let (code, _) = run(&["realize", data("free2.json").to_str().unwrap(), "--partition", "0,0,0", "--out", dir.to_str().unwrap()]);
    assert_eq!(code, 0);
    let d: DiskArcPresentation = serde_json::from_str(&std::fs::read_to_string(dir.join("diskarc.json")).unwrap()).unwrap();
    assert_eq!((d.disks(), d.arcs().len()), (3, 0));
    let g = alexmod::groups::GroupPresentation::parse(&std::fs::read_to_string(dir.join("group.txt")).unwrap()).unwrap();
    assert_eq!(g.gens(), 3);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn satoh_output_round_trips() {
    let (code, v) = json(&["satoh", data("trefoil.gauss").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["consistent"], true);
    let d: DiskArcPresentation = serde_json::from_value(v["diskarc"].clone()).unwrap();
    assert_eq!((d.disks(), d.arcs().len()), (3, 3));
}

#[test]
fn bounds_and_classify() {
    let (code, v) = json(&["bounds", data("separating_2.json").to_str().unwrap()]);
    assert_eq!((code, v["ribbon"].as_u64(), v["general"]["bound"].as_u64()), (0, Some(2), Some(1)));
    let (_, v) = json(&["bounds", data("t_plus_one_3.json").to_str().unwrap()]);
    assert_eq!((v["ribbon"].as_u64(), v["general"]["bound"].as_u64()), (Some(1), Some(0)));
    let (code, v) = json(&["classify", data("example_module.json").to_str().unwrap(), "--r", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["virtual_link"], true);
    let (code, _) = json(&["bounds", data("separating_2.json").to_str().unwrap(), "--max-order", "5"]);
    assert_eq!(code, 4);
}

#[test]
fn matrix_output_round_trips() {
    let (code, v) = json(&["analyze-matrix", data("example_module.json").to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(v["invariants"]["q_factors"][0], "t - 1");
    let (_, r) = json(&["realize", data("example_module.json").to_str().unwrap(), "--partition", "1,1"]);
    let b = &r["output"]["b_prime"];
    let cols: Vec<Vec<String>> = serde_json::from_value(b["cols"].clone()).unwrap();
    let text = serde_json::json!({ "gens": b["rows"], "relations": cols }).to_string();
    assert!(PresentedModule::from_json(&text).is_ok());
}

#[test]
fn validation_errors() {
    assert_eq!(run(&["analyze-matrix", data("example_module.json").to_str().unwrap(), "--primes", "4"]).0, 2);
    assert_eq!(run(&["analyze-matrix", "/nonexistent.json"]).0, 2);
    assert_eq!(run(&["bogus"]).0, 2);
    let bad = std::env::temp_dir().join(format!("alexmod-bad-{}.gauss", std::process::id()));
    std::fs::write(&bad, "O1+ O1+").unwrap();
    assert_eq!(run(&["satoh", bad.to_str().unwrap()]).0, 2);
    std::fs::remove_file(bad).unwrap();
}

#[test]
fn text_format_and_selftest() {
    let (code, out) = run(&["selftest", "--format", "text"]);
    assert_eq!(code, 0);
    assert!(out.contains("failed: 0"));
    assert_eq!(run(&["selftest", "--seed", "3"]).1, run(&["selftest", "--seed", "3"]).1);
}
