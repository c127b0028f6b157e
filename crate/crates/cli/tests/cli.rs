use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn ramlip(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ramlip")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ramlip-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

const GRID: [&str; 9] = ["grid", "--id", "RAM_SHIFTED", "--a", "0,0.25,0.5", "--s", "2.5,3", "--alpha", "3.14159,6.28318"];

#[test]
fn glaisher_check() {
    let o = ramlip(&["check", "--id", "GLAISHER", "--m", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "pass");
    assert!(v["abs_residual"].as_f64().unwrap() <= 1e-12);
    for key in ["run_id", "identity", "params", "lhs", "rhs", "rel_residual", "diagnostics", "wall_time_ms"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert!(v["lhs"]["re"].is_f64() && v["lhs"]["im"].is_f64());
    for key in ["terms", "cells", "tail_bounds"] {
        assert!(v["diagnostics"].get(key).is_some(), "missing diagnostics.{key}");
    }
}

#[test]
fn exit_codes() {
    let o = ramlip(&["check", "--id", "GLAISHER", "--m", "3", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(2));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["status"], "fail");

    let o = ramlip(&["check", "--id", "NOT_AN_ID", "--m", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("GLAISHER") && err.contains("RAM_SHIFTED"), "{err}");

    assert_eq!(ramlip(&["check", "--id", "GLAISHER"]).status.code(), Some(1));
    assert_eq!(ramlip(&["check", "--id", "GLAISHER", "--m", "3", "--s", "2"]).status.code(), Some(1));
    assert_eq!(ramlip(&["check", "--id", "GLAISHER", "--m", "3,5"]).status.code(), Some(1));
    assert_eq!(ramlip(&["check", "--id", "GLAISHER", "--m", "three"]).status.code(), Some(1));
    assert_eq!(ramlip(&["bogus"]).status.code(), Some(1));
    // an evaluation error is a failed check, not a usage error
    assert_eq!(ramlip(&["check", "--id", "GLAISHER", "--m", "4"]).status.code(), Some(2));
}

#[test]
fn grid_csv() {
    let o = ramlip(&GRID);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    assert!(lines[0].starts_with("identity,"));
    assert!(lines[0].ends_with("lhs_re,lhs_im,rhs_re,rhs_im,abs_residual,rel_residual,status"));
    for l in &lines[1..] {
        assert!(l.starts_with("RAM_SHIFTED,") && l.ends_with(",pass"), "{l}");
    }
}

#[test]
fn reports_are_deterministic() {
    let mut runs = Vec::new();
    for jobs in ["1", "1", "4"] {
        let mut args = GRID.to_vec();
        args.extend(["--format", "json", "--no-timing", "--jobs", jobs]);
        let o = ramlip(&args);
        assert_eq!(o.status.code(), Some(0));
        runs.push(stdout(&o));
    }
    assert_eq!(runs[0], runs[1]);
    assert_eq!(runs[0], runs[2]);
    let rows: Vec<Value> = serde_json::from_str(&runs[0]).unwrap();
    assert_eq!(rows.len(), 12);
    assert!(rows.iter().all(|r| r["wall_time_ms"].is_null()));
}

#[test]
fn grid_file_and_output_path() {
    let cfg = scratch("grid.cfg");
    let out = scratch("out.csv");
    std::fs::write(&cfg, "# shifted grid\nid = RAM_SHIFTED\na = 0, 0.25\ns = 3\nalpha = pi, 2pi\nformat = csv\n").unwrap();
    let o = ramlip(&["grid", "--grid-file", cfg.to_str().unwrap(), "--s", "4", "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().count(), 5);
    assert!(text.lines().nth(1).unwrap().contains(",4.0000000000000000e0,"));

    std::fs::write(&cfg, "id = GLAISHER\ncolour = blue\n").unwrap();
    assert_eq!(ramlip(&["check", "--grid-file", cfg.to_str().unwrap()]).status.code(), Some(1));
}

#[test]
fn symbolic_and_complex_values() {
    let o = ramlip(&["check", "--id", "RAM_ZETA_ODD", "--m", "1", "--alpha", "pi"]);
    assert_eq!(o.status.code(), Some(0));
    let o = ramlip(&["check", "--id", "SIGMA_2M", "--m", "1", "--y", "1+0.5i"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["params"]["y"]["im"], 0.5);
}

#[test]
fn asymptotic_fit() {
    let o = ramlip(&["asym", "--id", "WRIGHT", "--r", "2", "--x", "0.9,0.95,0.975"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["fitted_exponent"].as_f64().unwrap() - 8.0).abs() <= 0.7);
    assert_eq!(v["errors"].as_array().unwrap().len(), 3);

    let o = ramlip(&["asym", "--id", "SIGMA_2M", "--m", "1", "--r", "1", "--y", "0.4,0.2,0.1,0.05"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!((v["fitted_exponent"].as_f64().unwrap() - 5.0).abs() <= 0.5);

    assert_eq!(ramlip(&["asym", "--id", "GLAISHER", "--m", "3"]).status.code(), Some(1));
}

#[test]
fn listing() {
    let o = ramlip(&["--list"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().count(), 17);
    let o = ramlip(&["list", "--format", "json"]);
    let v: Vec<Value> = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v.len(), 17);
}
