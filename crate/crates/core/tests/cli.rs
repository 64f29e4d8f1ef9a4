use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn config(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("configs").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aperiodic")).args(args).output().expect("binary runs")
}

fn run_config(cmd: &str, cfg: &Path, extra: &[&str]) -> (i32, Value) {
    let mut args = vec![cmd, "--config", cfg.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    let json = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout)));
    (out.status.code().unwrap(), json)
}

fn write_config(dir: &Path, body: &str) -> PathBuf {
    let path = dir.join("cfg.json");
    std::fs::write(&path, body).unwrap();
    path
}

#[test]
fn classify_exit_codes() {
    assert_eq!(run_config("classify", &config("z_defaults.json"), &[]).0, 0);
    let (code, json) = run_config("classify", &config("z6_torsion.json"), &[]);
    assert_eq!((code, json["order"].as_u64()), (2, Some(3)));
    assert_eq!(run_config("classify", &config("gl_pair.json"), &[]).0, 0);
    let dir = tempfile::tempdir().unwrap();
    let boundary = write_config(dir.path(), r#"{"group": {"kind": "GL", "n": 2}, "element": [[0.6, -0.8], [0.8, 0.6]]}"#);
    assert_eq!(run_config("classify", &boundary, &[]).0, 3);
}

#[test]
fn parse_failures_exit_one_with_structured_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (code, json) = run_config("classify", &dir.path().join("missing.json"), &[]);
    assert_eq!((code, json["error"].as_str()), (1, Some("Config")));
    let bad = write_config(dir.path(), r#"{"group": {"kind": "Z"}}"#);
    assert_eq!(run_config("pipeline", &bad, &[]).0, 1);
    let bad_p = write_config(dir.path(), r#"{"group": {"kind": "Z"}, "element": 1}"#);
    let (code, json) = run_config("pipeline", &bad_p, &["--p", "0.5"]);
    assert_eq!((code, json["error"].as_str()), (1, Some("Config")));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
}

#[test]
fn pair_exit_codes() {
    assert_eq!(run_config("pair", &config("z_defaults.json"), &[]).0, 0);
    assert_eq!(run_config("pair", &config("s1xr_pullback.json"), &[]).1["compacts"][0]["N"].as_u64(), Some(103));
    let dir = tempfile::tempdir().unwrap();
    let swapped = write_config(dir.path(), r#"{"group": {"kind": "Z"}, "element": 1, "pair": {"kind": "halfline", "threshold": 100, "swap": true}}"#);
    let (code, json) = run_config("pair", &swapped, &[]);
    assert_eq!(code, 4);
    assert!(!json["compacts"][0]["counterexamples"].as_array().unwrap().is_empty());
    let empty = write_config(dir.path(), r#"{"group": {"kind": "Z"}, "element": 1, "compacts": []}"#);
    assert_eq!(run_config("pair", &empty, &[]).0, 1);
}

#[test]
fn z_pipeline_writes_report_and_curves() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let (code, json) = run_config("pipeline", &config("z_defaults.json"), &["--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(json["verdict"], Value::Bool(true));
    let notes = json["notes"].as_array().unwrap();
    assert!(notes.iter().any(|n| n.as_str().unwrap().contains("alpha = 0.5, beta = 2")));
    let csv = std::fs::read_to_string(out.join("decay_phi0_p1.csv")).unwrap();
    let lines: Vec<&str> = csv.split_terminator('\n').collect();
    assert_eq!(lines[0], "n,sup_norm_T,sup_norm_S,partial_sum_p");
    assert_eq!(lines.len(), 201);
    assert!(lines[200].starts_with("200,"));
    assert!(!csv.contains('\r'));
    let saved: Value = serde_json::from_str(&std::fs::read_to_string(out.join("report.json")).unwrap()).unwrap();
    assert_eq!(saved, json);
}

#[test]
fn identical_configs_give_identical_bytes() {
    let cfg = config("heisenberg.json");
    let a = run(&["pipeline", "--config", cfg.to_str().unwrap(), "--seed", "9"]);
    let b = run(&["pipeline", "--config", cfg.to_str().unwrap(), "--seed", "9"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["pipeline", "--config", cfg.to_str().unwrap(), "--seed", "10"]);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn torsion_pipeline_reports_obstruction_without_curves() {
    let dir = tempfile::tempdir().unwrap();
    let (code, json) = run_config("pipeline", &config("z6_torsion.json"), &["--out", dir.path().to_str().unwrap()]);
    assert_eq!(code, 2);
    let obstruction = &json["report"]["torsion_obstruction"];
    assert_eq!(obstruction["identity_holds"], Value::Bool(true));
    assert!(std::fs::read_dir(dir.path()).unwrap().all(|e| !e.unwrap().file_name().to_string_lossy().ends_with(".csv")));
}

#[test]
fn overrides_reach_the_report() {
    let (code, json) = run_config("pipeline", &config("z_defaults.json"), &["--alpha", "0.25", "--beta", "3", "--n-max", "150", "--p", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["report"]["weight"]["alpha"].as_f64(), Some(0.25));
    assert_eq!(json["report"]["weight"]["beta"].as_f64(), Some(3.0));
    assert_eq!(json["report"]["budget"]["n_max"].as_u64(), Some(150));
    assert_eq!(json["report"]["p_values"], serde_json::json!([2.0]));
    let (code, json) = run_config("pipeline", &config("z_defaults.json"), &["--alpha", "1.5"]);
    assert_eq!((code, json["error"].as_str()), (1, Some("BadParameters")));
}

#[test]
fn continuous_groups_stop_with_a_structured_error() {
    let (code, json) = run_config("pipeline", &config("gl_pair.json"), &[]);
    assert_eq!((code, json["error"].as_str()), (1, Some("NotDiscrete")));
    assert_eq!(json["stages"]["pair_validation"]["all_validated"], Value::Bool(true));
}
