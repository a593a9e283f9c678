use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn negacap(args: &[&str]) -> Output {
    negacap_env(args, &[])
}

fn negacap_env(args: &[&str], env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_negacap"));
    cmd.args(args);
    for (k, v) in env {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn ok_stdout(args: &[&str]) -> String {
    let out = negacap(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    serde_json::from_str(&ok_stdout(args)).unwrap()
}

/// Rows of a CSV table keyed by header.
fn table(text: &str) -> Vec<std::collections::HashMap<String, f64>> {
    let mut lines = text.lines();
    let headers: Vec<&str> = lines.next().unwrap().split(',').collect();
    lines
        .map(|l| headers.iter().zip(l.split(',')).map(|(h, v)| (h.to_string(), v.parse().unwrap())).collect())
        .collect()
}

fn write(dir: &TempDir, name: &str, content: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, content).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn builtin(dir: &TempDir, name: &str, args: &[&str]) -> PathBuf {
    let p = dir.path().join(name);
    let mut full = vec!["channel", "builtin"];
    full.extend_from_slice(args);
    full.extend_from_slice(&["--out", s(&p)]);
    ok_stdout(&full);
    p
}

const PLUS_UP: &str = r#"{"rows":4,"cols":1,"re":[0.7071067811865476,0,0.7071067811865476,0],"im":[0,0,0,0]}"#;
const UP_UP: &str = r#"{"rows":4,"cols":1,"re":[1,0,0,0],"im":[0,0,0,0]}"#;

#[test]
fn cnot_is_a_perfect_entangler() {
    let dir = TempDir::new().unwrap();
    let f = builtin(&dir, "cnot.json", &["--family", "gencnot", "--beta", "pi/2"]);
    let r = json(&["channel", "analyze", s(&f)]);
    assert!((r["bounds"]["lower_l"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((r["bounds"]["upper_l"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert_eq!(r["perfect_entangler"], true);
    assert_eq!(r["ppt"], false);
}

#[test]
fn product_unitary_file_has_zero_bounds() {
    let dir = TempDir::new().unwrap();
    // (Z ⊗ X) as a single Kraus operator
    let f = write(
        &dir,
        "zx.json",
        r#"{"in_dims":[2,2],"out_dims":[2,2],"kraus":[{"c":1.0,"V":{"rows":4,"cols":4,
            "re":[0,1,0,0, 1,0,0,0, 0,0,0,-1, 0,0,-1,0],"im":[0,0,0,0, 0,0,0,0, 0,0,0,0, 0,0,0,0]}}]}"#,
    );
    let r = json(&["channel", "analyze", s(&f)]);
    for k in ["lower_n", "upper_n_coefficient", "upper_n_max", "lower_l", "upper_l"] {
        assert!(r["bounds"][k].as_f64().unwrap().abs() < 1e-12, "{k}");
    }
    assert_eq!(r["ppt"], true);
    assert_eq!(r["perfect_entangler"], false);
}

#[test]
fn three_by_three_unitary_has_finite_nonzero_bounds() {
    let dir = TempDir::new().unwrap();
    let f = builtin(&dir, "r33.json", &["--family", "rot33", "--alpha", "pi/3", "--beta", "pi/5"]);
    let r = json(&["channel", "analyze", s(&f)]);
    let (lo, hi) = (r["bounds"]["lower_l"].as_f64().unwrap(), r["bounds"]["upper_l"].as_f64().unwrap());
    assert!(lo > 1e-3 && hi.is_finite() && lo <= hi);
}

#[test]
fn non_cptp_input_is_reported_not_fatal() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "half.json",
        r#"{"in_dims":[1,2],"out_dims":[1,2],"kraus":[{"c":0.5,"V":{"rows":2,"cols":2,"re":[1,0,0,1],"im":[0,0,0,0]}}]}"#,
    );
    let r = json(&["channel", "analyze", s(&f)]);
    assert_eq!(r["trace_preserving"], false);
    assert!(r["bounds"].is_null() && r["error"].as_str().unwrap().contains("CPTP"));
    let sat = negacap(&["saturate", s(&f)]);
    assert_eq!(sat.status.code(), Some(2));
}

#[test]
fn block_rotation_sweep_follows_the_sine_law() {
    let out = ok_stdout(&["channel", "sweep", "--family", "rot22", "--alpha", "0", "--beta", "0:pi:11"]);
    let rows = table(&out);
    assert_eq!(rows.len(), 11);
    for row in rows {
        let expect = (row["beta"] - row["alpha"]).sin().abs() / 2.0;
        assert!((row["lower_n"] - expect).abs() < 1e-9);
        assert!((row["min_eig"] - expect).abs() < 1e-9 && (row["max_eig"] - expect).abs() < 1e-9);
    }
}

#[test]
fn two_by_three_coincidence_point() {
    let rows = table(&ok_stdout(&["channel", "sweep", "--family", "rot23", "--alpha", "2pi/3", "--beta", "0"]));
    assert_eq!(rows.len(), 1);
    assert!((rows[0]["min_eig"] - 0.5).abs() < 1e-9 && (rows[0]["max_eig"] - 0.5).abs() < 1e-9);
}

#[test]
fn mixture_sweeps_cross() {
    let r23 = table(&ok_stdout(&["channel", "sweep", "--family", "mix", "--pair", "rot23"]));
    assert_eq!(r23.len(), 19);
    assert!(r23.iter().any(|r| r["joint_upper_l"] > r["convex_upper_l"] + 1e-9));
    let r33 = table(&ok_stdout(&["channel", "sweep", "--family", "mix", "--pair", "rot33"]));
    assert!(r33.iter().any(|r| r["convex_upper_l"] > r["joint_upper_l"] + 1e-9));
}

#[test]
fn two_step_sweep_has_two_rows_and_lf_endings() {
    let out = ok_stdout(&["channel", "sweep", "--family", "gencnot", "--alpha", "0:1:2"]);
    assert_eq!(table(&out).len(), 2);
    assert!(!out.contains('\r') && out.ends_with('\n'));
    let first_value = out.lines().nth(1).unwrap().split(',').nth(2).unwrap();
    // d.dddddddddddddddde±x: 17 significant digits
    assert_eq!(first_value.split('e').next().unwrap().replace(['.', '-'], "").len(), 17);
}

#[test]
fn sweeps_are_reproducible_across_thread_counts() {
    let args = ["channel", "sweep", "--family", "rot23", "--alpha", "0:pi:7", "--beta", "0:1:3"];
    let one = negacap_env(&args, &[("NEGACAP_THREADS", "1")]);
    let four = negacap_env(&args, &[("NEGACAP_THREADS", "4")]);
    assert!(one.status.success() && four.status.success());
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(negacap_env(&args, &[("NEGACAP_THREADS", "zero")]).status.code(), Some(2));
}

#[test]
fn gaussian_suprema() {
    let r = json(&["gaussian", "sup", "3", "1", "1"]);
    assert!((r["sup"].as_f64().unwrap() - 0.79248).abs() < 1e-5);
    assert_eq!(json(&["gaussian", "sup", "4", "2", "2"])["sup"], "unbounded");
    let fixed = json(&["gaussian", "sup", "3", "1", "1", "--nu-d", "2"]);
    assert_eq!(fixed["sup"].as_f64().unwrap(), 0.0);
    let neg = json(&["gaussian", "sup", "3", "1", "1", "--measure", "neg"]);
    assert!((neg["sup"].as_f64().unwrap() - 0.5 * (3f64.sqrt() - 1.0)).abs() < 1e-12);
    assert_eq!(negacap(&["gaussian", "sup", "3", "2", "2"]).status.code(), Some(2));
}

#[test]
fn gaussian_sweep_approaches_the_boundary_value() {
    let out = ok_stdout(&["gaussian", "sweep", "--n", "4", "--n1", "1", "--n2", "1", "--nu-d", "0.5", "--r", "1e-6:1e6:25"]);
    let rows = table(&out);
    assert_eq!(rows.len(), 25);
    let el: Vec<f64> = rows.iter().map(|r| r["e_l"]).collect();
    assert!((el[0] - 0.5).abs() < 1e-4 && (el[24] - 0.5).abs() < 1e-4);
    // falls from the small-r end to zero at r = γ = 1 and rises again
    assert!(el[..12].windows(2).all(|w| w[1] <= w[0]) && el[12..].windows(2).all(|w| w[1] >= w[0]));
    assert_eq!(el[12], 0.0);
}

#[test]
fn gaussian_files() {
    let dir = TempDir::new().unwrap();
    let c = 0.5 * (0.8f64).cosh();
    let sh = 0.5 * (0.8f64).sinh();
    let cov = format!(
        r#"{{"n_modes":2,"hbar":1,"sigma":[[{c},0,{sh},0],[0,{c},0,{m}],[{sh},0,{c},0],[0,{m},0,{c}]]}}"#,
        m = -sh
    );
    let f = write(&dir, "tmsv.json", &cov);
    let r = json(&["gaussian", "analyze", s(&f)]);
    assert_eq!(r["valid_state"], true);
    assert!((r["log_negativity"].as_f64().unwrap() - 0.8 / std::f64::consts::LN_2).abs() < 1e-9);
    assert!((r["purity"].as_f64().unwrap() - 1.0).abs() < 1e-12);
    assert!((r["two_mode"]["nu_tilde_minus"].as_f64().unwrap() - 0.5 * (-0.8f64).exp()).abs() < 1e-12);

    let p = write(&dir, "params.json", r#"{"N":3,"nu_D":0.5,"gamma":1.0,"r":1e-8,"hbar":1}"#);
    let b = json(&["gaussian", "block", s(&p), "--n1", "1", "--n2", "1"]);
    assert!((b["log_negativity"].as_f64().unwrap() - 0.5 * 3f64.log2()).abs() < 1e-4);
    let f = b["f"].as_f64().unwrap();
    assert!((b["nu_tilde_minus"].as_f64().unwrap().powi(2) - f).abs() < 1e-8 * f);

    let bad = write(&dir, "bad.json", r#"{"N":3,"nu_D":0.1,"gamma":1.0,"r":1.0}"#);
    assert_eq!(negacap(&["gaussian", "block", s(&bad), "--n1", "1", "--n2", "1"]).status.code(), Some(3));
}

#[test]
fn saturation_reports() {
    let dir = TempDir::new().unwrap();
    let cnot = builtin(&dir, "cnot.json", &["--family", "gencnot", "--beta", "pi/2"]);
    let good = write(&dir, "plus_up.json", PLUS_UP);
    let r = json(&["saturate", s(&cnot), "--state", s(&good)]);
    assert_eq!(r["report"]["achieves_upper"], true);
    assert!((r["output_negativity"].as_f64().unwrap() - 0.5).abs() < 1e-10);
    let bad = write(&dir, "up_up.json", UP_UP);
    let r = json(&["saturate", s(&cnot), "--state", s(&bad)]);
    assert_eq!(r["report"]["achieves_upper"], false);

    let known = json(&["saturate", "--builtin", "rot22", "--alpha", "0.2", "--beta", "1.1"]);
    assert_eq!(known["prop_identity"], true);
    assert!(known["known_solutions"].as_str().unwrap().contains("pi/4"));
    let ppt = json(&["saturate", "--builtin", "rot22", "--alpha", "0.4", "--beta", "0.4"]);
    assert_eq!(ppt["prop_identity"], true);
    assert_eq!(ppt["minus_part_zero"], true);
}

#[test]
fn exit_codes() {
    let dir = TempDir::new().unwrap();
    let junk = write(&dir, "junk.json", "{not json");
    assert_eq!(negacap(&["channel", "analyze", s(&junk)]).status.code(), Some(3));
    assert_eq!(negacap(&["channel", "analyze", "/nonexistent/file.json"]).status.code(), Some(3));
    assert_eq!(negacap(&["channel", "sweep", "--family", "rot22", "--alpha", "1:0:5"]).status.code(), Some(3));
    assert_eq!(negacap(&["--base", "3", "gaussian", "sup", "3", "1", "1"]).status.code(), Some(3));
    assert_eq!(negacap(&["--hbar", "-1", "gaussian", "sup", "3", "1", "1"]).status.code(), Some(3));
    assert_eq!(negacap(&["--help"]).status.code(), Some(0));
}

#[test]
fn soundness_is_seeded_and_clean() {
    let a = json(&["soundness", "--seed", "3", "--trials", "40"]);
    assert_eq!(a["violations"], 0);
    assert!(a["max_log_negativity_excess"].as_f64().unwrap() <= 1e-9);
    let b = json(&["soundness", "--seed", "3", "--trials", "40"]);
    assert_eq!(a, b);
}

#[test]
fn output_file_and_formats() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("sup.csv");
    ok_stdout(&["--format", "csv", "--out", s(&out), "gaussian", "sup", "3", "1", "1"]);
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("field,value\n") && text.contains("sup,7.9248125036057"));
    let j: Value = serde_json::from_str(&ok_stdout(&[
        "--format", "json", "channel", "sweep", "--family", "rot22", "--alpha", "0", "--beta", "pi/2",
    ]))
    .unwrap();
    assert!((j[0]["lower_l"].as_f64().unwrap() - 1.0).abs() < 1e-9);
    let e = json(&["--base", "e", "gaussian", "sup", "3", "1", "1"]);
    assert!((e["sup"].as_f64().unwrap() - 0.5 * 3f64.ln()).abs() < 1e-12);
}
