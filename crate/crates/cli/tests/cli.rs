use std::path::PathBuf;
use std::process::{Command, Output};

use num_bigint::BigInt;
use num_rational::BigRational;
use qcorr_cli::output::rational_field;
use serde_json::Value;

fn qcorr(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcorr")).args(args).output().expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qcorr(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_str(&stdout(&full)).unwrap()
}

fn scratch(name: &str, contents: &str) -> String {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, contents).unwrap();
    path.to_string_lossy().into_owned()
}

fn bell_file() -> String {
    let h = 0.5f64.sqrt();
    scratch(
        "bell.json",
        &format!(r#"{{"factor_dims":[2,2],"dim":4,"amplitudes":[[{h},0],[0,0],[0,0],[{h},0]]}}"#),
    )
}

fn frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn young_dimensions() {
    assert_eq!(stdout(&["dims", "--young", "2,2", "--n", "4"]).trim(), "g=12 f=240 dim=20");
    assert_eq!(stdout(&["dims", "--young", "3", "--n", "2"]).trim(), "g=6 f=24 dim=4");
}

#[test]
fn witness_constants_are_exact_rationals() {
    let v = json(&["witness", "build", "--class", "dist", "--dims", "2,2"]);
    assert_eq!(v["c"], "1/2");
    assert_eq!(rational_field(&v["alpha"]), Some(frac(1, 10)));
    let g = json(&["gauss", "constant", "--d", "4"]);
    assert_eq!(g["c"], "1/4");
    assert_eq!(g["a"], "3/4");
    assert!((g["numeric"].as_f64().unwrap() - 0.25).abs() < 1e-10);
}

#[test]
fn a8_demo_line() {
    assert_eq!(stdout(&["demo", "a8-threshold"]).trim(), "p_cr = 0.727272727273 (= 8/11)");
}

#[test]
fn typicality_parameters_round_trip_through_json() {
    let v = json(&["typicality", "params", "--class", "ferm", "--d", "4", "--L", "2"]);
    assert_eq!(rational_field(&v["x"]), Some(frac(1, 21)));
    assert_eq!(rational_field(&v["c"]), Some(frac(1, 3)));
    assert_eq!(rational_field(&v["p_max_cr"]), Some(frac(3, 4)));
    assert_eq!(v["p_max_cr_value"].as_f64(), Some(0.75));
    let g = json(&["typicality", "params", "--class", "gauss", "--d", "4"]);
    assert_eq!(g["p_max_cr"], "4/5");
}

#[test]
fn monte_carlo_run_is_reproducible() {
    let args = ["typicality", "run", "--class", "dist", "--dims", "2,2", "--pmax", "0.9", "--samples", "400", "--seed", "7"];
    let a = json(&args);
    let mut sharded = args.to_vec();
    sharded.extend(["--shards", "3"]);
    let b = json(&sharded);
    assert_eq!(a["fraction"], b["fraction"]);
    assert_eq!(a["mean_value"], b["mean_value"]);
    assert_eq!(a["spectrum"], "0.9,0.0333333333333x3");
    assert!(a["fraction"].as_f64().unwrap() >= a["analytic_bound"].as_f64().unwrap() - 3.0 * a["stderr"].as_f64().unwrap());
}

#[test]
fn scan_writes_csv() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("scan.csv");
    let path = path.to_string_lossy().into_owned();
    stdout(&[
        "typicality", "scan", "--class", "dist", "--dims", "2,2", "--sweep", "pmax:0.7:1.0:0.1", "--samples", "200",
        "--csv", &path,
    ]);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("p_max,delta,analytic_bound,mc_fraction,stderr"));
    assert_eq!(lines.count(), 4);
}

#[test]
fn bell_state_concurrence_and_detection() {
    let bell = bell_file();
    let c = json(&["conc", "two-qubit", "--state", &bell]);
    assert!((c["concurrence"].as_f64().unwrap() - 1.0).abs() < 1e-10);
    assert!((c["ppt_min_eigenvalue"].as_f64().unwrap() + 0.5).abs() < 1e-10);
    let d = json(&["witness", "detect", "--class", "dist", "--dims", "2,2", "--rho", &bell]);
    assert!((d["value"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert_eq!(d["detected"], true);
    let o = json(&["cone", "detect", "--class", "dist", "--dims", "2,2", "--state", &bell]);
    assert_eq!(o["detected"], true);
}

#[test]
fn sampled_members_have_zero_invariant() {
    let member = stdout(&["class", "member", "--class", "ferm", "--d", "4", "--L", "2", "--seed", "3"]);
    let path = scratch("member.json", &member);
    let v = json(&["class", "invariant", "--class", "ferm", "--d", "4", "--L", "2", "--state", &path]);
    assert!(v["invariant"].as_f64().unwrap().abs() < 1e-12);
}

#[test]
fn cone_tables() {
    let rays = json(&["cone", "rays", "--class", "dist", "--dims", "2,2"]);
    let rays = rays.as_array().unwrap();
    assert_eq!(rays.len(), 4);
    assert!(rays.iter().all(|r| r["tight"] == 3));
    let rows = stdout(&["cone", "inequalities", "--class", "bos", "--d", "2", "--L", "2", "--format", "csv"]);
    assert_eq!(rows.lines().count(), 4);
}

#[test]
fn fermion_pair_threshold_matches_formula() {
    let v = json(&["conc", "threshold", "--family", "ferm-depol", "--d", "6", "--lambda", "0.6,0.6,0.5"]);
    let solved = v["p_cr"].as_f64().unwrap();
    assert!((solved - v["p_formula"].as_f64().unwrap()).abs() < 1e-9);
    let w = json(&["conc", "threshold", "--family", "werner"]);
    assert!((w["p_cr"].as_f64().unwrap() - 2.0 / 3.0).abs() < 1e-9);
}

#[test]
fn output_file_option() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("info.txt");
    let path = path.to_string_lossy().into_owned();
    let out = qcorr(&["class", "info", "--class", "bos", "--d", "2", "--L", "2", "--out", &path]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.contains("x=1/6"), "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        vec!["class", "info", "--class", "bos"],
        vec!["dims", "--young", "2,x", "--n", "3"],
        vec!["frobnicate"],
        vec!["gauss", "constant", "--d", "1001"],
        vec!["typicality", "params", "--class", "gauss", "--d", "4", "--sector", "both"],
        vec!["witness", "detect", "--class", "dist", "--dims", "2,2", "--rho", "/nonexistent.json"],
        vec!["demo", "suite", "--only", "12"],
    ] {
        assert_eq!(qcorr(&args).status.code(), Some(2), "{args:?}");
    }
    let bell = bell_file();
    let mismatch = qcorr(&["witness", "detect", "--class", "dist", "--dims", "2,3", "--rho", &bell]);
    assert_eq!(mismatch.status.code(), Some(2));
}

#[test]
fn parity_mixing_states_are_rejected() {
    // vacuum plus one occupied mode: coherences between the parity sectors
    let h = format!("[{},0]", 0.5f64.sqrt());
    let mut amps = vec!["[0,0]"; 16];
    amps[0] = &h;
    amps[1] = &h;
    let path = scratch("odd.json", &format!(r#"{{"factor_dims":[16],"dim":16,"amplitudes":[{}]}}"#, amps.join(",")));
    let out = qcorr(&["conc", "gauss4", "--state", &path]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}
