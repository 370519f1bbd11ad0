//! End-to-end tests of the `grolab` binary: exit codes, file outputs and determinism.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use grolab::report::VerificationOutcome;

fn grolab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_grolab")).args(args).output().expect("failed to spawn grolab")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("terminated by signal")
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn passing_command_exits_zero() {
    let o = grolab(&["constants"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let report = VerificationOutcome::from_json(&String::from_utf8(o.stdout).unwrap()).unwrap();
    assert!(report.overall);
    let c = report.checks.iter().find(|c| c.name.contains("davie_reeds_bound")).unwrap();
    assert!((c.actual - 1.676_956_674_215_576).abs() < 1e-12);
}

#[test]
fn failing_check_exits_one_and_names_it() {
    let o = grolab(&["chain", "--beta", "4e-24"]);
    assert_eq!(code(&o), 1);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("failed check:"), "{err}");
    assert!(String::from_utf8(o.stdout).unwrap().contains("\"kg_increment\": null"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(code(&grolab(&["frobnicate"])), 2);
    assert_eq!(code(&grolab(&[])), 2);
    assert_eq!(code(&grolab(&["chain", "--epsilon", "0.5"])), 2);
    assert_eq!(code(&grolab(&["constants", "--out", "/nonexistent-dir/r.json"])), 2);
    assert_eq!(code(&grolab(&["sweep", "--param", "lambda", "--lo", "0.15", "--hi", "0.25", "--steps", "1"])), 2);
    assert_eq!(code(&grolab(&["sweep", "--param", "lambda", "--lo", "0.3", "--hi", "0.25", "--steps", "5"])), 2);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.ini");
    fs::write(&cfg, "seed = banana\n").unwrap();
    assert_eq!(code(&grolab(&["constants", "--config", path_str(&cfg)])), 2);
}

#[test]
fn chain_report_schema() {
    let o = grolab(&["chain"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
    for k in ["kappa_eff", "drop_near_coeff", "branches", "beta_star", "final_drop", "kg_increment", "certified"] {
        assert!(keys.contains(&k), "missing {k}");
    }
    assert_eq!(keys.len(), 7);
    assert_eq!(v["branches"].as_array().unwrap().len(), 3);
    assert!(v["kg_increment"].as_f64().unwrap() >= 1.596e-26);
    assert_eq!(v["certified"], serde_json::Value::Bool(false));

    let c = grolab(&["chain", "--certified"]);
    assert_eq!(code(&c), 0);
    let v: serde_json::Value = serde_json::from_slice(&c.stdout).unwrap();
    assert_eq!(v["certified"], serde_json::Value::Bool(true));
}

#[test]
fn reports_are_byte_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        let o = grolab(&["verify-all", "--seed", "11", "--out", path_str(p)]);
        assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ba, bb) = (fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(ba, bb);
    let report = VerificationOutcome::from_json(std::str::from_utf8(&ba).unwrap()).unwrap();
    assert!(report.overall);
    assert_eq!(VerificationOutcome::from_json(&report.to_json()).unwrap(), report);
    for n in 1..=10 {
        assert!(report.checks.iter().any(|c| c.name.starts_with(&format!("[{n}] "))), "criterion {n} missing");
    }
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.ini");
    fs::write(&cfg, "[chain]\nbeta = 4e-24\n").unwrap();
    assert_eq!(code(&grolab(&["chain", "--config", path_str(&cfg)])), 1);
    assert_eq!(code(&grolab(&["chain", "--config", path_str(&cfg), "--beta", "8e-25"])), 0);
}

#[test]
fn profile_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let prof = dir.path().join("p.txt");
    let o = grolab(&["profile", "--grid", "256", "--profile-out", path_str(&prof)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&prof).unwrap();
    assert!(text.starts_with("z_cut="));
    let o = grolab(&["profile", "--grid", "256", "--profile-in", path_str(&prof)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8(o.stdout).unwrap().contains("input profile"));
}

#[test]
fn explore_writes_scan_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("scan.csv");
    let o = grolab(&["explore", "--csv", path_str(&csv)]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("beta,norm_drop,drop_over_beta,derivative_limit_estimate\n"));
    assert!(!text.contains('\r'));
    let limit: f64 = text.lines().nth(1).unwrap().split(',').nth(3).unwrap().parse().unwrap();
    assert!((limit - 0.086_812_122).abs() < 1e-6, "{limit}");
}

#[test]
fn sweep_csv_output() {
    let o = grolab(&["sweep", "--param", "lambda", "--lo", "0.15", "--hi", "0.25", "--steps", "101"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("lambda,eta_star,alpha_star,bound_c\n"));
    assert_eq!(text.lines().count(), 102);
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("eps.csv");
    let o = grolab(&["sweep", "--param", "epsilon", "--lo", "1e-9", "--hi", "1e-5", "--steps", "50", "--log", "--csv", path_str(&csv)]);
    assert_eq!(code(&o), 0);
    assert_eq!(fs::read_to_string(&csv).unwrap().lines().count(), 51);
    let again = grolab(&["sweep", "--param", "lambda", "--lo", "0.15", "--hi", "0.25", "--steps", "101"]);
    assert_eq!(again.stdout, text.as_bytes());
}
