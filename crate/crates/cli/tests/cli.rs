use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn rsc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rsc"))
        .args(args)
        .env_remove("RSC_SEED")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn error_code(out: &Output) -> String {
    let v: Value = serde_json::from_slice(&out.stderr).expect("stderr is JSON");
    v["code"].as_str().unwrap().to_string()
}

fn path(p: &PathBuf) -> &str {
    p.to_str().unwrap()
}

#[test]
fn check_axioms_reports_nrs_violation() {
    let out = rsc(&["check-axioms", path(&fixture("tsm1.json"))]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    let nrs = v.as_array().unwrap().iter().find(|a| a["axiom"] == "NRS").unwrap();
    assert_eq!(nrs["holds"], false);
    assert!(!nrs["violations"].as_array().unwrap().is_empty());
}

#[test]
fn check_axioms_passes_on_detergent_csv() {
    let out = rsc(&["check-axioms", path(&fixture("detergent.csv"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out).as_array().unwrap().iter().all(|a| a["holds"] == true));
    // the detergent pattern is an IIA violation
    let out = rsc(&["check-axioms", "--axioms", "iia", path(&fixture("detergent.json"))]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn synthesize_detergent() {
    let dir = tempfile::tempdir().unwrap();
    let structure = dir.path().join("s.json");
    let out = rsc(&["synthesize", path(&fixture("detergent.json")), "--structure", path(&structure)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["structure"]["types"], serde_json::json!([["x", "y"], ["z"]]));
    assert_eq!(v["certificate"]["verified"], true);
    // the written structure feeds the freedom table
    let out = rsc(&["freedom", path(&structure)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("menu,n\n"));
}

#[test]
fn synthesize_rejects_violating_input() {
    let out = rsc(&["synthesize", path(&fixture("tsm1.json"))]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(error_code(&out), "axiom_violation");
}

#[test]
fn reveal_and_welfare() {
    let out = rsc(&["reveal", path(&fixture("worked.json"))]);
    assert_eq!(out.status.code(), Some(0));
    assert!(json(&out)["similarity_classes"].is_array());
    let out = rsc(&["welfare", path(&fixture("welfare1.json"))]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert!(v["welfare_improving"].as_array().unwrap().contains(&serde_json::json!(["z", "x"])));
    assert!(!v["pstar"].as_array().unwrap().contains(&serde_json::json!(["z", "x"])));
}

#[test]
fn culture_at_unit_policy_splits_evenly() {
    let dir = tempfile::tempdir().unwrap();
    let traj = dir.path().join("traj.csv");
    let out = rsc(&["simulate-culture", "--g", "1", "--trajectory", path(&traj)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["q_steady"], 0.5);
    assert!((v["q_final"].as_f64().unwrap() - 0.5).abs() < 1e-6);
    let csv = std::fs::read_to_string(&traj).unwrap();
    assert!(csv.starts_with("tau,q\n0,0.3\n"));
    assert_eq!(csv.lines().count(), 20_002);
}

#[test]
fn media_outcome() {
    let out = rsc(&["simulate-media", "--p", "0.48", "--lambda", "0.7", "--menu", "N"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["chosen_source"], "sigmaRR");
    assert_eq!(v["action_by_signal"][1], "r");
    let out = rsc(&["simulate-media", "--p", "0.48", "--lambda", "0.7", "--no-reactance"]);
    assert_ne!(json(&out)["chosen_source"], "sigmaRR");
    let out = rsc(&["simulate-media", "--p", "0.6", "--lambda", "0.7"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "invalid_params");
}

#[test]
fn media_sweep_flips_next_to_pstar() {
    // p* = 5/11 at λ = 0.7
    let out = rsc(&["sweep", "media", "--p-min", "0.4", "--p-max", "0.49", "--p-steps", "91"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<(f64, String)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let f: Vec<&str> = l.split(',').collect();
            (f[0].parse().unwrap(), f[3].to_string())
        })
        .collect();
    let first_rr = rows.iter().position(|(_, s)| s == "sigmaRR").unwrap();
    assert!(rows[..first_rr].iter().all(|(_, s)| s == "sigmaL"));
    assert!(rows[first_rr..].iter().all(|(_, s)| s == "sigmaRR"));
    let pstar = 5.0 / 11.0;
    assert!(rows[first_rr].0 >= pstar && rows[first_rr - 1].0 < pstar);
}

#[test]
fn culture_sweep_rises_above_threshold() {
    let out = rsc(&["sweep", "culture", "--g-min", "1.5", "--g-max", "3", "--g-steps", "4", "--horizon", "400"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let q: Vec<f64> = text.lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(q.len(), 4);
    assert!(q.windows(2).all(|w| w[1] > w[0]), "{q:?}");
}

#[test]
fn empty_range_is_rejected() {
    let out = rsc(&["sweep", "culture", "--g-min", "3", "--g-max", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "invalid_range");
}

#[test]
fn seeded_runs_are_byte_identical() {
    let args = ["--seed", "7", "sweep", "media", "--samples", "25", "--lambda-min", "0.55", "--lambda-max", "0.7"];
    let a = rsc(&args);
    let b = rsc(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let other = rsc(&["--seed", "8", "sweep", "media", "--samples", "25", "--lambda-min", "0.55", "--lambda-max", "0.7"]);
    assert_ne!(a.stdout, other.stdout);
    let env = Command::new(env!("CARGO_BIN_EXE_rsc"))
        .args(&args[2..])
        .env("RSC_SEED", "7")
        .output()
        .unwrap();
    assert_eq!(env.stdout, a.stdout);
}

#[test]
fn enumerate_small_ground_set() {
    let out = rsc(&["enumerate", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    // three pairs and one triple
    assert_eq!(v["choice_functions"], 2 * 2 * 2 * 3);
    assert_eq!(v["mismatches"], 0);
    let out = rsc(&["enumerate", "--n", "5"]);
    assert_eq!(error_code(&out), "ground_set_too_large");
}

#[test]
fn output_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("r.json");
    let out = rsc(&["reveal", path(&fixture("tsm2.csv")), "--output", path(&target)]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert!(v["reaction"].is_array());
}

#[test]
fn input_errors_have_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"options": ["a", "b"], "choices": {"a": "a", "b": "b"}}"#).unwrap();
    let out = rsc(&["check-axioms", path(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "missing_menu");
    let out = rsc(&["reveal", path(&dir.path().join("absent.json"))]);
    assert_eq!(error_code(&out), "io");
    let out = rsc(&["reveal", "--format", "csv", path(&fixture("tsm1.json"))]);
    assert_eq!(error_code(&out), "unsupported_format");
    let out = rsc(&["nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(error_code(&out), "usage");
}
