use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn humbert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_humbert")).args(args).env_remove("HUMBERT_CATALOG").output().unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    String::from_utf8_lossy(&out.stdout).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

fn strip_durations(v: &mut Value) {
    if let Some(obj) = v.as_object_mut() {
        obj.remove("duration_ms");
    }
}

#[test]
fn eval_prints_one_json_object() {
    let out = humbert(&["eval", "phi1", "--alpha", "1", "--beta", "1", "--gamma", "2", "--x", "0.5", "--y", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = &json_lines(&out)[0];
    assert_eq!(v["kind"], "phi1");
    assert!((v["value"].as_f64().unwrap() - 2.0 * 2f64.ln()).abs() < 1e-14);

    let out = humbert(&["eval", "phi3", "--beta", "1/2", "--gamma", "3/2", "--x", "0", "--y", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["value"].as_f64(), Some(1.0));
}

#[test]
fn eval_outside_domain_is_an_error() {
    let out = humbert(&["eval", "phi1", "--alpha", "1", "--beta", "1", "--gamma", "2", "--x", "1.5"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn coeffs_dump_a_triangle() {
    let out = humbert(&["coeffs", "phi2", "--profile", "generic-A", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["degree"], 3);
    assert_eq!(v["coeffs"].as_array().unwrap().len(), 10);
    assert_eq!(v["coeffs"][0], serde_json::json!([0, 0, "1"]));
}

#[test]
fn verify_single_formula_and_identity() {
    let out = humbert(&["verify", "formula", "2.36"]);
    assert_eq!(out.status.code(), Some(0));
    let reports = json_lines(&out);
    assert_eq!(reports.len(), 1);
    assert_eq!(reports[0]["status"], "pass");
    assert_eq!(reports[0]["settings"]["degree"], 8);

    let out = humbert(&["verify", "identity", "2.20", "--profile", "generic-B", "--n", "6"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["target"], "identity");

    assert_eq!(humbert(&["verify", "formula", "9.99"]).status.code(), Some(2));
}

#[test]
fn verify_all_is_deterministic() {
    let a = humbert(&["verify", "all"]);
    let b = humbert(&["verify", "all"]);
    assert_eq!(a.status.code(), Some(0));
    let (mut ra, mut rb) = (json_lines(&a), json_lines(&b));
    assert_eq!(ra.len(), 70);
    assert_eq!(ra.iter().filter(|r| r["target"] == "formula").count(), 35);
    ra.iter_mut().chain(rb.iter_mut()).for_each(strip_durations);
    assert_eq!(ra, rb);
}

#[test]
fn integral_check_single_and_all() {
    let out = humbert(&["integral-check", "4.1", "--grid", "3x3", "--tol", "1e-8"]);
    assert_eq!(out.status.code(), Some(0));
    let r = &json_lines(&out)[0];
    assert_eq!(r["mode"], "numeric");
    assert_eq!(r["numeric"]["points"], 9);

    let out = humbert(&["integral-check", "4.2", "--grid", "0.1,0.1;0.2,0.05"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["numeric"]["points"], 2);

    // Two entries fail as printed.
    let out = humbert(&["integral-check", "all"]);
    assert_eq!(out.status.code(), Some(1));
    let reports = json_lines(&out);
    assert_eq!(reports.len(), 20);
    let failing: Vec<&str> = reports.iter().filter(|r| r["status"] != "pass").map(|r| r["id"].as_str().unwrap()).collect();
    assert_eq!(failing, ["4.14", "4.15"]);

    let out = humbert(&["integral-check", "all", "--with-corrections"]);
    let reports = json_lines(&out);
    assert_eq!(reports.len(), 22);
    let corrected: Vec<&Value> = reports.iter().filter(|r| r["settings"]["variant"] == "corrected").collect();
    assert_eq!(corrected.len(), 2);
    assert!(corrected.iter().all(|r| r["status"] == "pass"));
}

#[test]
fn errata_lists_corrected_integrals() {
    let out = humbert(&["errata"]);
    let ids: Vec<String> = json_lines(&out).iter().map(|r| r["id"].as_str().unwrap().to_string()).collect();
    assert!(ids.iter().any(|i| i == "4.14"));
    assert!(ids.iter().any(|i| i == "4.15"));
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const BAD_PROFILE: &str = r#"{
  "profiles": {
    "tight": {
      "values": {
        "alpha": "1/3", "beta": "1/5", "gamma": "1/4", "gamma1": "5/4", "gamma2": "7/6",
        "beta1": "1/4", "beta2": "1/7", "alpha1": "1/4", "alpha2": "2/7",
        "eps": "3/4", "eps1": "2/5", "eps2": "1/3", "h": "11/31", "g": "13/37"
      }
    }
  }
}"#;

#[test]
fn constraint_violation_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", BAD_PROFILE);
    let out = humbert(&["--config", &cfg, "integral-check", "4.1", "--profile", "tight"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("gamma - alpha"));
}

fn broken_catalog() -> String {
    let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/data/catalog.json")).unwrap();
    let broken = text.replacen(r#""param": "eps - alpha""#, r#""param": "eps - alpha + 1""#, 1);
    assert_ne!(broken, text);
    broken
}

#[test]
fn catalog_env_override_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "catalog.json", &broken_catalog());
    let out = Command::new(env!("CARGO_BIN_EXE_humbert"))
        .args(["verify", "formula", "2.36"])
        .env("HUMBERT_CATALOG", &path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let r = &json_lines(&out)[0];
    assert_eq!(r["status"], "fail");
    assert!(r["mismatch"]["m"].as_u64().unwrap() + r["mismatch"]["n"].as_u64().unwrap() <= 1);
}

#[test]
fn overlay_from_config_is_reported_beside_the_original() {
    let dir = tempfile::tempdir().unwrap();
    let embedded: Value = serde_json::from_str(include_str!("../data/catalog.json")).unwrap();
    let fix: Vec<&Value> = embedded.as_array().unwrap().iter().filter(|f| f["id"] == "2.36").collect();
    write(dir.path(), "fix.json", &serde_json::to_string(&fix).unwrap());
    let mut cfg: Value = serde_json::from_str(include_str!("../data/profiles.json")).unwrap();
    cfg["errata_overlay"] = "fix.json".into();
    let cfg = write(dir.path(), "cfg.json", &cfg.to_string());
    let path = write(dir.path(), "catalog.json", &broken_catalog());

    let out = Command::new(env!("CARGO_BIN_EXE_humbert"))
        .args(["--config", &cfg, "verify", "formula", "2.36"])
        .env("HUMBERT_CATALOG", &path)
        .output()
        .unwrap();
    let reports = json_lines(&out);
    assert_eq!(reports.len(), 2, "{}", String::from_utf8_lossy(&out.stderr));
    assert_eq!(reports[0]["settings"]["variant"], "as-printed");
    assert_eq!(reports[1]["settings"]["variant"], "overlay");
    assert_eq!(reports[1]["status"], "pass");
}
