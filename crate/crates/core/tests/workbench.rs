use std::path::Path;
use std::process::{Command, Output};

use serde_json::{json, Value};

fn hoc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hoc")).args(args).env_remove("HOC_FIXTURE_ROOT").output().unwrap()
}

fn json_report(args: &[&str]) -> Value {
    let out = hoc(&[args, &["--format", "json"]].concat());
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn table_column(report: &Value, table: &str, col: &str) -> Vec<Value> {
    let t = &report["tables"][table];
    let idx = t["columns"].as_array().unwrap().iter().position(|c| c == col).unwrap();
    t["rows"].as_array().unwrap().iter().map(|r| r[idx].clone()).collect()
}

fn write_fixture(dir: &Path, name: &str, value: Value) -> String {
    let path = dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(&value).unwrap()).unwrap();
    path.to_string_lossy().into_owned()
}

fn cyclic_fixture(n: usize, checks: Value) -> Value {
    let cayley: Vec<Vec<usize>> = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
    json!({
        "schema_version": 1,
        "kind": "finite",
        "name": format!("Z/{n}"),
        "payload": { "cayley": cayley, "generators": [1], "checks": checks },
    })
}

#[test]
fn dims_reports_first_cohomology_of_genus_one_one_cusp() {
    let r = json_report(&["dims", "--g", "1", "--s", "1", "--n", "0", "--qmax", "2"]);
    assert_eq!(r["status"], "PASS");
    let q = table_column(&r, "dims", "q");
    let h1 = table_column(&r, "dims", "dim_h1");
    let at2 = q.iter().position(|v| v == 2).unwrap();
    assert_eq!(h1[at2], 4);
}

#[test]
fn fuchsian_tower_quotient_matches_count() {
    let r = json_report(&["fuchsian", "--fixture", "g1s1", "--qmax", "3"]);
    assert_eq!(r["status"], "PASS");
    let rec = r["records"].as_array().unwrap().iter().find(|rec| {
        let name = rec["name"].as_str().unwrap();
        name.contains("q=2") && name.contains("J_q/J_(q+1)")
    });
    assert_eq!(rec.expect("quotient record")["computed"], 3);
}

#[test]
fn es_order_two_residuals_are_small() {
    let r = json_report(&["es", "--fixture", "gamma0_11", "--order", "2"]);
    assert_eq!(r["status"], "PASS");
    let residuals: Vec<f64> = r["records"]
        .as_array()
        .unwrap()
        .iter()
        .filter_map(|rec| rec["residual"].as_f64())
        .collect();
    assert!(!residuals.is_empty());
    assert!(residuals.iter().all(|&x| x < 1e-9), "{residuals:?}");
}

#[test]
fn all_output_is_deterministic() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    for (dir, threads) in [(&a, "1"), (&b, "4")] {
        let out = hoc(&["all", "--out", dir.path().to_str().unwrap(), "--threads", threads]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    }
    let mut names: Vec<_> = std::fs::read_dir(a.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    names.sort();
    assert!(names.iter().any(|n| n == "all.json"));
    for name in names {
        let x = std::fs::read(a.path().join(&name)).unwrap();
        let y = std::fs::read(b.path().join(&name)).unwrap();
        assert!(x == y, "{name:?} differs between runs");
    }
}

#[test]
fn wrong_expected_dims_fail_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let checks = json!([{ "type": "augmentation", "field": "Q", "q_max": 2, "expected_dims": [2, 1] }]);
    let path = write_fixture(dir.path(), "z3_bad", cyclic_fixture(3, checks));
    let out = hoc(&["finite", "--fixture", &path]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn singular_generator_is_named_and_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let mut fx: Value = serde_json::from_str(&std::fs::read_to_string("fixtures/gamma0_11.json").unwrap()).unwrap();
    fx.as_object_mut().unwrap().remove("checksum");
    fx["payload"]["group"]["generators"][1]["matrix"] = json!([[1, 2], [2, 4]]);
    let path = write_fixture(dir.path(), "broken", fx);
    let out = hoc(&["es", "--fixture", &path]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains('A') && err.contains("det"), "{err}");
}

#[test]
fn oversized_prime_field_tower_is_a_resource_error() {
    let dir = tempfile::tempdir().unwrap();
    let checks = json!([{ "type": "augmentation", "field": "F_2", "q_max": 2, "expected_dims": [60, 60] }]);
    let path = write_fixture(dir.path(), "z61", cyclic_fixture(61, checks));
    let out = hoc(&["finite", "--fixture", &path]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(hoc(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hoc(&["dims", "--g", "0", "--s", "1"]).status.code(), Some(2));
    assert_eq!(hoc(&["fuchsian", "--fixture", "no_such_fixture"]).status.code(), Some(2));
}

#[test]
fn config_file_and_fixture_root_env() {
    let dir = tempfile::tempdir().unwrap();
    let checks = json!([{ "type": "hq0", "field": "Q", "module": { "kind": "regular" }, "q_max": 3, "expected_dims": [1, 1, 1] }]);
    write_fixture(dir.path(), "z4", cyclic_fixture(4, checks));
    let config = dir.path().join("run.json");
    std::fs::write(&config, r#"{"fixture": "z4", "qmax": 2}"#).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_hoc"))
        .args(["finite", "--config", config.to_str().unwrap(), "--format", "json"])
        .env("HOC_FIXTURE_ROOT", dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["metadata"]["config"]["qmax"], 2);
    assert!(r["metadata"]["fixtures"].as_object().unwrap().keys().any(|k| k.contains("Z/4") || k.contains("z4")));
}
