use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use diracsym::symmetric_pairs::Catalog;
use serde_json::Value;

fn diracsym(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diracsym"))
        .args(args)
        .env_remove("DIRACSYM_WEYL_CAP")
        .output()
        .expect("spawn diracsym")
}

fn json(args: &[&str]) -> Value {
    let out = diracsym(args);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn f4_spectrum_json() {
    let v = json(&["spectrum", "--space", "F4_Spin9", "--output", "json"]);
    assert_eq!(v["lambda_min_sq"], "7/3");
    assert_eq!(v["n"], 16);
    assert_eq!(v["counts"]["plus"], 6);
    assert_eq!(v["friedrich_bound_sq"], "32/15");
    assert_eq!(v["structure_bounds"]["spin9"], "7/3");
}

#[test]
fn casimir_order_four() {
    let v = json(&["casimir", "--space", "F4_Spin9", "--orders", "4", "--output", "json"]);
    assert_eq!(v["values"]["4"], serde_json::json!(["1863/2", "684", "1404"]));
    assert_eq!(v["unverified_orders"], serde_json::json!([]));
    let v = json(&["casimir", "--space", "F4_Spin9", "--orders", "5", "--output", "json"]);
    assert_eq!(v["unverified_orders"], serde_json::json!([5]));
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["spectrum", "--space", "NoSuchSpace"][..],
        &["spectrum"],
        &["spectrum", "--space", "HP1", "--bogus"],
        &["casimir", "--space", "HP1"],
        &["spectrum", "--space", "CP2"],
        &["holonomy", "--space", "Gr2_C5"],
        &["verify", "--space", "NoSuchSpace"],
        &["catalog", "--catalog", "/nonexistent/catalog.json"],
    ] {
        let out = diracsym(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!stderr(&out).is_empty(), "{args:?}");
    }
    let out = diracsym(&["spectrum", "--space", "NoSuchSpace"]);
    assert!(stderr(&out).contains("NoSuchSpace"));
}

#[test]
fn cap_exceeded_exit_3() {
    let out = diracsym(&["spectrum", "--space", "E8_E7SU2", "--oracle"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(stderr(&out).contains("exceeds cap"));
    let out = Command::new(env!("CARGO_BIN_EXE_diracsym"))
        .args(["spectrum", "--space", "HP2", "--oracle"])
        .env("DIRACSYM_WEYL_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    let out = Command::new(env!("CARGO_BIN_EXE_diracsym"))
        .args(["spectrum", "--space", "HP2", "--oracle", "--weyl-cap", "100"])
        .env("DIRACSYM_WEYL_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn verify_single_space_with_small_cap() {
    let v = json(&["verify", "--space", "HP3", "--weyl-cap", "10", "--output", "json"]);
    assert_eq!(v["suites"].as_array().unwrap().len(), 1);
    assert_eq!(v["summary"]["failed"], 0);
    let oracle = v["suites"][0]["checks"].as_array().unwrap().iter().find(|c| c["name"] == "oracle").unwrap();
    assert_eq!(oracle["status"], "skipped");
}

#[test]
fn catalog_round_trip() {
    let path = scratch("export.json");
    let listing = json(&["catalog", "--export", path.to_str().unwrap(), "--output", "json"]);
    let names: Vec<String> =
        listing["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap().to_string()).collect();
    let reimported = json(&["catalog", "--catalog", path.to_str().unwrap(), "--output", "json"]);
    assert_eq!(listing, reimported);
    let p = path.to_str().unwrap();
    let all = ["verify", "--all", "--weyl-cap", "2000", "--output", "json"];
    let mut all_file = all.to_vec();
    all_file.extend(["--catalog", p]);
    let (a, b) = (json(&all), json(&all_file));
    assert_eq!(a, b);
    assert_eq!(a["suites"].as_array().unwrap().len(), names.len());
    for name in ["HP1", "G2_SO4", "F4_Spin9", "E8_E7SU2", "Gr2_C6", "CP5"] {
        let cmd = ["spectrum", "--space", name, "--output", "json"];
        let mut with_file = cmd.to_vec();
        with_file.extend(["--catalog", p]);
        assert_eq!(json(&cmd), json(&with_file), "{name}");
    }
    assert_eq!(names.len(), 23);
}

fn hp1_entry(spin: bool, structure: &str) -> String {
    format!(
        r#"[{{"name": "HP1", "cartan": {{"family": "C", "rank": 2}},
  "compact_positive_roots": [["0","2"], ["2","0"]],
  "structure": "{structure}", "kahler_also": false, "spin": {spin}, "spin_source": "asserted"}}]"#
    )
}

#[test]
fn file_entries_shadow_builtins() {
    let path = scratch("shadow.json");
    fs::write(&path, hp1_entry(true, "none")).unwrap();
    let p = path.to_str().unwrap();
    let listing = json(&["catalog", "--catalog", p, "--output", "json"]);
    let entries = listing["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 23);
    assert_eq!(entries[0]["name"], "HP1");
    assert_eq!(entries[0]["structure"], "none");
    assert_eq!(entries[0]["spin_source"], "asserted");
    let s = json(&["spectrum", "--space", "HP1", "--catalog", p, "--output", "json"]);
    assert_eq!(s["lambda_min_sq"], "2/3");
    assert_eq!(s["structure_bounds"], serde_json::json!({}));
    assert_eq!(diracsym(&["holonomy", "--space", "HP1", "--catalog", p]).status.code(), Some(2));

    fs::write(&path, hp1_entry(false, "quaternion_kahler")).unwrap();
    assert_eq!(diracsym(&["spectrum", "--space", "HP1", "--catalog", p]).status.code(), Some(2));
}

#[test]
fn closure_violation_is_rejected() {
    let mut entry = Catalog::builtin_entry("F4_Spin9").unwrap().to_entry();
    entry.name = "bad".into();
    entry.compact_positive_roots.retain(|r| r != &["0", "0", "0", "1"]);
    let path = scratch("closure.json");
    fs::write(&path, serde_json::to_string(&vec![entry]).unwrap()).unwrap();
    let out = diracsym(&["catalog", "--catalog", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let msg = stderr(&out);
    assert!(msg.contains("closure"), "{msg}");
    assert!(msg.contains("(0, 0, 1, -1)") && msg.contains("(0, 0, 0, 1)"), "{msg}");
}

#[test]
fn malformed_file_names_the_field() {
    let path = scratch("malformed.json");
    fs::write(&path, r#"[{"name": "x", "cartan": {"family": "Q", "rank": 2}}]"#).unwrap();
    let out = diracsym(&["catalog", "--catalog", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 1"), "{}", stderr(&out));
}

#[test]
fn table_output() {
    let out = diracsym(&["holonomy", "--space", "Gr2_C6"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("structure:") && text.contains("kahler") && text.contains("quaternion_kahler"));
    assert!(text.contains("×i"));
    let out = diracsym(&["catalog"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert!(lines[0].starts_with("name "));
    assert!(lines[1].starts_with("----"));
    assert_eq!(lines.len(), 2 + 23);
}

#[test]
fn holonomy_reports() {
    let v = json(&["holonomy", "--space", "Gr2_C6", "--output", "json"]);
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0]["kind"], "kahler");
    assert_eq!(reports[0]["criterion_met"], true);
    assert_eq!(reports[0]["readapted"], true);
    assert_eq!(reports[1]["kind"], "quaternion_kahler");
    assert_eq!(reports[1]["criterion_met"], true);
    assert_eq!(reports[1]["values"][0]["unit"], "×i");
    let v = json(&["holonomy", "--space", "E8_E7SU2", "--output", "json"]);
    assert_eq!(v["reports"][0]["criterion_met"], true);
    assert_eq!(v["reports"][0]["counting_identity"], true);
}
