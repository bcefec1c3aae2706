//! End-to-end checks of the `staircase` binary: output schemas, exit codes,
//! cache behavior, byte-stable JSON.

use std::process::{Command, Output};

fn staircase(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_staircase"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8_lossy(&output.stdout).into_owned()
}

#[test]
fn transfer_json_schema() {
    let out = staircase(&["transfer", "--t", "2", "--char-poly", "--eval", "3", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["t"], 2);
    assert_eq!(value["partitions"], serde_json::json!([[2], [1, 1]]));
    assert_eq!(value["matrix"], serde_json::json!([["2", "1"], ["1", "3"]]));
    assert_eq!(value["char_poly"], serde_json::json!(["5", "-5", "1"]));
    assert_eq!(value["evaluation"]["value"], "10");
}

#[test]
fn count_command_counts() {
    let out = staircase(&["count", "--n", "3", "--t", "1", "--no-cache", "--json"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["count"], "4");
    let brute = staircase(&["count", "--n", "3", "--t", "1", "--no-cache", "--brute", "--json"]);
    let bvalue: serde_json::Value = serde_json::from_str(&stdout(&brute)).unwrap();
    assert_eq!(bvalue["count"], "4");
    assert_eq!(bvalue["method"], "brute");
}

#[test]
fn zero_forced_count_with_interior_flag_conflicts() {
    let out = staircase(&[
        "count", "--n", "4", "--t", "2", "--zero", "2,2", "--interior", "--no-cache",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn usage_error_exit_code() {
    let out = staircase(&["count", "--n", "3"]); // missing --t
    assert_eq!(out.status.code(), Some(2));
    let bad_cell = staircase(&["count", "--n", "3", "--t", "1", "--zero", "9,9", "--no-cache"]);
    assert_eq!(bad_cell.status.code(), Some(2));
}

#[test]
fn guard_exit_code() {
    let out = staircase(&["transfer", "--t", "31"]);
    assert_eq!(out.status.code(), Some(3));
    let arrays = staircase(&["arrays", "--n", "9", "--no-cache"]);
    assert_eq!(arrays.status.code(), Some(3));
}

#[test]
fn ehrhart_json_is_byte_stable_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let cache_path = dir.path().join("cache.json");
    let cache = cache_path.to_str().unwrap();
    let first = staircase(&["ehrhart", "--n", "5", "--json", "--cache", cache]);
    assert!(first.status.success());
    assert!(cache_path.exists(), "cache file written");
    let second = staircase(&["ehrhart", "--n", "5", "--json", "--cache", cache]);
    assert_eq!(stdout(&first), stdout(&second), "byte-stable output");
    let text = std::fs::read_to_string(&cache_path).unwrap();
    let value: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert!(value["entries"].get("e/n=5/t=1").is_some(), "cache holds e(5,t) entries: {text}");
}

#[test]
fn decomp_dump_matches_reference_layout() {
    let out = staircase(&[
        "decomp",
        "--n",
        "6",
        "--alpha",
        "0;0 1;0 0 2;0 0 1 2",
        "--dump-triangle",
        "--json",
    ]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["cells"], 140);
    let triangle: Vec<String> = value["alpha"]["triangle"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(
        triangle,
        vec![
            "AFGHIJKLMN",
            "B FJKLN",
            "C GM BJN",
            "DO H K BCM",
            "E I L GN BCO"
        ]
    );
    assert_eq!(value["alpha"]["legend"]["O"], "x55");
}

#[test]
fn corrupted_fixture_fails_the_diagonal_check() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("fixtures.json");
    let mut raw: serde_json::Value =
        serde_json::from_str(include_str!("../data/facet_fixtures.json")).unwrap();
    raw["diagonals"]["8"][0] = serde_json::json!("83161");
    std::fs::write(&path, serde_json::to_string(&raw).unwrap()).unwrap();
    let out = staircase(&[
        "facets",
        "--n",
        "3",
        "--checks",
        "c2a",
        "--fixtures",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1), "stdout: {}", stdout(&out));
    assert!(stdout(&out).contains("a-identity=false"));
}

#[test]
fn config_file_supplies_defaults_and_flags_win() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("config.json");
    std::fs::write(&path, r#"{"json": true, "no_cache": true, "seed": 3}"#).unwrap();
    let cfg = path.to_str().unwrap();
    let out = staircase(&["count", "--n", "3", "--t", "2", "--config", cfg]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(value["count"], "10");
    // --pretty on the command line beats the config's json=true.
    let pretty = staircase(&["count", "--n", "3", "--t", "2", "--config", cfg, "--pretty"]);
    assert!(stdout(&pretty).starts_with("lattice points"));
    // Unknown fields and missing files are usage errors.
    std::fs::write(&path, r#"{"jsonn": true}"#).unwrap();
    let bad = staircase(&["count", "--n", "3", "--t", "2", "--config", cfg]);
    assert_eq!(bad.status.code(), Some(2));
    let missing = staircase(&["count", "--n", "3", "--t", "2", "--config", "/no/such/file"]);
    assert_eq!(missing.status.code(), Some(2));
}

#[test]
fn facets_text_output_lists_the_triangle() {
    let out = staircase(&["facets", "--n", "4", "--checks", "rect"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1\n  2 1"), "triangle rows present: {text}");
    assert!(text.contains("rectangular 2x2 relations: hold"));
    // JSON output is byte-stable run to run.
    let a = staircase(&["facets", "--n", "4", "--checks", "all", "--json"]);
    let b = staircase(&["facets", "--n", "4", "--checks", "all", "--json"]);
    assert_eq!(stdout(&a), stdout(&b));
}
