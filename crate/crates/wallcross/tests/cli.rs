//! End-to-end tests of the command-line interface: output shapes, exit
//! codes, and the error messages promised for invalid input.

use std::process::{Command, Output};

use serde_json::Value;

fn wallcross(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wallcross"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> Value {
    let output = wallcross(args);
    assert!(
        output.status.success(),
        "expected success for {args:?}, stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

fn expect_invalid(args: &[&str], message_fragment: &str) {
    let output = wallcross(args);
    assert_eq!(output.status.code(), Some(2), "args: {args:?}");
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(
        stderr.contains(message_fragment),
        "stderr for {args:?} was: {stderr}"
    );
}

#[test]
fn walls_json_lists_twelve_walls() {
    let value = stdout_json(&["walls", "--c-max", "3", "--json"]);
    let walls = value.as_array().unwrap();
    assert_eq!(walls.len(), 12);
    assert_eq!(
        walls[3],
        serde_json::json!({"a": 1, "b": 1, "c": 1, "eps": 1})
    );
}

#[test]
fn walls_respect_orientation_flag() {
    let standard = stdout_json(&["walls", "--c-max", "1", "--json"]);
    let reversed = stdout_json(&[
        "walls",
        "--c-max",
        "1",
        "--json",
        "--homology-orientation",
        "-",
    ]);
    for (s, r) in standard
        .as_array()
        .unwrap()
        .iter()
        .zip(reversed.as_array().unwrap())
    {
        let se = s["eps"].as_i64().unwrap();
        let re = r["eps"].as_i64().unwrap();
        assert_eq!(se, -re);
    }
}

#[test]
fn invariant_json_reports_second_point_crossings() {
    let value = stdout_json(&[
        "invariant",
        "--word",
        "-,+",
        "--start",
        "poincare:-1/2,-1/2",
        "--symbol",
        "X0",
        "--json",
    ]);
    assert_eq!(value["gamma_dot_W"].as_i64().unwrap(), -2);
    assert_eq!(value["doubled_total"].as_i64().unwrap(), -4);
    let doubled: Vec<i64> = value["crossings"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["doubled"].as_i64().unwrap())
        .collect();
    assert_eq!(doubled, vec![2, -2, -2, -2]);
    assert_eq!(value["ring"].as_str().unwrap(), "Z");
    assert_eq!(value["expression"]["terms"]["X0"].as_i64().unwrap(), -4);
    assert_eq!(
        value["end"],
        serde_json::json!({"x": "18", "y": "30", "z": "35"})
    );
}

#[test]
fn invariant_orientation_flag_flips_the_count() {
    let value = stdout_json(&[
        "invariant",
        "--word",
        "-,+",
        "--json",
        "--homology-orientation",
        "-",
    ]);
    assert_eq!(value["gamma_dot_W"].as_i64().unwrap(), 2);
    assert_eq!(value["expression"]["terms"]["X0"].as_i64().unwrap(), 4);
}

#[test]
fn invariant_accepts_explicit_triples() {
    let value = stdout_json(&["invariant", "--word", "1,1,1;-1,1,1", "--json"]);
    // The reverse word sends the base point the other way: gamma +2.
    assert_eq!(value["gamma_dot_W"].as_i64().unwrap(), 2);
}

#[test]
fn invariant_human_output_names_the_count() {
    let output = wallcross(&["invariant", "--word", "-,+"]);
    assert!(output.status.success());
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("gamma . W = -2"));
    assert!(stdout.contains("-4*X0 (ring Z)"));
}

#[test]
fn sw_json_matches_documented_shape() {
    let output = wallcross(&["sw", "--b-plus-x", "3", "--json"]);
    assert!(output.status.success());
    assert_eq!(
        String::from_utf8_lossy(&output.stdout).trim(),
        r#"{"parity":1,"ring":"Z2","epsilon_parity":1}"#
    );
}

#[test]
fn dim_defaults_to_the_base_bundle() {
    let value = stdout_json(&["dim", "--json"]);
    assert_eq!(value["dimension"].as_i64().unwrap(), -4);
    let value = stdout_json(&["dim", "--p1", "-6", "--b-plus", "3", "--json"]);
    assert_eq!(value["dimension"].as_i64().unwrap(), 0);
}

#[test]
fn reflect_reports_the_image_class() {
    let value = stdout_json(&["reflect", "--sigma", "+", "--class", "0,0,1", "--json"]);
    assert_eq!(value, serde_json::json!([2, 2, 3]));
    let output = wallcross(&["reflect", "--sigma", "-", "--class", "0,0,1"]);
    assert!(String::from_utf8_lossy(&output.stdout).contains("3s - 2e1 + 2e2"));
}

#[test]
fn diffeo_reports_matrix_and_orientation_data() {
    let value = stdout_json(&["diffeo", "--word", "-,+", "--json"]);
    assert_eq!(
        value["matrix"],
        serde_json::json!([1, -4, 4, 4, -7, 8, 4, -8, 9])
    );
    assert_eq!(value["det"].as_i64().unwrap(), 1);
    assert_eq!(value["alpha"].as_i64().unwrap(), 1);
    assert_eq!(value["beta"].as_i64().unwrap(), 1);
    assert_eq!(value["ring"].as_str().unwrap(), "Z");
    assert_eq!(value["w2_lift_image"], serde_json::json!([1, 5, 5]));
}

#[test]
fn figure_produces_the_expected_elements() {
    let output = wallcross(&[
        "figure",
        "--c-max",
        "3",
        "--point",
        "0,0",
        "--point",
        "-1/2,-1/2",
        "--word",
        "-,+",
    ]);
    assert!(output.status.success());
    let svg = String::from_utf8_lossy(&output.stdout);
    assert_eq!(svg.matches(r#"class="wall-arc""#).count(), 12);
    assert_eq!(svg.matches(r#"class="point-marker""#).count(), 4);
    assert_eq!(svg.matches(r#"class="path""#).count(), 2);
    assert_eq!(svg.matches(r#"class="crossing-marker""#).count(), 6);
}

#[test]
fn out_flag_writes_to_a_file() {
    let path = std::env::temp_dir().join(format!("wallcross-out-{}.json", std::process::id()));
    let output = wallcross(&[
        "walls",
        "--c-max",
        "1",
        "--json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert!(output.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let value: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(value.as_array().unwrap().len(), 4);
    std::fs::remove_file(&path).unwrap();
}

#[test]
fn verify_filter_limits_the_run() {
    let value = stdout_json(&["verify", "--only", "morgan", "--json"]);
    assert_eq!(value["failed"].as_i64().unwrap(), 0);
    assert_eq!(value["passed"].as_i64().unwrap(), 2);
    let names: Vec<&str> = value["results"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["name"].as_str().unwrap())
        .collect();
    assert_eq!(
        names,
        vec!["morgan-szabo-parity-3", "morgan-szabo-parity-7"]
    );
}

#[test]
fn verify_unknown_filter_is_empty_and_succeeds() {
    let output = wallcross(&["verify", "--only", "nonexistent"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&output.stdout).contains("0 passed, 0 failed"));
}

#[test]
fn invalid_inputs_map_to_exit_2_with_distinct_messages() {
    expect_invalid(
        &["reflect", "--sigma", "0,0,1", "--class", "1,1,1"],
        "square -1",
    );
    expect_invalid(
        &["invariant", "--word", "-,+", "--start", "poincare:2,0"],
        "outside the open unit disk",
    );
    expect_invalid(
        &["invariant", "--word", "-,+", "--start", "hyperboloid:1,1,1"],
        "not on the forward hyperboloid sheet",
    );
    expect_invalid(&["sw", "--b-plus-x", "4"], "Rohlin");
    expect_invalid(
        &["reflect", "--sigma", "+", "--class", "1,1"],
        "expected a class",
    );
    expect_invalid(&["diffeo", "--word", "0,0,1"], "square -1");
}

#[test]
fn on_wall_start_point_is_rejected() {
    // (1, 1/2, 3/2) lies exactly on W(1,1,1).
    expect_invalid(
        &[
            "invariant",
            "--word",
            "-,+",
            "--start",
            "hyperboloid:1,1/2,3/2",
        ],
        "lies on wall W(1,1,1)",
    );
}
