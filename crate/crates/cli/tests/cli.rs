use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toric-mirror"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn run_fixture(command: &str, name: &str, extra: &[&str]) -> (i32, Value) {
    let path = fixture(name);
    let mut args = vec![command, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = run(&args);
    let json: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}", String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), json)
}

fn coefficients(report: &Value) -> Vec<(Vec<i64>, String)> {
    report["series"]["records"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            let beta = r["beta"].as_array().unwrap().iter().map(|x| x.as_i64().unwrap()).collect();
            (beta, r["coefficient"]["value"].as_str().unwrap().to_string())
        })
        .collect()
}

#[test]
fn valid_fixtures_validate() {
    for name in ["segment", "segment-residue", "projective-plane", "square", "thin-triangle"] {
        let (code, report) = run_fixture("validate", name, &[]);
        assert_eq!(code, 0, "{name}: {report}");
        assert_eq!(report["passed"], Value::Bool(true));
    }
}

#[test]
fn overlapping_simplices_are_named() {
    let (code, report) = run_fixture("validate", "overlap", &[]);
    assert_eq!(code, 1);
    let failed = report["checks"].as_array().unwrap().iter().find(|c| c["passed"] == false).unwrap();
    assert_eq!(failed["check"], "triangulation-overlap");
    let witness = failed["witnesses"][0].as_str().unwrap();
    assert!(witness.contains("[0, 2, 3]") && witness.contains("[1, 2, 3]"), "{witness}");
}

#[test]
fn empty_part_is_named() {
    let (code, report) = run_fixture("validate", "empty-part", &[]);
    assert_eq!(code, 1);
    let checks = report["checks"].as_array().unwrap();
    assert_eq!(checks.last().unwrap()["check"], "empty-part");
}

#[test]
fn segment_series() {
    let (code, report) = run_fixture("series", "segment", &[]);
    assert_eq!(code, 0);
    assert_eq!(
        coefficients(&report),
        vec![(vec![0, 0], "1".into()), (vec![1, 1], "4".into()), (vec![2, 2], "16".into())]
    );
    let (_, residue) = run_fixture("series", "segment-residue", &[]);
    let values: Vec<String> = coefficients(&residue).into_iter().map(|(_, c)| c).collect();
    assert_eq!(values, vec!["1", "4", "16"]);
    assert_eq!(residue["series"]["records"][1]["mori"], serde_json::json!([1]));
}

#[test]
fn projective_plane_series() {
    let (code, report) = run_fixture("series", "projective-plane", &["--bound", "3"]);
    assert_eq!(code, 0);
    assert_eq!(
        coefficients(&report),
        vec![(vec![0, 0, 0], "1".into()), (vec![1, 1, 1], "-27".into())]
    );
    let record = &report["series"]["records"][1]["coefficient"];
    assert_eq!((record["numerator"].as_str(), record["denominator"].as_str()), (Some("-27"), Some("1")));
}

#[test]
fn zero_bound_gives_constant_term() {
    let (code, report) = run_fixture("series", "segment", &["--bound", "0"]);
    assert_eq!(code, 0);
    assert_eq!(coefficients(&report), vec![(vec![0, 0], "1".into())]);
}

#[test]
fn completion_vector_does_not_change_series() {
    let (_, a) = run_fixture("series", "thin-triangle", &[]);
    let (code, b) = run_fixture("series", "thin-triangle", &["--v0=-1,-1,-3"]);
    assert_eq!(code, 0);
    assert_ne!(a["series"]["v0"], b["series"]["v0"]);
    assert_eq!(coefficients(&a), coefficients(&b));
}

#[test]
fn verify_passes_on_fixtures() {
    for name in ["segment", "projective-plane", "thin-triangle"] {
        let (code, report) = run_fixture("verify", name, &["--bound", "4"]);
        assert_eq!(code, 0, "{name}: {report:#}");
    }
}

#[test]
fn verify_square_reports_mixed_volumes() {
    let (code, report) = run_fixture("verify", "square", &[]);
    assert_eq!(code, 0, "{report:#}");
    let rows = report["mixed_volumes"].as_array().unwrap();
    let entry = rows.iter().find(|r| r["kbar"] == serde_json::json!([1, 1])).unwrap();
    assert_eq!(entry["mixed_volume"]["value"], "4");
    assert_eq!(entry["mixed_residue"]["value"], "4");
}

#[test]
fn mixed_volume_command() {
    let (code, report) = run_fixture("mixed-volume", "square", &[]);
    assert_eq!(code, 0);
    let volumes: Vec<(Value, Value)> = report["mixed_volumes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["kbar"].clone(), r["mixed_volume"]["value"].clone()))
        .collect();
    assert_eq!(
        volumes,
        vec![
            (serde_json::json!([0, 2]), Value::from("0")),
            (serde_json::json!([1, 1]), Value::from("4")),
            (serde_json::json!([2, 0]), Value::from("0")),
        ]
    );
    let (code, _) = run_fixture("mixed-volume", "segment-residue", &[]);
    assert_eq!(code, 1);
}

#[test]
fn output_is_deterministic() {
    let path = fixture("square");
    let args = ["verify", path.to_str().unwrap(), "--seed", "5", "--jobs", "2"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let text = run(&["--format", "text", "series", fixture("segment").to_str().unwrap()]);
    assert!(String::from_utf8_lossy(&text.stdout).contains("coefficient 16"));
}

#[test]
fn parse_errors_exit_with_two() {
    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "{{\n  \"dimension\": 1,\n  \"vertices\": [[-1], [1]],\n  \"simplices\": [[0, 1]\n}}").unwrap();
    let out = run(&["validate", bad.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line"));

    let mut unknown = tempfile::NamedTempFile::new().unwrap();
    write!(unknown, r#"{{"dimension": 1, "vertices": [[-1], [1]], "simplices": [], "colour": 3}}"#).unwrap();
    let out = run(&["validate", unknown.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("colour"));

    let mut range = tempfile::NamedTempFile::new().unwrap();
    write!(range, r#"{{"dimension": 1, "vertices": [[-1], [1]], "simplices": [[0, 7]]}}"#).unwrap();
    let out = run(&["validate", range.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("simplices[0]"));

    assert_eq!(run(&["validate", "/nonexistent/problem.json"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}
