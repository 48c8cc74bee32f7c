//! End-to-end tests for the `aluthge` binary: exit codes, report
//! shapes, determinism, and error reporting, driven through real
//! process invocations against the shipped gallery artifacts.

use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_aluthge"));
    // Keep runs hermetic: the suite must not inherit a seed override
    // from the environment it happens to run in.
    cmd.env_remove("ALUTHGE_SEED");
    cmd
}

fn artifact(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/gallery")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    cmd.args(args);
    cmd.output().expect("binary spawns")
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn exit_code(out: &Output) -> i32 {
    out.status.code().expect("no signal")
}

#[test]
fn transform_maps_the_shift_block_to_zero() {
    let input = artifact("nilpotent2.json");
    let out = run(&["transform", "--input", input.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["n"], 2);
    for row in doc["rows"].as_array().unwrap() {
        for entry in row.as_array().unwrap() {
            let pair = entry.as_array().unwrap();
            assert_eq!(pair[0].as_f64().unwrap(), 0.0);
            assert_eq!(pair[1].as_f64().unwrap(), 0.0);
        }
    }
    assert!(out.stdout.ends_with(b"\n"), "report ends with a newline");
}

#[test]
fn check_reports_the_predicate_battery() {
    let input = artifact("nilpotent2.json");
    let out = run(&["check", "--input", input.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["dim"], 2);
    assert_eq!(doc["is_normal"], false);
    assert_eq!(doc["is_quasinormal"], false);
    assert_eq!(doc["is_partial_isometry"], true);
    assert_eq!(doc["is_fixed_point"], false);
    assert_eq!(doc["lambda"], 0.5);
}

#[test]
fn laws_pass_and_reports_are_byte_identical() {
    let args = ["laws", "--law", "rank-one", "--dims", "2,3", "--trials", "5"];
    let first = run(&args);
    let second = run(&args);
    assert_eq!(exit_code(&first), 0, "stderr: {}", String::from_utf8_lossy(&first.stderr));
    assert_eq!(first.stdout, second.stdout, "identical invocations must agree byte for byte");
    let doc = stdout_json(&first);
    assert_eq!(doc["passed"], true);
    assert_eq!(doc["dims"], serde_json::json!([2, 3]));
    assert_eq!(doc["reports"].as_array().unwrap().len(), 1);
}

#[test]
fn seed_env_var_matches_the_explicit_flag() {
    let mut env_cmd = bin();
    env_cmd.args(["laws", "--law", "fixed-points", "--dims", "2", "--trials", "4"]);
    env_cmd.env("ALUTHGE_SEED", "99");
    let via_env = env_cmd.output().expect("binary spawns");

    let via_flag = run(&[
        "laws", "--law", "fixed-points", "--dims", "2", "--trials", "4", "--seed", "99",
    ]);
    assert_eq!(exit_code(&via_env), 0);
    assert_eq!(via_env.stdout, via_flag.stdout);

    let default_seed = run(&["laws", "--law", "fixed-points", "--dims", "2", "--trials", "4"]);
    assert_ne!(
        via_env.stdout, default_seed.stdout,
        "seed 99 must draw a different ensemble than the default seed"
    );
}

#[test]
fn output_flag_writes_the_report_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let input = artifact("nilpotent2.json");
    let out = run(&[
        "transform",
        "--input",
        input.to_str().unwrap(),
        "--output",
        report_path.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 0);
    assert!(out.stdout.is_empty(), "report goes to the file, not stdout");
    let text = std::fs::read_to_string(&report_path).unwrap();
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["n"], 2);
    assert!(text.ends_with('\n'));
}

#[test]
fn map_check_accepts_the_conjugation_artifact() {
    let input = artifact("conj_haar4.json");
    let out = run(&["map-check", "--input", input.to_str().unwrap(), "--trials", "40"]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert_eq!(doc["condition"]["verdict"], "satisfied");
    assert!(doc["condition"]["max_residual"].as_f64().unwrap() <= 1e-9);
    assert_eq!(doc["symbol"]["classification"], "identity");
    assert_eq!(doc["structure"]["passed"], true);
}

#[test]
fn map_check_rejects_the_adjoint_twisted_artifact() {
    let input = artifact("anticonj.json");
    let out = run(&["map-check", "--input", input.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1, "violation is exit 1, not a usage error");
    let doc = stdout_json(&out);
    assert_eq!(doc["condition"]["verdict"], "violated");
    assert!(doc["condition"]["max_residual"].as_f64().unwrap() >= 0.1);
    assert_eq!(
        doc["symbol"]["classification"], "conjugation",
        "the scalar symbol still identifies the adjoint twist"
    );
    assert!(doc["structure"]["skipped"].is_string());
}

#[test]
fn map_check_rejects_the_doubled_conjugation() {
    let input = artifact("scale2_conj.json");
    let out = run(&["map-check", "--input", input.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 1);
    let doc = stdout_json(&out);
    assert_eq!(doc["condition"]["verdict"], "violated");
    assert!(doc["condition"]["max_residual"].as_f64().unwrap() >= 0.1);
}

#[test]
fn map_extract_recovers_the_shipped_unitary() {
    let input = artifact("conj_haar4.json");
    let out = run(&["map-extract", "--input", input.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 0, "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let doc = stdout_json(&out);
    assert!(doc["conjugation_residual"].as_f64().unwrap() <= 1e-8);
    assert!(doc["unitarity_residual"].as_f64().unwrap() <= 1e-8);
    assert_eq!(doc["u_hat"]["n"], 4);
}

#[test]
fn map_extract_refuses_the_scalar_artifact() {
    let input = artifact("scalar_reciprocal.json");
    let out = run(&["map-extract", "--input", input.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2, "a 1x1 carrier is a usage error, not a violation");
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("error:"), "stderr: {stderr}");
}

#[test]
fn gallery_lists_all_artifacts() {
    let out = run(&["gallery"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    let items = doc["artifacts"].as_array().unwrap();
    assert_eq!(items.len(), 6);
    let ids: Vec<&str> = items.iter().map(|e| e["id"].as_str().unwrap()).collect();
    for id in [
        "nilpotent2",
        "rank_one_positive",
        "scalar_reciprocal",
        "conj_haar4",
        "anticonj",
        "scale2_conj",
    ] {
        assert!(ids.contains(&id), "missing {id} in {ids:?}");
    }
}

#[test]
fn gallery_emits_an_artifact_by_id() {
    let out = run(&["gallery", "nilpotent2"]);
    assert_eq!(exit_code(&out), 0);
    let doc = stdout_json(&out);
    assert_eq!(doc["n"], 2);
    assert_eq!(doc["rows"][0][1][0], 1.0);
}

#[test]
fn unknown_artifact_id_is_a_usage_error() {
    let out = run(&["gallery", "nosuch"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("known ids"), "stderr: {stderr}");
}

#[test]
fn malformed_input_names_the_offending_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    std::fs::write(&path, "{ definitely not json").unwrap();
    let out = run(&["transform", "--input", path.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(
        stderr.contains("broken.json"),
        "error must name the file, got: {stderr}"
    );
}

#[test]
fn missing_input_file_is_a_usage_error() {
    let out = run(&["transform", "--input", "/nonexistent/nowhere.json"]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("nowhere.json"), "stderr: {stderr}");
}

#[test]
fn out_of_range_lambda_is_a_usage_error() {
    let input = artifact("nilpotent2.json");
    let out = run(&["transform", "--lambda", "1.5", "--input", input.to_str().unwrap()]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("lambda"), "stderr: {stderr}");
}

#[test]
fn scalar_detector_input_requires_the_matching_law() {
    let input = artifact("nilpotent2.json");
    let out = run(&[
        "laws",
        "--law",
        "rank-one",
        "--dims",
        "2",
        "--input",
        input.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out), 2);
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("scalar-detector"), "stderr: {stderr}");
}

#[test]
fn pretty_format_is_still_valid_json() {
    let input = artifact("nilpotent2.json");
    let out = run(&[
        "check",
        "--input",
        input.to_str().unwrap(),
        "--format",
        "pretty",
    ]);
    assert_eq!(exit_code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().count() > 3, "pretty output is multi-line");
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["dim"], 2);
}

#[test]
fn round_trip_of_an_emitted_matrix_reproduces_it() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.json");
    let second = dir.path().join("second.json");
    let input = artifact("rank_one_positive.json");

    // transform the artifact, feed the emitted document back in with
    // the identity-like weight path, and check the polar factors of
    // both agree: the emitted file must be a faithful matrix document.
    let out1 = run(&[
        "transform",
        "--input",
        input.to_str().unwrap(),
        "--output",
        first.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out1), 0);
    let out2 = run(&[
        "transform",
        "--input",
        first.to_str().unwrap(),
        "--output",
        second.to_str().unwrap(),
    ]);
    assert_eq!(exit_code(&out2), 0);

    // The transform of the rank-one artifact is already a fixed point
    // (it is a scalar multiple of a projection), so the two files must
    // agree entry for entry to within one representable float.
    let a: Value = serde_json::from_str(&std::fs::read_to_string(&first).unwrap()).unwrap();
    let b: Value = serde_json::from_str(&std::fs::read_to_string(&second).unwrap()).unwrap();
    let rows_a = a["rows"].as_array().unwrap();
    let rows_b = b["rows"].as_array().unwrap();
    for (ra, rb) in rows_a.iter().zip(rows_b) {
        for (ea, eb) in ra.as_array().unwrap().iter().zip(rb.as_array().unwrap()) {
            for k in 0..2 {
                let va = ea[k].as_f64().unwrap();
                let vb = eb[k].as_f64().unwrap();
                assert!(
                    (va - vb).abs() <= 1e-12 * va.abs().max(1.0),
                    "entries drifted: {va} vs {vb}"
                );
            }
        }
    }
}
