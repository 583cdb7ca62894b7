//! End-to-end tests of the `slocc` binary: state files in, reports and
//! exit codes out.

use std::io::Write;
use std::process::{Command, Output};

fn slocc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_slocc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_state(dir: &std::path::Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(text.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

fn ghz4_json() -> String {
    let r = 0.5f64.sqrt();
    let mut amps = vec![[0.0, 0.0]; 16];
    amps[0] = [r, 0.0];
    amps[15] = [r, 0.0];
    serde_json::json!({"n_qubits": 4, "amplitudes": amps}).to_string()
}

#[test]
fn classify_ghz_file() {
    let dir = std::env::temp_dir();
    let path = write_state(&dir, "slocc_test_ghz.json", &ghz4_json());

    let out = slocc(&["classify", "--input", &path]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("GHZ"), "{stdout}");

    // json mode round-trips the label fields
    let out = slocc(&["classify", "--input", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["structural"], "GHZ");
    assert_eq!(doc["n_qubits"], 4);
    assert_eq!(doc["pencil"]["product_points"].as_array().unwrap().len(), 2);
}

#[test]
fn classify_rejects_wrong_length_naming_expected_count() {
    let dir = std::env::temp_dir();
    let amps = vec![[1.0, 0.0]; 15];
    let text = serde_json::json!({"n_qubits": 4, "amplitudes": amps}).to_string();
    let path = write_state(&dir, "slocc_test_short.json", &text);
    let out = slocc(&["classify", "--input", &path]);
    assert_eq!(out.status.code(), Some(1));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("16"), "{stderr}");
}

#[test]
fn classify_rejects_zero_state() {
    let dir = std::env::temp_dir();
    let amps = vec![[0.0, 0.0]; 16];
    let text = serde_json::json!({"n_qubits": 4, "amplitudes": amps}).to_string();
    let path = write_state(&dir, "slocc_test_zero.json", &text);
    let out = slocc(&["classify", "--input", &path]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_flags_boundary_states_with_exit_3() {
    // |0000> + |0111> + 3e-10 |1111>: the first partition's singular ratio
    // lands inside the declared boundary band around the rank cutoff
    let dir = std::env::temp_dir();
    let mut amps = vec![[0.0, 0.0]; 16];
    let r = 0.5f64.sqrt();
    amps[0] = [r, 0.0];
    amps[7] = [r, 0.0];
    amps[15] = [3e-10, 0.0];
    let text = serde_json::json!({"n_qubits": 4, "amplitudes": amps}).to_string();
    let path = write_state(&dir, "slocc_test_boundary.json", &text);
    let out = slocc(&["classify", "--input", &path]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stdout));
}

#[test]
fn classify_three_qubit_file() {
    let dir = std::env::temp_dir();
    let r = (1.0f64 / 3.0).sqrt();
    let mut amps = vec![[0.0, 0.0]; 8];
    amps[1] = [r, 0.0];
    amps[2] = [r, 0.0];
    amps[4] = [r, 0.0];
    let text = serde_json::json!({"n_qubits": 3, "amplitudes": amps}).to_string();
    let path = write_state(&dir, "slocc_test_w3.json", &text);
    let out = slocc(&["classify", "--input", &path, "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["class"], "W");
}

#[test]
fn canon_emits_reclassifiable_states() {
    let out = slocc(&["canon", "--class", "W"]);
    assert_eq!(out.status.code(), Some(0));
    let state = slocc::StateVector::from_json(&String::from_utf8_lossy(&out.stdout)).unwrap();
    // four equal amplitudes of 1/2 on the single-excitation kets
    for idx in [0b0001, 0b0010, 0b0100, 0b1000] {
        assert!((state.amp(idx).re - 0.5).abs() < 1e-12);
    }

    let out = slocc(&["canon", "--class", "Psi13Psi24"]);
    assert_eq!(out.status.code(), Some(0));
    let state = slocc::StateVector::from_json(&String::from_utf8_lossy(&out.stdout)).unwrap();
    for idx in [0b0000, 0b0101, 0b1010, 0b1111] {
        assert!((state.amp(idx).re - 0.5).abs() < 1e-12);
    }

    let out = slocc(&["canon", "--class", "GHZ5"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn table_reports_the_census() {
    let out = slocc(&["table"]);
    assert_eq!(out.status.code(), Some(0));
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("18 degenerate + 16 genuine"));
    assert!(stdout.contains("8 genuine families"));

    let out = slocc(&["table", "--format", "json"]);
    let doc: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["degenerate_count"], 18);
    assert_eq!(doc["genuine_count"], 16);
    assert_eq!(doc["genuine_families"], 8);
    assert_eq!(doc["classes"].as_array().unwrap().len(), 34);
}

#[test]
fn selftest_passes() {
    let out = slocc(&["selftest"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

#[test]
fn fuzz_small_campaign_passes() {
    let out = slocc(&["fuzz", "--class", "GHZ", "--trials", "25", "--seed", "3"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let out = slocc(&["fuzz", "--class", "Phi4", "--trials", "10"]);
    assert_eq!(out.status.code(), Some(0));
}
