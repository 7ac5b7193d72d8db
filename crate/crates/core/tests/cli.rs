//! The command-line tool's exit codes and report shape.

use std::path::PathBuf;
use std::process::Command;

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn henkin(args: &[&str]) -> (i32, serde_json::Value, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_henkin")).args(args).output().unwrap();
    let json = serde_json::from_slice(&out.stdout).unwrap_or(serde_json::Value::Null);
    (out.status.code().unwrap(), json, String::from_utf8_lossy(&out.stderr).into_owned())
}

fn path(name: &str) -> String {
    fixture(name).display().to_string()
}

#[test]
fn z2_pipeline_passes() {
    let (code, json, _) = henkin(&["pipeline", &path("z2.theory")]);
    assert_eq!(code, 0);
    assert_eq!(json["schema"], 1);
    assert_eq!(json["status"], "pass");
    assert_eq!(json["run"]["eta"], serde_json::json!([0, 1]));
}

#[test]
fn infinite_theory_is_out_of_desk_scale() {
    let (code, json, _) = henkin(&["pipeline", &path("zf_stub.theory")]);
    assert_eq!(code, 3);
    assert_eq!(json["status"], "out of desk scale");
}

#[test]
fn disabled_completion_fails_invertibility() {
    let (code, json, _) = henkin(&["pipeline", "--sentence-budget", "0", "--term-depth", "2", &path("monoid.theory")]);
    assert_eq!(code, 2);
    let checks = json["checks"].as_array().unwrap();
    let inv = checks.iter().find(|c| c["check"] == "invertibility").unwrap();
    assert_eq!(inv["status"], "fail");
}

#[test]
fn malformed_theory_exits_with_diagnostics() {
    let dir = std::env::temp_dir().join("henkin-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.theory");
    std::fs::write(&bad, "theory Bad\naxiom forall x. \n").unwrap();
    let (code, _, stderr) = henkin(&["pipeline", bad.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(stderr.contains("bad.theory:2:"), "{stderr}");
}

#[test]
fn naturality_commands() {
    let (code, json, _) = henkin(&["naturality", &path("monoid.theory"), &path("z2.theory"), &path("monoid_to_z2.translation")]);
    assert_eq!((code, json["status"].as_str()), (0, Some("pass")));
    let (code, json, _) = henkin(&["naturality", &path("z2.theory"), &path("monoid.theory"), &path("z2_to_monoid.translation")]);
    assert_eq!((code, json["status"].as_str()), (2, Some("obligation failure")));
}

#[test]
fn lawvere_command() {
    let (code, json, _) = henkin(&["lawvere", "2", "2"]);
    assert_eq!(code, 0);
    assert_eq!(json["survey"]["point_surjective"], 0);
    let (code, _, stderr) = henkin(&["lawvere", "9", "9"]);
    assert_eq!(code, 1);
    assert!(stderr.contains("cap"));
}

#[test]
fn json_flag_writes_the_report() {
    let out = std::env::temp_dir().join("henkin-cli-test-report.json");
    let (code, _, _) = henkin(&["pipeline", &path("trivial.theory"), "--json", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(json["theory"], "Trivial");
}
