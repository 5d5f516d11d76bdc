use std::fs;
use std::process::Command;

fn harmonic() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_harmonic"));
    cmd.env_remove("HARMONIC_OUT_DIR");
    cmd
}

#[test]
fn kernels_suite_writes_reports_and_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let out = harmonic()
        .args(["run", "--suite", "kernels", "--out"])
        .arg(dir.path())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let summary = fs::read_to_string(dir.path().join("summary.txt")).unwrap();
    assert!(summary.contains("poisson_normalization n=1 t=1: pass"));
    assert!(summary.contains("skipped"));
    assert!(dir.path().join("kernels/poisson_normalization.csv").exists());
    let manifest: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("manifest.json")).unwrap()).unwrap();
    assert!(manifest.is_object());
    let json: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(dir.path().join("summary.json")).unwrap()).unwrap();
    assert_eq!(json["failed"], 0);
}

#[test]
fn bad_config_exits_two() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.json");
    fs::write(&cfg, r#"{"suite": "kernels", "no_such_key": 1}"#).unwrap();
    let out = harmonic()
        .args(["run", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(dir.path().join("out"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    fs::write(&cfg, r#"{"kernels": {"normalization": {"half_width": -1.0, "points": 64}}}"#).unwrap();
    let out = harmonic().args(["run", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_suite_exits_two() {
    let out = harmonic().args(["run", "--suite", "nonsense"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn environment_variable_sets_output_directory() {
    let dir = tempfile::tempdir().unwrap();
    let out = harmonic()
        .env("HARMONIC_OUT_DIR", dir.path())
        .args(["run", "--suite", "growth"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let csv = fs::read_to_string(dir.path().join("growth/growth.csv")).unwrap();
    assert_eq!(csv.lines().next().unwrap(), "x,y,abs_f,envelope,margin");
    assert_eq!(csv.lines().count(), 1 + 41 * 25);
}
