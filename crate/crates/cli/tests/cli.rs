use std::path::Path;
use std::process::Command;

use gwell::manifest::RunManifest;
use sha2::{Digest, Sha256};

fn gwell(dir: &Path, args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gwell")).current_dir(dir).args(args).env_remove("GWELL_WORKERS").output().unwrap()
}

fn write(dir: &Path, name: &str, text: &str) {
    std::fs::write(dir.join(name), text).unwrap();
}

const SOLVE: &str = "command = \"solve\"\noutput = \"out\"\n[mesh]\nn = 300\nh = 1.0\n[solve]\nv0 = 100.0\ndim = 3\nell = 0\n";

#[test]
fn solve_writes_tabulated_ground_state() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "run.toml", SOLVE);
    let out = gwell(dir.path(), &["--config", "run.toml"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let mut r = csv::Reader::from_path(dir.path().join("out/solve.csv")).unwrap();
    let headers = r.headers().unwrap().clone();
    let row = r.records().next().unwrap().unwrap();
    let col = |name: &str| row[headers.iter().position(|h| h == name).unwrap()].parse::<f64>().unwrap();
    assert!((col("energy") + 79.738800).abs() < 1e-6);
    assert!((col("mean_r") - 0.314).abs() < 1e-3);
}

#[test]
fn malformed_config_fails_validation_without_output() {
    let dir = tempfile::tempdir().unwrap();
    write(dir.path(), "bad.toml", "command = \"solve\"\noutput = \"out\"\n[solve]\nv0 = 100.0\ndepth = 3\n");
    let out = gwell(dir.path(), &["--config", "bad.toml"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!dir.path().join("out").exists());
    let record: serde_json::Value = serde_json::from_slice(out.stderr.trim_ascii()).unwrap();
    assert_eq!(record["error"], "validation");
    assert_eq!(record["status"], 2);

    write(dir.path(), "missing.toml", "command = \"critical\"\noutput = \"out\"\n[critical]\ndim = 3\n");
    assert_eq!(gwell(dir.path(), &["--config", "missing.toml"]).status.code(), Some(2));
    assert!(!dir.path().join("out").exists());
}

#[test]
fn reruns_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = gwell(dir.path(), &["--format", "json", "--out", out, "ansatz", "--v0", "10", "--dim", "3", "--terms", "2"]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let a = std::fs::read(dir.path().join("a/ansatz.json")).unwrap();
    let b = std::fs::read(dir.path().join("b/ansatz.json")).unwrap();
    assert_eq!(a, b);
    // A cached rerun into the same directory reproduces the same bytes.
    let again = gwell(dir.path(), &["--format", "json", "--out", "a", "ansatz", "--v0", "10", "--dim", "3", "--terms", "2"]);
    assert!(again.status.success());
    assert_eq!(std::fs::read(dir.path().join("a/ansatz.json")).unwrap(), a);
}

#[test]
fn manifest_digests_match_files() {
    let dir = tempfile::tempdir().unwrap();
    let o = gwell(dir.path(), &["--out", "m", "critical", "--dim", "3", "--ell", "1", "--n", "2", "--nmesh", "200"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(dir.path().join("m/manifest.json")).unwrap();
    let m: RunManifest = serde_json::from_str(&text).unwrap();
    assert_eq!(m.status, "ok");
    assert!(m.files.iter().any(|f| f.path == "critical.csv"));
    for f in &m.files {
        let data = std::fs::read(dir.path().join("m").join(&f.path)).unwrap();
        assert_eq!(f.bytes, data.len() as u64);
        let digest: String = Sha256::digest(&data).iter().map(|b| format!("{b:02x}")).collect();
        assert_eq!(f.sha256, digest);
    }
    assert!(m.stages.iter().any(|s| s.name == "critical"));
}

#[test]
fn worker_count_from_environment_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let o = Command::new(env!("CARGO_BIN_EXE_gwell"))
        .current_dir(dir.path())
        .args(["--out", "w", "solve", "--v0", "10", "--dim", "3"])
        .env("GWELL_WORKERS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
