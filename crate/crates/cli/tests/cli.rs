use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn lagmono(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lagmono")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn verify_to(dir: &Path, family: &str, extra: &[&str]) -> (i32, String) {
    let path = dir.join(format!("{family}.json"));
    let mut args = vec!["verify", family, "--out", path.to_str().unwrap()];
    args.extend_from_slice(extra);
    let out = lagmono(&args);
    (code(&out), std::fs::read_to_string(&path).unwrap_or_default())
}

#[test]
fn algebraic_subcommands() {
    let out = lagmono(&["classify", "f0,f3"]);
    assert_eq!((code(&out), stdout(&out).as_str()), (0, "Dinf k=0 d=3\n"));
    assert_eq!(stdout(&lagmono(&["classify"])), "trivial\n");
    assert_eq!(stdout(&lagmono(&["classify", "f2"])), "Z2 k=2\n");
    assert_eq!(stdout(&lagmono(&["classify", "g-4,f1"])), "Dinf k=1 d=4\n");
    assert_eq!(stdout(&lagmono(&["invariants", "f1"])), "t=0 s=2\n");
    assert_eq!(stdout(&lagmono(&["invariants", "f0"])), "t=0 s=1\n");
    assert_eq!(stdout(&lagmono(&["invariants", "g1,f0"])), "t=1 s=1\n");
    assert_eq!(stdout(&lagmono(&["word", "g^3", "f", "g^5"])), "g^3 f g^5 = f-2 (1 0; -2 -1)\n");
    assert!(stdout(&lagmono(&["mf", "-3"])).contains("m_f=2"));
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let bad = lagmono(&["classify", "f0,h3"]);
    assert_eq!(code(&bad), 2);
    assert!(String::from_utf8_lossy(&bad.stderr).contains("position"));
    assert_eq!(code(&lagmono(&["frobnicate"])), 2);
    assert_eq!(code(&lagmono(&["word", "g^x"])), 2);
    assert_eq!(code(&lagmono(&["verify", "torus"])), 2);
    assert_eq!(code(&lagmono(&["verify", "clifford", "--samples", "100"])), 2);
    assert_eq!(code(&lagmono(&["--help"])), 0);
}

#[test]
fn verify_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let (c1, first) = verify_to(dir.path(), "clifford", &[]);
    let (c2, second) = verify_to(dir.path(), "clifford", &[]);
    assert_eq!((c1, c2), (0, 0));
    assert_eq!(first, second);
    let out = lagmono(&["verify", "clifford"]);
    assert_eq!(stdout(&out), first);
}

#[test]
fn report_fields() {
    let dir = tempfile::tempdir().unwrap();
    let (c, text) = verify_to(dir.path(), "chekanov", &["--b", "2"]);
    assert_eq!(c, 0);
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["tool_version"], env!("CARGO_PKG_VERSION"));
    assert_eq!(doc["config"]["chekanov"]["b"], 2.0);
    assert_eq!(doc["invariants"]["chekanov"]["t"], 0);
    assert_eq!(doc["invariants"]["chekanov"]["s"], 1);
    assert_eq!(doc["overall_pass"], true);
    let checks = doc["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["name"].as_str().unwrap().starts_with("chekanov.")));
    assert!(checks.iter().any(|c| c["oracle_backed"] == true));
}

#[test]
fn config_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let (_, original) = verify_to(dir.path(), "clifford", &["--b", "0.5", "--epsilon", "0.001", "--seed", "9"]);
    let echoed = dir.path().join("echo.json");
    std::fs::write(&echoed, &original).unwrap();
    let rerun = dir.path().join("rerun.json");
    let out = lagmono(&["verify", "clifford", "--config", echoed.to_str().unwrap(), "--out", rerun.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read_to_string(&rerun).unwrap(), original);

    let flat = dir.path().join("run.cfg");
    std::fs::write(&flat, "# small run\nb = 0.5\nepsilon = 0.001\nseed = 9\n").unwrap();
    let from_flat = lagmono(&["verify", "clifford", "--config", flat.to_str().unwrap()]);
    assert_eq!(stdout(&from_flat), original);

    let flagged = lagmono(&["verify", "clifford", "--config", flat.to_str().unwrap(), "--b", "1"]);
    let doc: Value = serde_json::from_slice(&flagged.stdout).unwrap();
    assert_eq!(doc["config"]["clifford"]["b"], 1.0);

    std::fs::write(&flat, "b = 1\nwidth = 3\n").unwrap();
    assert_eq!(code(&lagmono(&["verify", "clifford", "--config", flat.to_str().unwrap()])), 2);
}

#[test]
fn failed_checks_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("strict.cfg");
    std::fs::write(&cfg, "tol_sym = 1e-12\n").unwrap();
    let out = lagmono(&["verify", "clifford", "--config", cfg.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["overall_pass"], false);
    assert!(doc["verdict"].as_str().unwrap().starts_with("inconclusive"));
}

#[test]
fn merge_reports() {
    let dir = tempfile::tempdir().unwrap();
    verify_to(dir.path(), "clifford", &[]);
    verify_to(dir.path(), "chekanov", &[]);
    let cl = dir.path().join("clifford.json");
    let ch = dir.path().join("chekanov.json");
    let out = lagmono(&["report", cl.to_str().unwrap(), ch.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["invariants"]["clifford"]["s"], 2);
    assert_eq!(doc["invariants"]["chekanov"]["s"], 1);
    let verdict = doc["verdict"].as_str().unwrap();
    assert!(verdict.starts_with("distinguished: s=2 vs s=1"), "{verdict}");
    assert!(verdict.contains("not Hamiltonian isotopic"));

    let single = lagmono(&["report", cl.to_str().unwrap()]);
    assert_eq!(stdout(&single), std::fs::read_to_string(&cl).unwrap());

    assert_eq!(code(&lagmono(&["report", cl.to_str().unwrap(), cl.to_str().unwrap()])), 2);

    let mut old: Value = serde_json::from_str(&std::fs::read_to_string(&ch).unwrap()).unwrap();
    old["tool_version"] = Value::from("0.0.0");
    let old_path = dir.path().join("old.json");
    std::fs::write(&old_path, serde_json::to_string(&old).unwrap()).unwrap();
    assert_eq!(code(&lagmono(&["report", cl.to_str().unwrap(), old_path.to_str().unwrap()])), 2);
    std::fs::write(&old_path, "{\"tool_version\": \"0.1.0\"}").unwrap();
    assert_eq!(code(&lagmono(&["report", old_path.to_str().unwrap()])), 2);
}
