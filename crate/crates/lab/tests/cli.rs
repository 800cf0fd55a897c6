use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn canonmap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_canonmap")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn verify_symbolic_default_passes() {
    let out = canonmap(&["verify-symbolic"]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["status"], "pass");
    assert_eq!(v["suite"], "verify-symbolic");
    assert!(v["report"]["failures"].as_array().unwrap().is_empty());
}

#[test]
fn corrupted_law_fixture_fails_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let laws = dir.path().join("laws.json");
    // first LawX component with its second term's sign flipped
    std::fs::write(&laws, r#"{"LawX": [[["1", "X0 X0 Y1 Y1"], ["1", "Y0 Y0 X1 X1"]], [["1", "X0 Y0 Z1 T1"], ["-1", "Z0 T0 X1 Y1"]], [["1", "X0 Z0 Y1 T1"], ["-1", "Y0 T0 X1 Z1"]], [["1", "X0 T0 Y1 Z1"], ["-1", "Y0 Z0 X1 T1"]]]}"#).unwrap();
    let report = dir.path().join("r.json");
    let out = canonmap(&["verify-symbolic", "--laws", laws.to_str().unwrap(), "--out", report.to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    let v = read_json(&report);
    assert_eq!(v["status"], "fail");
    let failures = v["report"]["failures"].as_array().unwrap();
    assert!(!failures.is_empty());
    assert!(failures.iter().all(|f| !f["witness"].as_str().unwrap().is_empty()));
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "seed = \"forty-two\"\n").unwrap();
    assert_eq!(code(&canonmap(&["grouplaw", "--config", cfg.to_str().unwrap()])), 2);
    std::fs::write(&cfg, "unknown_key = 1\n").unwrap();
    assert_eq!(code(&canonmap(&["grouplaw", "--config", cfg.to_str().unwrap()])), 2);
    let missing = dir.path().join("absent.toml");
    assert_eq!(code(&canonmap(&["grouplaw", "--config", missing.to_str().unwrap()])), 2);
}

#[test]
fn bad_parameters_are_usage_errors() {
    assert_eq!(code(&canonmap(&["grouplaw", "--prime", "15"])), 2);
    assert_eq!(code(&canonmap(&["grouplaw", "--prime", "2"])), 2);
    assert_eq!(code(&canonmap(&["grouplaw", "--u", "-3", "--v", "3"])), 2);
    assert_eq!(code(&canonmap(&["grouplaw", "--u", "0"])), 2);
    assert_eq!(code(&canonmap(&["fibers", "--tolerance", "-1"])), 2);
    assert_eq!(code(&canonmap(&["no-such-command"])), 2);
    assert_eq!(code(&canonmap(&[])), 2);
}

#[test]
fn help_and_version_exit_zero() {
    let out = canonmap(&["--help"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("[default: 42]"));
    assert_eq!(code(&canonmap(&["--version"])), 0);
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(&cfg, "seed = 7\nprime = 17\nu = 1\nv = 1\n").unwrap();
    let report = dir.path().join("r.json");
    let out =
        canonmap(&["grouplaw", "--config", cfg.to_str().unwrap(), "--seed", "9", "--out", report.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let v = read_json(&report);
    assert_eq!(v["seed"], 9);
    assert_eq!(v["config"]["prime"], 17);
}

#[test]
fn grouplaw_gf13_passes() {
    let out = canonmap(&["grouplaw", "--prime", "13", "--u", "3", "--v", "5"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], "canonmap-report/1");
    assert!(v["report"].get("duration_ms").is_none());
}

#[test]
fn fibers_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        assert_eq!(code(&canonmap(&["fibers", "--trials", "100", "--seed", "42", "--out", p.to_str().unwrap()])), 0);
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
    let v = read_json(&a);
    assert_eq!(v["details"]["summary"]["generic_trials"], 100);
}

#[test]
fn timings_flag_adds_duration() {
    let out = canonmap(&["grouplaw", "--timings"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert!(v["report"]["duration_ms"].as_f64().unwrap() >= 0.0);
}

#[test]
fn basepoints_csv_has_sixteen_rows() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("bp.json");
    assert_eq!(code(&canonmap(&["basepoints", "--out", report.to_str().unwrap()])), 0);
    let csv = std::fs::read_to_string(dir.path().join("bp.csv")).unwrap();
    let mut lines = csv.lines();
    assert!(lines.next().unwrap().starts_with("bitangent,member,p_x"));
    assert_eq!(lines.count(), 16);
}

#[test]
fn sample_csv_rows_parse_as_points() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("pts.csv");
    let out = canonmap(&["sample", "--count", "25", "--seed", "3", "--csv", csv.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["index", "x", "y", "z", "t"]);
    let mut rows = 0;
    for rec in rdr.records() {
        let rec = rec.unwrap();
        for cell in rec.iter().skip(1) {
            let pair: [f64; 2] = serde_json::from_str(cell).unwrap();
            assert!(pair.iter().all(|x| x.is_finite()));
        }
        rows += 1;
    }
    assert_eq!(rows, 25);
}

#[test]
fn interiorsum_trials_flag_sets_sample_count() {
    let out = canonmap(&["interiorsum", "--trials", "7"]);
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["config"]["interiorsum_samples"], 7);
}
