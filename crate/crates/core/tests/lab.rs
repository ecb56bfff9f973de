use std::process::Command;

use nodal_lab::lab::{describe_check, run_checks, run_suite, CheckId, ExperimentConfig, SuiteContext, Verdict};
use nodal_lab::LabError;
use sha2::{Digest, Sha256};

fn cheap_checks() -> Vec<CheckId> {
    vec![CheckId::Recursion, CheckId::GlobalBound, CheckId::Propagation]
}

#[test]
fn empty_selection_yields_empty_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = ExperimentConfig {
        checks: vec![],
        ..ExperimentConfig::default()
    };
    let m = run_suite(&cfg, dir.path()).unwrap();
    assert!(m.checks.is_empty() && m.files.is_empty());
    assert_eq!(m.exit_status(), 0);
    assert!(dir.path().join("manifest.json").exists());
}

#[test]
fn inventory_matches_written_files_and_repeats() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let ctx = SuiteContext::new(ExperimentConfig::default()).unwrap();
    let mut ids = cheap_checks();
    ids.push(CheckId::Recursion);
    let m1 = run_checks(&ctx, &ids, a.path()).unwrap();
    let m2 = run_checks(&ctx, &cheap_checks(), b.path()).unwrap();
    assert_eq!(m1.checks.len(), 3, "duplicates are dropped");
    assert_eq!(m1.report_digest, m2.report_digest);
    assert_eq!(m1.exit_status(), 0);
    for e in &m1.files {
        let bytes = std::fs::read(a.path().join(&e.path)).unwrap();
        assert_eq!(bytes.len(), e.bytes);
        assert_eq!(hex::encode(Sha256::digest(&bytes)), e.sha256);
    }
    let mut paths: Vec<_> = m1.files.iter().map(|e| e.path.clone()).collect();
    paths.sort();
    assert_eq!(paths, m1.files.iter().map(|e| e.path.clone()).collect::<Vec<_>>());
    assert!(m1.checks.iter().all(|c| c.verdict == Verdict::Pass));
    let stored: serde_json::Value =
        serde_json::from_slice(&std::fs::read(a.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(stored["report_digest"], m1.report_digest);
}

#[test]
fn config_errors_list_every_field() {
    let bad = r#"{"resolution": 100, "monotonicity": {"delta": 0.9}, "combinatorics": {"k": -1.0}}"#;
    let Err(LabError::Config(errs)) = ExperimentConfig::from_json(bad) else {
        panic!("expected a config error")
    };
    assert_eq!(errs.len(), 3, "{errs:?}");
    assert!(errs.iter().any(|e| e.starts_with("resolution")));
    assert!(ExperimentConfig::from_json(r#"{"checks": ["nodal.nope"]}"#).is_err());
    assert!(ExperimentConfig::from_json(r#"{"unknown": 1}"#).is_err());
}

#[test]
fn config_hash_tracks_content() {
    let a = ExperimentConfig::default();
    let b = ExperimentConfig { seed: 7, ..a.clone() };
    assert_eq!(a.hash().unwrap(), ExperimentConfig::default().hash().unwrap());
    assert_ne!(a.hash().unwrap(), b.hash().unwrap());
}

#[test]
fn describe_cites_anchor_or_lists_ids() {
    assert!(describe_check("carleman.lap").unwrap().contains("lap-car"));
    assert!(describe_check("doubling.mono").unwrap().contains("mono-del"));
    let err = describe_check("carleman.nope").unwrap_err().to_string();
    for c in CheckId::ALL {
        assert!(err.contains(c.as_str()), "{err}");
    }
}

fn cli(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_nodal-lab")).args(args).output().unwrap()
}

#[test]
fn cli_exit_codes() {
    let ok = cli(&["describe", "simplex.lemma"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("simplex-mon"));
    assert_eq!(cli(&["describe", "nope"]).status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().to_str().unwrap();
    let bound = cli(&["bound", "--out", out]);
    assert_eq!(bound.status.code(), Some(0), "{}", String::from_utf8_lossy(&bound.stderr));
    assert!(dir.path().join("recursion.csv").exists());

    let cfg = dir.path().join("bad.json");
    std::fs::write(&cfg, r#"{"resolution": 4}"#).unwrap();
    assert_eq!(cli(&["bound", "--config", cfg.to_str().unwrap(), "--out", out]).status.code(), Some(1));
}
