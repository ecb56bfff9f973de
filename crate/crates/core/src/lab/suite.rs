//! Suite orchestration: shared corpus, concurrent checks, file inventory
//! and the run manifest.

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::sync::OnceLock;
use std::time::{SystemTime, UNIX_EPOCH};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::checks::CheckId;
use super::config::ExperimentConfig;
use super::corpus::{at_resolution, materialize_corpus, standard_corpus, Member, MemberSpec};
use super::runs::run_check;
use crate::error::{LabError, Result};
use crate::solution::SolveOptions;

/// Outcome class of a check. `Flagged` marks runs where the claim was not
/// applicable or held without strict gain; it does not fail a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Flagged,
    Fail,
    Error,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub flagged: usize,
}

/// A report file produced by a check, path relative to the output directory.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

/// In-memory result of one check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub id: CheckId,
    pub verdict: Verdict,
    pub counts: Counts,
    pub summary: serde_json::Value,
    pub artifacts: Vec<Artifact>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FileEntry {
    pub path: String,
    pub bytes: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub id: CheckId,
    pub anchor: String,
    pub verdict: Verdict,
    pub counts: Counts,
    pub summary: serde_json::Value,
    pub files: Vec<String>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub tool: String,
    pub version: String,
    pub config_hash: String,
    pub seed: u64,
    pub resolution: usize,
    /// Unix seconds; not part of any digest.
    pub started: u64,
    pub finished: u64,
    pub checks: Vec<CheckOutcome>,
    /// Every emitted report file, sorted by path.
    pub files: Vec<FileEntry>,
    /// Sha256 over the `path sha256` lines of the inventory.
    pub report_digest: String,
}

impl RunManifest {
    /// 0 when everything passed or was flagged, 2 when an inequality
    /// failed, 1 on any operational error.
    pub fn exit_status(&self) -> i32 {
        if self.checks.iter().any(|c| c.verdict == Verdict::Error) {
            1
        } else if self.checks.iter().any(|c| c.verdict == Verdict::Fail) {
            2
        } else {
            0
        }
    }

    pub fn outcome(&self, id: CheckId) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.id == id)
    }
}

/// Shared state of a run: the configuration and the lazily built corpus at
/// the configured resolution and at the doubled one.
pub struct SuiteContext {
    pub config: ExperimentConfig,
    specs: Vec<MemberSpec>,
    corpus: OnceLock<std::result::Result<Vec<Member>, String>>,
    fine: OnceLock<std::result::Result<Vec<Member>, String>>,
}

impl SuiteContext {
    pub fn new(config: ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let specs = standard_corpus(config.seed, config.bvp_count, config.resolution);
        Ok(SuiteContext {
            config,
            specs,
            corpus: OnceLock::new(),
            fine: OnceLock::new(),
        })
    }

    pub fn specs(&self) -> &[MemberSpec] {
        &self.specs
    }

    fn build(specs: &[MemberSpec]) -> std::result::Result<Vec<Member>, String> {
        materialize_corpus(specs, &SolveOptions::default()).map_err(|e| e.to_string())
    }

    pub fn corpus(&self) -> Result<&[Member]> {
        self.corpus
            .get_or_init(|| Self::build(&self.specs))
            .as_deref()
            .map_err(|e| LabError::Corpus(e.clone()))
    }

    /// The corpus at resolution `2n − 1`, sharing every old node.
    pub fn fine_corpus(&self) -> Result<&[Member]> {
        self.fine
            .get_or_init(|| Self::build(&at_resolution(&self.specs, 2 * self.config.resolution - 1)))
            .as_deref()
            .map_err(|e| LabError::Corpus(e.clone()))
    }
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn unix_now() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0)
}

fn write_artifact(out: &Path, a: &Artifact) -> Result<FileEntry> {
    let path: PathBuf = out.join(&a.name);
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent)?;
    }
    std::fs::write(&path, &a.bytes)?;
    Ok(FileEntry {
        path: a.name.clone(),
        bytes: a.bytes.len(),
        sha256: sha256_hex(&a.bytes),
    })
}

/// Digest of an inventory sorted by path.
pub fn inventory_digest(files: &[FileEntry]) -> String {
    let mut h = Sha256::new();
    for f in files {
        h.update(f.path.as_bytes());
        h.update(b" ");
        h.update(f.sha256.as_bytes());
        h.update(b"\n");
    }
    hex::encode(h.finalize())
}

/// Run the selected checks concurrently, write their reports under `out`
/// and finish with `manifest.json`. Check failures and errors are recorded
/// in the manifest; only configuration and I/O problems return `Err`.
pub fn run_suite(config: &ExperimentConfig, out: &Path) -> Result<RunManifest> {
    let ctx = SuiteContext::new(config.clone())?;
    run_checks(&ctx, &config.checks, out)
}

pub fn run_checks(ctx: &SuiteContext, ids: &[CheckId], out: &Path) -> Result<RunManifest> {
    let started = unix_now();
    std::fs::create_dir_all(out)?;
    let mut seen = BTreeSet::new();
    let ids: Vec<CheckId> = ids.iter().copied().filter(|c| seen.insert(*c)).collect();
    let results: Vec<(CheckId, Result<CheckResult>)> =
        ids.par_iter().map(|&id| (id, run_check(ctx, id))).collect();
    let mut checks = Vec::with_capacity(results.len());
    let mut files = Vec::new();
    for (id, res) in results {
        let outcome = match res {
            Ok(r) => {
                let mut names = Vec::with_capacity(r.artifacts.len());
                for a in &r.artifacts {
                    files.push(write_artifact(out, a)?);
                    names.push(a.name.clone());
                }
                CheckOutcome {
                    id,
                    anchor: id.anchor().to_string(),
                    verdict: r.verdict,
                    counts: r.counts,
                    summary: r.summary,
                    files: names,
                    error: None,
                }
            }
            Err(e) => CheckOutcome {
                id,
                anchor: id.anchor().to_string(),
                verdict: Verdict::Error,
                counts: Counts::default(),
                summary: serde_json::Value::Null,
                files: vec![],
                error: Some(e.to_string()),
            },
        };
        checks.push(outcome);
    }
    files.sort_by(|a, b| a.path.cmp(&b.path));
    let manifest = RunManifest {
        tool: env!("CARGO_PKG_NAME").to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        config_hash: ctx.config.hash()?,
        seed: ctx.config.seed,
        resolution: ctx.config.resolution,
        started,
        finished: unix_now(),
        checks,
        report_digest: inventory_digest(&files),
        files,
    };
    std::fs::write(out.join("manifest.json"), serde_json::to_vec_pretty(&manifest)?)?;
    Ok(manifest)
}

/// Write corpus fields as NLF1 files with a JSON sidecar per member.
/// `solved` selects the boundary-value members, otherwise the analytic ones.
pub fn export_corpus(ctx: &SuiteContext, out: &Path, solved: bool) -> Result<Vec<FileEntry>> {
    let mut files = Vec::new();
    for m in ctx.corpus()? {
        if m.solution.report.is_some() != solved {
            continue;
        }
        let mut field = Vec::new();
        crate::field::io::write_nlf1(&m.solution.u, &mut field)?;
        let meta = serde_json::json!({
            "id": m.id,
            "spec": m.spec,
            "potential_sup": m.solution.m,
            "report": m.solution.report,
        });
        for a in [
            Artifact {
                name: format!("fields/{}.nlf1", m.id),
                bytes: field,
            },
            Artifact {
                name: format!("fields/{}.json", m.id),
                bytes: serde_json::to_vec_pretty(&meta)?,
            },
        ] {
            files.push(write_artifact(out, &a)?);
        }
    }
    std::fs::write(out.join("corpus.json"), serde_json::to_vec_pretty(&files)?)?;
    Ok(files)
}
