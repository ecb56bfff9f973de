//! Run a subset of the suite and print the manifest summary.
//!
//! cargo run --release --example run_suite -- [out-dir]

use nodal_lab::lab::{run_suite, CheckId, ExperimentConfig};

fn main() -> anyhow::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "out-example".into());
    let config = ExperimentConfig {
        resolution: 129,
        checks: vec![CheckId::Solver, CheckId::Homogeneity, CheckId::NodalLength, CheckId::Recursion],
        ..ExperimentConfig::default()
    };
    let manifest = run_suite(&config, out.as_ref())?;
    for c in &manifest.checks {
        println!("{:<22} {:?} {:?}", c.id.as_str(), c.verdict, c.counts);
    }
    println!("{} files, digest {}, exit status {}", manifest.files.len(), manifest.report_digest, manifest.exit_status());
    Ok(())
}
