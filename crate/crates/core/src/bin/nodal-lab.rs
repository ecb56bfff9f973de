use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use nodal_lab::lab::{describe_check, export_corpus, run_checks, CheckId, ExperimentConfig, SuiteContext};

#[derive(Parser)]
#[command(name = "nodal-lab", version, about = "Numerical checks for nodal sets of bi-Laplace solutions")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Experiment config (JSON); defaults apply to missing fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Corpus resolution (odd).
    #[arg(long, global = true)]
    resolution: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Sample the analytic corpus members to NLF1 files.
    Generate,
    /// Solve the seeded boundary-value members to NLF1 files.
    Solve,
    /// Homogeneity, monotonicity and growth of the doubling index.
    Doubling,
    /// Three-ball interpolation over the corpus.
    Threeball,
    /// Weighted estimates, Caccioppoli bounds and propagation of smallness.
    Carleman,
    /// Nodal length oracles and the scaling exponent.
    Nodal,
    /// Hyperplane and bad-cube partition checks.
    Partition,
    /// Simplex covering and barycenter accumulation.
    Simplex,
    /// Recursion and global bound ledger.
    Bound,
    /// Every check selected by the config.
    Suite,
    /// Describe one check, or list all of them.
    Describe { id: Option<String> },
}

impl Cmd {
    fn checks(&self, cfg: &ExperimentConfig) -> Vec<CheckId> {
        use CheckId::*;
        match self {
            Cmd::Doubling => vec![Homogeneity, Monotonicity, Growth],
            Cmd::Threeball => vec![ThreeBall],
            Cmd::Carleman => vec![LapCar, Interior, Bilaplace, Boundary, Caccioppoli, Propagation],
            Cmd::Nodal => vec![NodalLength, Scaling],
            Cmd::Partition => vec![Hyperplane, BadCubes],
            Cmd::Simplex => vec![Covering, SimplexLemma],
            Cmd::Bound => vec![Recursion, GlobalBound],
            Cmd::Suite => cfg.checks.clone(),
            Cmd::Generate | Cmd::Solve | Cmd::Describe { .. } => vec![],
        }
    }
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    if let Cmd::Describe { id } = &cli.cmd {
        match id {
            Some(id) => print!("{}", describe_check(id)?),
            None => CheckId::ALL.iter().for_each(|c| println!("{:<24} {}", c.as_str(), c.anchor())),
        }
        return Ok(0);
    }
    let mut cfg = match &cli.config {
        Some(p) => ExperimentConfig::load(p).with_context(|| format!("loading {}", p.display()))?,
        None => ExperimentConfig::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(r) = cli.resolution {
        cfg.resolution = r;
    }
    let checks = cli.cmd.checks(&cfg);
    let ctx = SuiteContext::new(cfg)?;
    std::fs::create_dir_all(&cli.out).with_context(|| format!("creating {}", cli.out.display()))?;
    if let Cmd::Generate | Cmd::Solve = cli.cmd {
        let files = export_corpus(&ctx, &cli.out, matches!(cli.cmd, Cmd::Solve))?;
        println!("wrote {} files to {}", files.len(), cli.out.display());
        return Ok(0);
    }
    let manifest = run_checks(&ctx, &checks, &cli.out)?;
    for c in &manifest.checks {
        let v = serde_json::to_value(c.verdict)?;
        println!(
            "{:<24} {:<8} pass={} fail={} flagged={}{}",
            c.id.as_str(),
            v.as_str().unwrap_or("?"),
            c.counts.pass,
            c.counts.fail,
            c.counts.flagged,
            c.error.as_deref().map(|e| format!("  error: {e}")).unwrap_or_default()
        );
    }
    println!("manifest: {} ({} files, digest {})", cli.out.join("manifest.json").display(), manifest.files.len(), manifest.report_digest);
    Ok(manifest.exit_status())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
