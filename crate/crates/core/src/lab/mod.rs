//! Configuration, the frozen corpus, per-check runners and the suite.

pub mod checks;
pub mod config;
pub mod corpus;
pub mod runs;
pub mod suite;

pub use checks::{describe_check, CheckId};
pub use config::ExperimentConfig;
pub use corpus::{materialize_corpus, standard_corpus, Member, MemberSpec};
pub use suite::{export_corpus, run_checks, run_suite, Artifact, CheckOutcome, CheckResult, Counts, FileEntry, RunManifest, SuiteContext, Verdict};
