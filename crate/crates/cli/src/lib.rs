//! Library behind the `boardbench` binary: run configuration, dataset
//! generation and persistence, offline evaluation, online game sessions,
//! and report assembly. The binary in `main.rs` is a thin argument-parsing
//! shell over these modules.

pub mod config;
pub mod dataset;
pub mod playing;
pub mod report;
pub mod runner;

pub use config::RunConfig;
pub use dataset::{cmd_gen, Manifest, ManifestEntry};
pub use playing::cmd_play;
pub use report::{cmd_rate, cmd_report};
pub use runner::{cmd_run, ResultRecord};
