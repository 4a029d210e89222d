//! Run configuration: one serializable struct that pins everything a
//! dataset, evaluation run, or game session depends on. A manifest embeds
//! the config snapshot verbatim, so `(config, seed)` reproduces every
//! artifact byte for byte. Secrets never enter the config — the adapter
//! stores the *name* of the API-key environment variable, not its value.

use anyhow::{bail, Context, Result};
use boardbench::client::AdapterConfig;
use boardbench::render::sha256_hex;
use boardbench::stategen::GenProfile;
use boardbench::tasks::TaskKind;
use boardbench::{GameKind, SearchConfig, Theme};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const DEFAULT_SAMPLES_PER_TASK: u32 = 2000;
pub const DEFAULT_E2E_GAMES: u32 = 100;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RunConfig {
    pub games: Vec<GameKind>,
    /// Tasks to generate samples for; the end-to-end task is driven by
    /// `play` and ignores this list.
    pub tasks: Vec<TaskKind>,
    pub samples_per_task: u32,
    pub e2e_games: u32,
    pub seed: u64,
    /// "random", "oracle", or "http" (the configured adapter).
    pub agent: String,
    pub adapter: AdapterConfig,
    pub search: SearchConfig,
    pub theme: Theme,
    /// Per-game generator overrides; games without an entry use
    /// [`GenProfile::default_for`].
    pub profiles: Vec<GenProfile>,
    pub parallelism: usize,
    /// Where artifacts land. Not serialized: datasets stay byte-identical
    /// regardless of where they are written, and consumers locate files
    /// relative to the manifest.
    #[serde(skip)]
    pub out_dir: PathBuf,
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig {
            games: GameKind::ALL.to_vec(),
            tasks: TaskKind::OFFLINE.to_vec(),
            samples_per_task: DEFAULT_SAMPLES_PER_TASK,
            e2e_games: DEFAULT_E2E_GAMES,
            seed: 0,
            agent: "random".to_string(),
            adapter: AdapterConfig::new("http://127.0.0.1:8000/v1/chat/completions", "local"),
            search: SearchConfig::default(),
            theme: Theme::default(),
            profiles: Vec::new(),
            parallelism: 4,
            out_dir: PathBuf::from("bench-out"),
        }
    }
}

/// Command-line overrides applied on top of a config file (or defaults).
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub games: Vec<String>,
    pub tasks: Vec<String>,
    pub out: Option<PathBuf>,
    pub parallelism: Option<usize>,
    pub agent: Option<String>,
    pub samples: Option<u32>,
}

impl RunConfig {
    pub fn load(path: Option<&Path>) -> Result<RunConfig> {
        match path {
            None => Ok(RunConfig::default()),
            Some(p) => {
                let text = std::fs::read_to_string(p)
                    .with_context(|| format!("reading config {}", p.display()))?;
                serde_json::from_str(&text)
                    .with_context(|| format!("parsing config {}", p.display()))
            }
        }
    }

    pub fn apply(&mut self, ov: &Overrides) -> Result<()> {
        if let Some(seed) = ov.seed {
            self.seed = seed;
        }
        if !ov.games.is_empty() {
            self.games = ov
                .games
                .iter()
                .map(|name| {
                    GameKind::from_name(name)
                        .ok_or_else(|| anyhow::anyhow!("unknown game {name:?}"))
                })
                .collect::<Result<_>>()?;
        }
        if !ov.tasks.is_empty() {
            self.tasks = ov
                .tasks
                .iter()
                .map(|name| {
                    TaskKind::from_name(name)
                        .ok_or_else(|| anyhow::anyhow!("unknown task {name:?}"))
                })
                .collect::<Result<_>>()?;
        }
        if let Some(out) = &ov.out {
            self.out_dir = out.clone();
        }
        if let Some(parallelism) = ov.parallelism {
            self.parallelism = parallelism.max(1);
        }
        if let Some(agent) = &ov.agent {
            self.agent = agent.clone();
        }
        if let Some(samples) = ov.samples {
            self.samples_per_task = samples;
            self.e2e_games = samples;
        }
        if self.games.is_empty() {
            bail!("no games selected");
        }
        Ok(())
    }

    pub fn profile_for(&self, kind: GameKind) -> GenProfile {
        self.profiles
            .iter()
            .find(|p| p.kind == kind)
            .cloned()
            .unwrap_or_else(|| GenProfile::default_for(kind))
    }

    /// Hash of the config snapshot; stamped into manifests, metrics, and
    /// reports so runs are comparable only within identical configs.
    pub fn sha256(&self) -> String {
        let json = serde_json::to_string(self).expect("config serializes");
        sha256_hex(json.as_bytes())
    }

    /// Short name identifying the evaluated agent in file names and
    /// reports: the builtin agent's name, or "http-<model>" for the
    /// configured endpoint.
    pub fn agent_label(&self) -> String {
        if self.agent == "http" {
            let model: String = self
                .adapter
                .model_name
                .chars()
                .map(|c| if c.is_ascii_alphanumeric() { c.to_ascii_lowercase() } else { '-' })
                .collect();
            format!("http-{}", model.trim_matches('-'))
        } else {
            self.agent.clone()
        }
    }
}
