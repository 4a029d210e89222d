//! Dataset generation and the manifest format.
//!
//! `gen` materializes every offline sample for the configured games and
//! tasks: one PNG per sample under `images/`, plus `manifest.json` holding
//! the config snapshot and one entry per sample. The manifest carries
//! hashes of both the image and the prompt, so a runner can verify it is
//! evaluating exactly the dataset that was generated — prompts are
//! reconstructed from the entry rather than stored, keeping manifests
//! small and forcing the reconstruction path to stay correct.

use crate::config::RunConfig;
use anyhow::{bail, Context, Result};
use boardbench::render::sha256_hex;
use boardbench::stategen::GenProfile;
use boardbench::tasks::{
    make_perceiving_sample, make_qa_sample, make_rule_sample, prompts, GroundTruth, Sample,
    TaskKind,
};
use boardbench::{GameKind, Seed, Theme};
use serde::{Deserialize, Serialize};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

/// Extra seeds tried when a generated rule-following position dead-ends.
const RULE_REGEN_ATTEMPTS: u64 = 8;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    pub game: GameKind,
    pub task: TaskKind,
    pub seed: Seed,
    /// Image path relative to the manifest's directory.
    pub image: String,
    pub image_sha256: String,
    pub prompt_sha256: String,
    pub ground_truth: GroundTruth,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub config: RunConfig,
    pub config_sha256: String,
    pub samples: Vec<ManifestEntry>,
}

impl Manifest {
    pub fn load(dir: &Path) -> Result<Manifest> {
        let path = dir.join("manifest.json");
        let text = std::fs::read_to_string(&path)
            .with_context(|| format!("reading {}", path.display()))?;
        let mut manifest: Manifest =
            serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        manifest.config.out_dir = dir.to_path_buf();
        Ok(manifest)
    }

    pub fn write_to(&self, dir: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("manifest serializes");
        let path = dir.join("manifest.json");
        std::fs::write(&path, json).with_context(|| format!("writing {}", path.display()))
    }
}

/// Rebuild the exact prompt text for a manifest entry. The result must
/// hash to `prompt_sha256`; the runner checks this before issuing requests.
pub fn prompt_for(entry: &ManifestEntry) -> Result<String> {
    match entry.task {
        TaskKind::Perceiving => Ok(prompts::perceiving(entry.game).to_string()),
        TaskKind::RuleFollowing => Ok(prompts::rule(entry.game).to_string()),
        TaskKind::QA => {
            let GroundTruth::Answer { item, .. } = &entry.ground_truth else {
                bail!("{}: qa entry without a stored item", entry.id);
            };
            Ok(prompts::qa(entry.game).replace("{question}", &item.rendered()))
        }
        TaskKind::EndToEnd => bail!("{}: e2e has no offline prompt", entry.id),
    }
}

fn build_sample(profile: &GenProfile, theme: &Theme, task: TaskKind, seed: Seed) -> Result<Sample> {
    match task {
        TaskKind::Perceiving => Ok(make_perceiving_sample(profile, theme, seed)),
        TaskKind::QA => Ok(make_qa_sample(profile, theme, seed)),
        TaskKind::RuleFollowing => {
            let mut attempt = seed;
            for retry in 1..=RULE_REGEN_ATTEMPTS {
                match make_rule_sample(profile, theme, attempt) {
                    Ok(sample) => return Ok(sample),
                    Err(err) if retry < RULE_REGEN_ATTEMPTS => {
                        log::debug!("{}: regenerating ({err})", profile.kind);
                        attempt = seed.child("regen", retry);
                    }
                    Err(err) => {
                        return Err(err).with_context(|| {
                            format!("{} rule sample for seed {:#x}", profile.kind, seed.0)
                        })
                    }
                }
            }
            unreachable!()
        }
        TaskKind::EndToEnd => bail!("e2e sessions are produced by `play`, not `gen`"),
    }
}

fn entry_for(config: &RunConfig, game: GameKind, task: TaskKind, index: u64) -> Result<ManifestEntry> {
    let seed = Seed(config.seed).child(game.name(), 0).child(task.name(), index);
    let profile = config.profile_for(game);
    let sample = build_sample(&profile, &config.theme, task, seed)?;
    let image = format!("images/{}.png", sample.id);
    std::fs::write(config.out_dir.join(&image), &sample.image_png)
        .with_context(|| format!("writing {image}"))?;
    Ok(ManifestEntry {
        id: sample.id,
        game,
        task,
        seed: sample.seed,
        image,
        image_sha256: sha256_hex(&sample.image_png),
        prompt_sha256: sha256_hex(sample.prompt.as_bytes()),
        ground_truth: sample.ground_truth,
    })
}

pub fn cmd_gen(config: &RunConfig) -> Result<Manifest> {
    std::fs::create_dir_all(config.out_dir.join("images"))?;

    let mut jobs: Vec<(GameKind, TaskKind, u64)> = Vec::new();
    for &game in &config.games {
        for &task in &config.tasks {
            if task == TaskKind::EndToEnd {
                log::warn!("skipping e2e in gen; use `play` to run game sessions");
                continue;
            }
            for i in 0..config.samples_per_task {
                jobs.push((game, task, i as u64));
            }
        }
    }

    let slots: Mutex<Vec<Option<Result<ManifestEntry>>>> =
        Mutex::new((0..jobs.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = config.parallelism.clamp(1, jobs.len().max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(game, task, index)) = jobs.get(i) else { break };
                let result = entry_for(config, game, task, index);
                slots.lock().unwrap()[i] = Some(result);
            });
        }
    });

    let mut samples = Vec::with_capacity(jobs.len());
    for slot in slots.into_inner().unwrap() {
        samples.push(slot.expect("every job ran")?);
    }

    let manifest =
        Manifest { config: config.clone(), config_sha256: config.sha256(), samples };
    manifest.write_to(&config.out_dir)?;
    println!(
        "gen: {} samples ({} games x {} tasks) -> {}",
        manifest.samples.len(),
        config.games.len(),
        config.tasks.iter().filter(|t| **t != TaskKind::EndToEnd).count(),
        config.out_dir.display()
    );
    Ok(manifest)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;

    fn small_config(dir: &Path) -> RunConfig {
        let mut config = RunConfig::default();
        config
            .apply(&Overrides {
                games: vec!["ttt".into()],
                samples: Some(2),
                out: Some(dir.to_path_buf()),
                ..Overrides::default()
            })
            .unwrap();
        config
    }

    #[test]
    fn gen_writes_images_and_a_loadable_manifest() {
        let dir = tempfile::tempdir().unwrap();
        let config = small_config(dir.path());
        let manifest = cmd_gen(&config).unwrap();
        assert_eq!(manifest.samples.len(), 6); // 1 game x 3 tasks x 2

        let loaded = Manifest::load(dir.path()).unwrap();
        assert_eq!(loaded.samples, manifest.samples);
        assert_eq!(loaded.config_sha256, config.sha256());
        assert_eq!(loaded.config.out_dir, dir.path());

        for entry in &loaded.samples {
            let png = std::fs::read(dir.path().join(&entry.image)).unwrap();
            assert_eq!(sha256_hex(&png), entry.image_sha256, "{}", entry.id);
            let prompt = prompt_for(entry).unwrap();
            assert_eq!(sha256_hex(prompt.as_bytes()), entry.prompt_sha256, "{}", entry.id);
        }
    }

    #[test]
    fn generation_is_byte_identical_across_runs_and_directories() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        cmd_gen(&small_config(a.path())).unwrap();
        cmd_gen(&small_config(b.path())).unwrap();

        let left = std::fs::read(a.path().join("manifest.json")).unwrap();
        let right = std::fs::read(b.path().join("manifest.json")).unwrap();
        assert_eq!(left, right);

        for entry in Manifest::load(a.path()).unwrap().samples {
            let left = std::fs::read(a.path().join(&entry.image)).unwrap();
            let right = std::fs::read(b.path().join(&entry.image)).unwrap();
            assert_eq!(left, right, "{}", entry.id);
        }
    }

    #[test]
    fn rule_entries_carry_live_states() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = cmd_gen(&small_config(dir.path())).unwrap();
        let rules: Vec<_> =
            manifest.samples.iter().filter(|e| e.task == TaskKind::RuleFollowing).collect();
        assert_eq!(rules.len(), 2);
        for entry in rules {
            let GroundTruth::State(state) = &entry.ground_truth else { panic!() };
            assert!(!state.legal_moves().is_empty());
        }
    }

    #[test]
    fn e2e_requests_generate_nothing() {
        let dir = tempfile::tempdir().unwrap();
        let mut config = small_config(dir.path());
        config.tasks = vec![TaskKind::EndToEnd];
        let manifest = cmd_gen(&config).unwrap();
        assert!(manifest.samples.is_empty());
    }
}
