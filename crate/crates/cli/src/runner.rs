//! Offline evaluation: feed every manifest sample to an agent, score the
//! replies, and append one JSON line per sample to a results file.
//!
//! The runner trusts nothing it did not hash: before a sample is issued,
//! the image on disk and the reconstructed prompt are checked against the
//! manifest digests. Workers claim samples from a shared cursor; a single
//! writer thread flushes records strictly in manifest order, so a results
//! file is always a clean, resumable prefix — and built-in agent runs are
//! byte-identical no matter the parallelism.

use crate::config::RunConfig;
use crate::dataset::{prompt_for, Manifest, ManifestEntry};
use crate::report::MetricsFile;
use anyhow::{bail, Context, Result};
use boardbench::client::{
    builtin_agent, AdapterConfig, HttpAdapter, ModelAdapter, ModelRequest, OracleContext,
};
use boardbench::parse_eval::{
    parse_answer, parse_matrix, parse_move, score_perceiving, score_qa, validate_rule_move,
    ParseStatus, TaskMetrics,
};
use boardbench::render::sha256_hex;
use boardbench::tasks::{GroundTruth, TaskKind};
use boardbench::{GameKind, Seed};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub id: String,
    pub game: GameKind,
    pub task: TaskKind,
    pub score: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub parse_status: Option<ParseStatus>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transport_error: Option<String>,
    /// Wall-clock timing, recorded for network agents only so built-in
    /// runs stay byte-identical.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latency_ms: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub completed_unix_ms: Option<u64>,
}

/// Evaluation-time choices layered over the manifest's config snapshot.
/// The snapshot pins what the dataset *is*; these pick who answers it.
#[derive(Debug, Clone, Default)]
pub struct EvalOptions {
    pub agent: Option<String>,
    pub parallelism: Option<usize>,
    pub adapter: Option<AdapterConfig>,
    pub resume: bool,
}

enum Agent {
    Builtin(Box<dyn ModelAdapter + Send>),
    Http(HttpAdapter),
}

impl Agent {
    fn send(&mut self, req: &ModelRequest) -> Result<String, boardbench::client::ClientError> {
        match self {
            Agent::Builtin(a) => a.send(req),
            Agent::Http(a) => a.send(req),
        }
    }

    fn timed(&self) -> bool {
        matches!(self, Agent::Http(_))
    }
}

fn make_agent(config: &RunConfig) -> Result<Agent> {
    if let Some(builtin) = builtin_agent(&config.agent, Seed(config.seed)) {
        return Ok(Agent::Builtin(builtin));
    }
    if config.agent == "http" {
        if let Some(var) = &config.adapter.api_key_env {
            if std::env::var(var).is_err() {
                bail!("api key environment variable {var} is not set");
            }
        }
        return Ok(Agent::Http(HttpAdapter::new(config.adapter.clone())?));
    }
    bail!("unknown agent {:?}; expected random, oracle, or http", config.agent);
}

fn now_unix_ms() -> u64 {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_millis() as u64)
        .unwrap_or(0)
}

/// Load, verify, prompt, send, score: one sample end to end.
fn evaluate_entry(entry: &ManifestEntry, dir: &Path, agent: &mut Agent) -> Result<ResultRecord> {
    let prompt = prompt_for(entry)?;
    if sha256_hex(prompt.as_bytes()) != entry.prompt_sha256 {
        bail!("{}: reconstructed prompt does not match prompt_sha256", entry.id);
    }
    let image = std::fs::read(dir.join(&entry.image))
        .with_context(|| format!("{}: reading {}", entry.id, entry.image))?;
    if sha256_hex(&image) != entry.image_sha256 {
        bail!("{}: image on disk does not match image_sha256", entry.id);
    }

    let (n_options, oracle) = match &entry.ground_truth {
        GroundTruth::Matrix(m) => (None, OracleContext::Matrix(m)),
        GroundTruth::Answer { item, .. } => {
            (Some(item.options.len() as u8), OracleContext::Answer(item.correct))
        }
        GroundTruth::State(s) => (None, OracleContext::State(s)),
    };
    let request = ModelRequest {
        prompt: &prompt,
        image_png: &image,
        kind: entry.game,
        task: entry.task,
        id: &entry.id,
        n_options,
        oracle: Some(oracle),
    };

    let started = std::time::Instant::now();
    let reply = agent.send(&request);
    let (latency_ms, completed_unix_ms) = if agent.timed() {
        (Some(started.elapsed().as_millis() as u64), Some(now_unix_ms()))
    } else {
        (None, None)
    };

    let mut record = ResultRecord {
        id: entry.id.clone(),
        game: entry.game,
        task: entry.task,
        score: 0.0,
        parse_status: None,
        raw: None,
        transport_error: None,
        latency_ms,
        completed_unix_ms,
    };
    match reply {
        Err(err) => record.transport_error = Some(err.to_string()),
        Ok(text) => {
            let (status, score) = match &entry.ground_truth {
                GroundTruth::Matrix(gt) => {
                    let parsed = parse_matrix(&text, entry.game);
                    (parsed.status, score_perceiving(&parsed, gt))
                }
                GroundTruth::Answer { item, .. } => {
                    let parsed = parse_answer(&text);
                    (parsed.status, f64::from(score_qa(&parsed, item)))
                }
                GroundTruth::State(state) => {
                    let parsed = parse_move(&text, entry.game);
                    (parsed.status, f64::from(u8::from(validate_rule_move(&parsed, state))))
                }
            };
            record.parse_status = Some(status);
            record.score = score;
            record.raw = Some(text);
        }
    }
    Ok(record)
}

/// Parse an existing results file for resumption. A malformed final line
/// (a crash mid-write) is dropped; a malformed interior line is corruption
/// and refuses to resume.
fn read_existing(path: &Path) -> Result<Vec<ResultRecord>> {
    let text = std::fs::read_to_string(path)?;
    let lines: Vec<&str> = text.lines().collect();
    let mut records = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        match serde_json::from_str::<ResultRecord>(line) {
            Ok(r) => records.push(r),
            Err(_) if i + 1 == lines.len() => {
                log::warn!("{}: dropping truncated final line", path.display());
            }
            Err(e) => bail!("{} line {}: {e}", path.display(), i + 1),
        }
    }
    Ok(records)
}

fn compute_metrics(records: &[ResultRecord]) -> Vec<TaskMetrics> {
    let mut groups: BTreeMap<(GameKind, TaskKind), Vec<&ResultRecord>> = BTreeMap::new();
    for r in records {
        groups.entry((r.game, r.task)).or_default().push(r);
    }
    groups
        .into_iter()
        .map(|((kind, task), rs)| {
            let scored: Vec<&&ResultRecord> =
                rs.iter().filter(|r| r.transport_error.is_none()).collect();
            let score = if scored.is_empty() {
                0.0
            } else {
                scored.iter().map(|r| r.score).sum::<f64>() / scored.len() as f64
            };
            let invalid = rs
                .iter()
                .filter(|r| r.parse_status == Some(ParseStatus::InvalidFormat))
                .count();
            let errors = rs.len() - scored.len();
            let mut breakdown = BTreeMap::new();
            breakdown.insert("invalid_format".to_string(), invalid as f64);
            breakdown.insert("transport_errors".to_string(), errors as f64);
            TaskMetrics { kind, task, n_samples: rs.len(), score, breakdown }
        })
        .collect()
}

pub fn results_path(dir: &Path, agent_label: &str) -> PathBuf {
    dir.join(format!("results-{agent_label}.jsonl"))
}

pub fn cmd_run(dataset_dir: &Path, opts: &EvalOptions) -> Result<Vec<TaskMetrics>> {
    let manifest = Manifest::load(dataset_dir)?;
    let mut config = manifest.config.clone();
    if let Some(adapter) = &opts.adapter {
        config.adapter = adapter.clone();
    }
    if let Some(agent) = &opts.agent {
        config.agent = agent.clone();
    }
    if let Some(parallelism) = opts.parallelism {
        config.parallelism = parallelism.max(1);
    }
    make_agent(&config)?; // validate the choice before touching files

    let label = config.agent_label();
    let path = results_path(dataset_dir, &label);
    let mut records: Vec<ResultRecord> = Vec::new();
    if path.exists() {
        if !opts.resume {
            bail!(
                "{} already exists; pass --resume to continue or remove it first",
                path.display()
            );
        }
        records = read_existing(&path)?;
    }
    let done: HashSet<&str> = records.iter().map(|r| r.id.as_str()).collect();
    let jobs: Vec<&ManifestEntry> =
        manifest.samples.iter().filter(|e| !done.contains(e.id.as_str())).collect();
    log::info!("{label}: {} samples to evaluate, {} already done", jobs.len(), done.len());

    if !jobs.is_empty() {
        // Rewrite the kept prefix so a dropped truncated line is gone, then
        // append new records from there.
        let mut file = std::io::BufWriter::new(
            std::fs::File::create(&path).with_context(|| format!("opening {}", path.display()))?,
        );
        for r in &records {
            writeln!(file, "{}", serde_json::to_string(r)?)?;
        }

        let mut workers = config.parallelism.clamp(1, jobs.len());
        if config.agent == "http" {
            workers = workers.min(config.adapter.parallelism.max(1));
        }
        let next = AtomicUsize::new(0);
        let failed = AtomicBool::new(false);
        let (tx, rx) = mpsc::channel::<(usize, Result<ResultRecord>)>();

        std::thread::scope(|scope| -> Result<()> {
            for _ in 0..workers {
                let tx = tx.clone();
                let config = &config;
                let jobs = &jobs;
                let next = &next;
                let failed = &failed;
                scope.spawn(move || {
                    let mut agent = match make_agent(config) {
                        Ok(a) => a,
                        Err(e) => {
                            failed.store(true, Ordering::Relaxed);
                            let _ = tx.send((usize::MAX, Err(e)));
                            return;
                        }
                    };
                    loop {
                        if failed.load(Ordering::Relaxed) {
                            break;
                        }
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some(entry) = jobs.get(i) else { break };
                        let result = evaluate_entry(entry, dataset_dir, &mut agent);
                        if result.is_err() {
                            failed.store(true, Ordering::Relaxed);
                        }
                        if tx.send((i, result)).is_err() {
                            break;
                        }
                    }
                });
            }
            drop(tx);

            let mut pending: BTreeMap<usize, ResultRecord> = BTreeMap::new();
            let mut next_write = 0usize;
            let mut first_error: Option<anyhow::Error> = None;
            for (i, result) in rx {
                match result {
                    Err(e) => {
                        if first_error.is_none() {
                            first_error = Some(e);
                        }
                    }
                    Ok(r) => {
                        pending.insert(i, r);
                        while let Some(r) = pending.remove(&next_write) {
                            writeln!(file, "{}", serde_json::to_string(&r)?)?;
                            records.push(r);
                            next_write += 1;
                            if next_write % 1000 == 0 {
                                log::info!("{label}: {next_write}/{} written", jobs.len());
                            }
                        }
                    }
                }
            }
            file.flush()?;
            match first_error {
                Some(e) => Err(e),
                None => Ok(()),
            }
        })?;
    }

    let metrics = compute_metrics(&records);
    let metrics_file = MetricsFile {
        agent: label.clone(),
        config_sha256: manifest.config_sha256.clone(),
        metrics: metrics.clone(),
    };
    metrics_file.write_to(&dataset_dir.join(format!("metrics-{label}-offline.json")))?;

    println!("run: agent {label} over {} samples", records.len());
    for m in &metrics {
        println!(
            "  {:<12} {:<11} n={:<5} score={:.4}  invalid_format={}  transport_errors={}",
            m.kind.to_string(),
            m.task.to_string(),
            m.n_samples,
            m.score,
            m.breakdown["invalid_format"],
            m.breakdown["transport_errors"],
        );
    }
    Ok(metrics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;
    use crate::dataset::cmd_gen;

    fn dataset(dir: &Path, games: &[&str], samples: u32) -> Manifest {
        let mut config = RunConfig::default();
        config
            .apply(&Overrides {
                games: games.iter().map(|s| s.to_string()).collect(),
                samples: Some(samples),
                out: Some(dir.to_path_buf()),
                ..Overrides::default()
            })
            .unwrap();
        cmd_gen(&config).unwrap()
    }

    fn opts(agent: &str) -> EvalOptions {
        EvalOptions { agent: Some(agent.into()), ..EvalOptions::default() }
    }

    #[test]
    fn oracle_scores_every_task_perfectly() {
        let dir = tempfile::tempdir().unwrap();
        dataset(dir.path(), &["ttt", "sudoku"], 2);
        let metrics = cmd_run(dir.path(), &opts("oracle")).unwrap();
        assert_eq!(metrics.len(), 6);
        for m in &metrics {
            assert_eq!(m.score, 1.0, "{} {}", m.kind, m.task);
            assert_eq!(m.n_samples, 2);
            assert_eq!(m.breakdown["transport_errors"], 0.0);
        }
        assert!(dir.path().join("metrics-oracle-offline.json").exists());
    }

    #[test]
    fn random_runs_are_byte_identical() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        dataset(a.path(), &["reversi"], 3);
        dataset(b.path(), &["reversi"], 3);
        cmd_run(a.path(), &opts("random")).unwrap();
        cmd_run(b.path(), &opts("random")).unwrap();
        let left = std::fs::read(results_path(a.path(), "random")).unwrap();
        let right = std::fs::read(results_path(b.path(), "random")).unwrap();
        assert!(!left.is_empty());
        assert_eq!(left, right);
        let left = std::fs::read(a.path().join("metrics-random-offline.json")).unwrap();
        let right = std::fs::read(b.path().join("metrics-random-offline.json")).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn resume_completes_an_interrupted_run_without_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        dataset(dir.path(), &["ttt"], 3);
        cmd_run(dir.path(), &opts("random")).unwrap();
        let path = results_path(dir.path(), "random");
        let full = std::fs::read_to_string(&path).unwrap();
        assert_eq!(full.lines().count(), 9);

        // Chop to two complete records plus a torn partial write.
        let keep: String = full.lines().take(2).map(|l| format!("{l}\n")).collect();
        std::fs::write(&path, format!("{keep}{{\"id\":\"torn")).unwrap();

        let mut resumed = opts("random");
        resumed.resume = true;
        cmd_run(dir.path(), &resumed).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), full);
    }

    #[test]
    fn existing_results_require_resume() {
        let dir = tempfile::tempdir().unwrap();
        dataset(dir.path(), &["ttt"], 1);
        cmd_run(dir.path(), &opts("random")).unwrap();
        let err = cmd_run(dir.path(), &opts("random")).unwrap_err();
        assert!(err.to_string().contains("--resume"), "{err}");
    }

    #[test]
    fn tampered_images_abort_the_run() {
        let dir = tempfile::tempdir().unwrap();
        let manifest = dataset(dir.path(), &["ttt"], 1);
        let victim = &manifest.samples[0];
        std::fs::write(dir.path().join(&victim.image), b"not a png").unwrap();
        let err = cmd_run(dir.path(), &opts("oracle")).unwrap_err();
        assert!(err.to_string().contains("image_sha256"), "{err}");
    }

    #[test]
    fn unknown_agents_are_rejected_before_any_io() {
        let dir = tempfile::tempdir().unwrap();
        dataset(dir.path(), &["ttt"], 1);
        let err = cmd_run(dir.path(), &opts("psychic")).unwrap_err();
        assert!(err.to_string().contains("unknown agent"), "{err}");
        assert!(!results_path(dir.path(), "psychic").exists());
    }
}
