//! Full-game playing runs: one scripted-opponent session per (game, index),
//! a pretty JSON transcript per session, a JSON-lines summary per agent,
//! and per-game metrics over the normalized playing scores.
//!
//! Chess sessions use an external UCI engine when the environment variable
//! named by [`UCI_ENGINE_ENV`] points at one; otherwise the internal search
//! answers. Engine moves come from a separate process and are not
//! guaranteed reproducible — byte-identical reruns hold for the built-in
//! opponent path.

use crate::config::RunConfig;
use crate::report::MetricsFile;
use anyhow::{bail, Context, Result};
use boardbench::client::{builtin_agent, HttpAdapter, ModelAdapter};
use boardbench::opponents::UciEngine;
use boardbench::parse_eval::{e2e_max_score, TaskMetrics};
use boardbench::tasks::{run_e2e_session, E2ESessionLog, TaskKind};
use boardbench::{GameKind, Outcome, Seed, Side};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashSet};
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;

/// Environment variable holding the path of a UCI chess engine binary.
pub const UCI_ENGINE_ENV: &str = "BOARDBENCH_UCI_ENGINE";

/// One line per session in `sessions-<agent>.jsonl`; the full transcript
/// lives in the per-session JSON file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionSummary {
    pub id: String,
    pub game: GameKind,
    pub seed: Seed,
    pub agent: String,
    pub outcome: Outcome,
    pub score: f64,
    /// Score divided by the game's maximum playing score.
    pub normalized: f64,
    /// The model's own move count.
    pub moves: u32,
    pub invalid_count: u32,
    pub forfeited: bool,
    pub aborted: bool,
}

fn make_adapter(config: &RunConfig) -> Result<Box<dyn ModelAdapter + Send>> {
    if let Some(builtin) = builtin_agent(&config.agent, Seed(config.seed)) {
        return Ok(builtin);
    }
    if config.agent == "http" {
        if let Some(var) = &config.adapter.api_key_env {
            if std::env::var(var).is_err() {
                bail!("api key environment variable {var} is not set");
            }
        }
        return Ok(Box::new(HttpAdapter::new(config.adapter.clone())?));
    }
    bail!("unknown agent {:?}; expected random, oracle, or http", config.agent);
}

/// Lazily launched per worker; `None` after a failed launch so the warning
/// fires once and the internal search takes over.
struct WorkerEngine {
    tried: bool,
    engine: Option<UciEngine>,
}

impl WorkerEngine {
    fn new() -> WorkerEngine {
        WorkerEngine { tried: false, engine: None }
    }

    fn get(&mut self) -> Option<&mut UciEngine> {
        if !self.tried {
            self.tried = true;
            if let Ok(path) = std::env::var(UCI_ENGINE_ENV) {
                match UciEngine::launch(&path) {
                    Ok(engine) => self.engine = Some(engine),
                    Err(e) => {
                        log::warn!("{UCI_ENGINE_ENV}={path}: {e}; using the internal search")
                    }
                }
            }
        }
        self.engine.as_mut()
    }
}

fn session_id(game: GameKind, seed: Seed) -> String {
    format!("{}-e2e-{:016x}", game.name(), seed.0)
}

fn summarize(id: &str, log: &E2ESessionLog) -> SessionSummary {
    SessionSummary {
        id: id.to_string(),
        game: log.kind,
        seed: log.seed,
        agent: log.agent.clone(),
        outcome: log.outcome,
        score: log.score,
        normalized: log.score / e2e_max_score(log.kind),
        moves: log.stats.moves,
        invalid_count: log.invalid_count,
        forfeited: log.forfeited,
        aborted: log.aborted,
    }
}

fn read_existing(path: &Path) -> Result<Vec<SessionSummary>> {
    let text = std::fs::read_to_string(path)?;
    let lines: Vec<&str> = text.lines().collect();
    let mut summaries = Vec::with_capacity(lines.len());
    for (i, line) in lines.iter().enumerate() {
        match serde_json::from_str::<SessionSummary>(line) {
            Ok(s) => summaries.push(s),
            Err(_) if i + 1 == lines.len() => {
                log::warn!("{}: dropping truncated final line", path.display());
            }
            Err(e) => bail!("{} line {}: {e}", path.display(), i + 1),
        }
    }
    Ok(summaries)
}

fn compute_metrics(summaries: &[SessionSummary]) -> Vec<TaskMetrics> {
    let mut groups: BTreeMap<GameKind, Vec<&SessionSummary>> = BTreeMap::new();
    for s in summaries {
        groups.entry(s.game).or_default().push(s);
    }
    let mut out = Vec::new();
    for (kind, ss) in groups {
        let mut normalized_sum = 0.0;
        let mut raw_sum = 0.0;
        let mut finished = 0usize;
        let (mut wins, mut ties, mut losses, mut forfeits, mut aborted) = (0u32, 0, 0, 0, 0u32);
        for s in &ss {
            if s.forfeited {
                forfeits += 1;
            }
            if s.aborted {
                aborted += 1;
                continue;
            }
            finished += 1;
            normalized_sum += s.normalized;
            raw_sum += s.score;
            match s.outcome {
                Outcome::Win(Side::First) | Outcome::Loss(Side::Second) => wins += 1,
                Outcome::Tie => ties += 1,
                Outcome::Win(Side::Second) | Outcome::Loss(Side::First) => losses += 1,
                Outcome::Ongoing => {}
            }
        }
        let mean = |sum: f64| if finished == 0 { 0.0 } else { sum / finished as f64 };
        let mut breakdown = BTreeMap::new();
        breakdown.insert("raw_mean".to_string(), mean(raw_sum));
        breakdown.insert("wins".to_string(), f64::from(wins));
        breakdown.insert("ties".to_string(), f64::from(ties));
        breakdown.insert("losses".to_string(), f64::from(losses));
        breakdown.insert("forfeits".to_string(), f64::from(forfeits));
        breakdown.insert("aborted".to_string(), f64::from(aborted));
        out.push(TaskMetrics {
            kind,
            task: TaskKind::EndToEnd,
            n_samples: ss.len(),
            score: mean(normalized_sum),
            breakdown,
        });
    }
    out
}

pub fn summary_path(dir: &Path, agent_label: &str) -> PathBuf {
    dir.join(format!("sessions-{agent_label}.jsonl"))
}

pub fn cmd_play(config: &RunConfig, resume: bool) -> Result<Vec<TaskMetrics>> {
    make_adapter(config)?; // validate the agent choice up front
    let label = config.agent_label();
    let sessions_dir = config.out_dir.join("sessions").join(&label);
    std::fs::create_dir_all(&sessions_dir)?;

    let path = summary_path(&config.out_dir, &label);
    let mut summaries: Vec<SessionSummary> = Vec::new();
    if path.exists() {
        if !resume {
            bail!(
                "{} already exists; pass --resume to continue or remove it first",
                path.display()
            );
        }
        summaries = read_existing(&path)?;
    }
    let done: HashSet<String> = summaries.iter().map(|s| s.id.clone()).collect();

    let mut jobs: Vec<(GameKind, Seed, String)> = Vec::new();
    for &game in &config.games {
        for i in 0..config.e2e_games {
            let seed = Seed(config.seed).child("e2e", 0).child(game.name(), i as u64);
            let id = session_id(game, seed);
            if !done.contains(&id) {
                jobs.push((game, seed, id));
            }
        }
    }
    log::info!("{label}: {} sessions to play, {} already done", jobs.len(), done.len());

    if !jobs.is_empty() {
        let mut file = std::io::BufWriter::new(
            std::fs::File::create(&path).with_context(|| format!("opening {}", path.display()))?,
        );
        for s in &summaries {
            writeln!(file, "{}", serde_json::to_string(s)?)?;
        }

        let workers = config.parallelism.clamp(1, jobs.len());
        let next = AtomicUsize::new(0);
        let failed = AtomicBool::new(false);
        let (tx, rx) = mpsc::channel::<(usize, Result<SessionSummary>)>();

        std::thread::scope(|scope| -> Result<()> {
            for _ in 0..workers {
                let tx = tx.clone();
                let config = &*config;
                let jobs = &jobs;
                let next = &next;
                let failed = &failed;
                let sessions_dir = &sessions_dir;
                scope.spawn(move || {
                    let mut engine = WorkerEngine::new();
                    loop {
                        if failed.load(Ordering::Relaxed) {
                            break;
                        }
                        let i = next.fetch_add(1, Ordering::Relaxed);
                        let Some((game, seed, id)) = jobs.get(i) else { break };
                        let result = (|| -> Result<SessionSummary> {
                            let mut adapter = make_adapter(config)?;
                            let uci = match game {
                                GameKind::Chess => engine.get(),
                                _ => None,
                            };
                            let log = run_e2e_session(
                                *game,
                                *seed,
                                adapter.as_mut(),
                                &config.search,
                                &config.theme,
                                uci,
                            );
                            let json = serde_json::to_string_pretty(&log)?;
                            std::fs::write(sessions_dir.join(format!("{id}.json")), json)
                                .with_context(|| format!("writing session {id}"))?;
                            Ok(summarize(id, &log))
                        })();
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

            let mut pending: BTreeMap<usize, SessionSummary> = BTreeMap::new();
            let mut next_write = 0usize;
            let mut first_error: Option<anyhow::Error> = None;
            for (i, result) in rx {
                match result {
                    Err(e) => {
                        if first_error.is_none() {
                            first_error = Some(e);
                        }
                    }
                    Ok(s) => {
                        pending.insert(i, s);
                        while let Some(s) = pending.remove(&next_write) {
                            writeln!(file, "{}", serde_json::to_string(&s)?)?;
                            summaries.push(s);
                            next_write += 1;
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

    let metrics = compute_metrics(&summaries);
    let metrics_file = MetricsFile {
        agent: label.clone(),
        config_sha256: config.sha256(),
        metrics: metrics.clone(),
    };
    metrics_file.write_to(&config.out_dir.join(format!("metrics-{label}-e2e.json")))?;

    println!("play: agent {label} over {} sessions", summaries.len());
    for m in &metrics {
        println!(
            "  {:<12} n={:<4} normalized={:.4}  raw={:.1}  w/t/l={}/{}/{}  forfeits={}  aborted={}",
            m.kind.to_string(),
            m.n_samples,
            m.score,
            m.breakdown["raw_mean"],
            m.breakdown["wins"],
            m.breakdown["ties"],
            m.breakdown["losses"],
            m.breakdown["forfeits"],
            m.breakdown["aborted"],
        );
    }
    Ok(metrics)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::Overrides;

    fn play_config(dir: &Path, agent: &str, games: u32) -> RunConfig {
        let mut config = RunConfig::default();
        config
            .apply(&Overrides {
                games: vec!["ttt".into()],
                agent: Some(agent.into()),
                samples: Some(games),
                out: Some(dir.to_path_buf()),
                ..Overrides::default()
            })
            .unwrap();
        config
    }

    #[test]
    fn oracle_ttt_sessions_finish_and_score() {
        let dir = tempfile::tempdir().unwrap();
        let config = play_config(dir.path(), "oracle", 2);
        let metrics = cmd_play(&config, false).unwrap();
        assert_eq!(metrics.len(), 1);
        let m = &metrics[0];
        assert_eq!(m.n_samples, 2);
        assert_eq!(m.breakdown["aborted"], 0.0);
        assert_eq!(m.breakdown["forfeits"], 0.0);
        assert!(m.score > 0.0);

        for s in read_existing(&summary_path(dir.path(), "oracle")).unwrap() {
            assert!(s.outcome.is_terminal());
            assert_eq!(s.invalid_count, 0);
            let session_file = dir.path().join("sessions/oracle").join(format!("{}.json", s.id));
            let log: E2ESessionLog =
                serde_json::from_str(&std::fs::read_to_string(session_file).unwrap()).unwrap();
            assert_eq!(log.score, s.score);
        }
    }

    #[test]
    fn play_runs_are_byte_identical() {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        cmd_play(&play_config(a.path(), "random", 3), false).unwrap();
        cmd_play(&play_config(b.path(), "random", 3), false).unwrap();
        for name in ["sessions-random.jsonl", "metrics-random-e2e.json"] {
            let left = std::fs::read(a.path().join(name)).unwrap();
            let right = std::fs::read(b.path().join(name)).unwrap();
            assert_eq!(left, right, "{name}");
        }
        for s in read_existing(&summary_path(a.path(), "random")).unwrap() {
            let rel = format!("sessions/random/{}.json", s.id);
            let left = std::fs::read(a.path().join(&rel)).unwrap();
            let right = std::fs::read(b.path().join(&rel)).unwrap();
            assert_eq!(left, right, "{rel}");
        }
    }

    #[test]
    fn resume_finishes_the_remaining_sessions() {
        let dir = tempfile::tempdir().unwrap();
        let config = play_config(dir.path(), "random", 3);
        cmd_play(&config, false).unwrap();
        let path = summary_path(dir.path(), "random");
        let full = std::fs::read_to_string(&path).unwrap();
        assert_eq!(full.lines().count(), 3);

        let keep: String = full.lines().take(1).map(|l| format!("{l}\n")).collect();
        std::fs::write(&path, keep).unwrap();
        cmd_play(&config, true).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), full);

        let err = cmd_play(&config, false).unwrap_err();
        assert!(err.to_string().contains("--resume"), "{err}");
    }
}
