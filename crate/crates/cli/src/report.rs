//! Rating tables and cross-run reports.
//!
//! `rate` is pure arithmetic: it prints the formula-path complexity scores,
//! the shipped reference table, every divergence between the two, and the
//! difficulty chains. `report` merges metrics files from any number of
//! `run`/`play` outputs — later inputs win on a (task, game) collision —
//! and computes one star-weighted overall score per task whenever scores
//! for all six games are present.

use anyhow::{bail, Context, Result};
use boardbench::parse_eval::{aggregate_overall, TaskMetrics};
use boardbench::ratings::{
    difficulty_chain, divergence_report, formula_phi_table, normalize_scores, reference_table,
    AbilityScore, AbilityScoreTable, REFERENCE_CHAIN,
};
use boardbench::tasks::TaskKind;
use boardbench::GameKind;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

/// On-disk shape of `metrics-<agent>-{offline,e2e}.json`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsFile {
    pub agent: String,
    pub config_sha256: String,
    pub metrics: Vec<TaskMetrics>,
}

impl MetricsFile {
    pub fn load(path: &Path) -> Result<MetricsFile> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
    }

    pub fn write_to(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("metrics serialize");
        std::fs::write(path, json).with_context(|| format!("writing {}", path.display()))
    }
}

fn fmt_cell(score: Option<AbilityScore>, raw: bool) -> String {
    match score {
        None => "-".to_string(),
        Some(s) if raw => format!("{:>9.4}", s.raw),
        Some(s) => format!("{:.2} ({:>3.1}*)", s.normalized, s.stars),
    }
}

fn render_score_table(title: &str, table: &AbilityScoreTable, raw: bool) -> String {
    let mut out = format!(
        "== {title} ==\n{:<13}{:>12}{:>12}{:>12}{:>12}\n",
        "game", "perception", "reasoning", "decision", "adversary"
    );
    for (kind, g) in &table.games {
        let cells = [Some(g.perception), Some(g.reasoning), Some(g.decision), g.adversary]
            .map(|s| fmt_cell(s, raw));
        out.push_str(&format!(
            "{:<13}{:>12}{:>12}{:>12}{:>12}\n",
            kind.to_string(),
            cells[0],
            cells[1],
            cells[2],
            cells[3]
        ));
    }
    out
}

fn render_chain(games: &[GameKind]) -> String {
    games.iter().map(|g| g.name()).collect::<Vec<_>>().join(" < ")
}

/// The full `rate` output as one string.
pub fn rate_text() -> String {
    let formula =
        normalize_scores(&formula_phi_table()).expect("formula columns are non-degenerate");
    let reference = reference_table();

    let mut out = String::new();
    out.push_str(&render_score_table("Raw complexity scores (formula)", &formula, true));
    out.push('\n');
    out.push_str(&render_score_table("Normalized scores and stars (formula)", &formula, false));
    out.push('\n');
    out.push_str(&render_score_table("Raw complexity scores (reference)", &reference, true));
    out.push('\n');
    out.push_str(&render_score_table(
        "Normalized scores and stars (reference)",
        &reference,
        false,
    ));
    out.push('\n');

    out.push_str("== Divergences (formula vs reference) ==\n");
    let divergences = divergence_report(&formula, &reference);
    if divergences.is_empty() {
        out.push_str("none\n");
    } else {
        out.push_str(&divergences);
    }
    out.push('\n');

    out.push_str("== Difficulty chains, easiest first ==\n");
    out.push_str(&format!("formula totals:     {}\n", render_chain(&difficulty_chain(&formula))));
    out.push_str(&format!(
        "reference totals:   {}\n",
        render_chain(&difficulty_chain(&reference))
    ));
    out.push_str(&format!("reference, stated:  {}\n", render_chain(&REFERENCE_CHAIN)));
    out
}

pub fn cmd_rate() -> Result<()> {
    print!("{}", rate_text());
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InputInfo {
    pub path: String,
    pub agent: String,
    pub config_sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskReport {
    pub task: TaskKind,
    pub per_game: BTreeMap<GameKind, f64>,
    pub n_samples: BTreeMap<GameKind, usize>,
    /// Star-weighted mean over all six games; absent until every game has
    /// a score for this task.
    pub overall: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub inputs: Vec<InputInfo>,
    pub tasks: Vec<TaskReport>,
}

/// A metrics file path, or a directory containing `metrics-*.json` files
/// from `run` and `play`.
fn resolve_inputs(paths: &[PathBuf]) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for path in paths {
        if path.is_dir() {
            let mut found: Vec<PathBuf> = std::fs::read_dir(path)?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| {
                    p.file_name()
                        .and_then(|n| n.to_str())
                        .is_some_and(|n| n.starts_with("metrics-") && n.ends_with(".json"))
                })
                .collect();
            found.sort();
            if found.is_empty() {
                bail!("{}: no metrics-*.json files found", path.display());
            }
            files.extend(found);
        } else {
            files.push(path.clone());
        }
    }
    Ok(files)
}

fn render_report(report: &Report) -> String {
    let mut out = String::from("== Inputs ==\n");
    for input in &report.inputs {
        out.push_str(&format!(
            "{}  agent={}  config={}\n",
            input.path,
            input.agent,
            &input.config_sha256[..12.min(input.config_sha256.len())]
        ));
    }
    out.push('\n');
    for task in &report.tasks {
        out.push_str(&format!("== {} ==\n", task.task));
        for (game, score) in &task.per_game {
            out.push_str(&format!(
                "{:<13} n={:<6} score={:.4}\n",
                game.to_string(),
                task.n_samples.get(game).copied().unwrap_or(0),
                score
            ));
        }
        match task.overall {
            Some(v) => out.push_str(&format!("overall: {v:.4}\n")),
            None => out.push_str("overall: n/a (needs scores for all six games)\n"),
        }
        out.push('\n');
    }
    out
}

pub fn cmd_report(inputs: &[PathBuf], out_dir: Option<&Path>) -> Result<Report> {
    if inputs.is_empty() {
        bail!("report needs at least one metrics file or run directory");
    }
    let files = resolve_inputs(inputs)?;
    let mut infos = Vec::new();
    let mut merged: BTreeMap<TaskKind, BTreeMap<GameKind, (f64, usize)>> = BTreeMap::new();
    for file in &files {
        let metrics = MetricsFile::load(file)?;
        for m in &metrics.metrics {
            merged.entry(m.task).or_default().insert(m.kind, (m.score, m.n_samples));
        }
        infos.push(InputInfo {
            path: file.display().to_string(),
            agent: metrics.agent,
            config_sha256: metrics.config_sha256,
        });
    }
    let agents: std::collections::BTreeSet<&str> =
        infos.iter().map(|i| i.agent.as_str()).collect();
    if agents.len() > 1 {
        log::warn!("mixing metrics from different agents: {agents:?}");
    }

    let stars = boardbench::ratings::reference_star_table();
    let tasks = merged
        .into_iter()
        .map(|(task, games)| {
            let per_game: BTreeMap<GameKind, f64> =
                games.iter().map(|(&g, &(score, _))| (g, score)).collect();
            let n_samples: BTreeMap<GameKind, usize> =
                games.iter().map(|(&g, &(_, n))| (g, n)).collect();
            let overall = aggregate_overall(task, &per_game, &stars).ok();
            TaskReport { task, per_game, n_samples, overall }
        })
        .collect();
    let report = Report { inputs: infos, tasks };

    let text = render_report(&report);
    if let Some(dir) = out_dir {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("report.json"), serde_json::to_string_pretty(&report)?)?;
        std::fs::write(dir.join("report.txt"), &text)?;
    }
    print!("{text}");
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rate_text_reports_both_paths_and_their_gaps() {
        let text = rate_text();
        assert!(text.contains("4.9931"), "tictactoe reasoning anchor");
        assert!(text.contains("83.6128"), "minesweeper reasoning anchor");
        assert!(text.contains("123.5254"), "chess adversary anchor");
        assert!(text.contains("minesweeper perception raw"), "raw divergence is surfaced");
        assert!(text.contains("reference, stated:  tictactoe < reversi"), "{text}");
        assert!(text.contains("formula totals:     tictactoe < reversi"), "{text}");
    }

    fn metrics_file(dir: &Path, name: &str, agent: &str, rows: &[(GameKind, TaskKind, f64)]) -> PathBuf {
        let metrics = rows
            .iter()
            .map(|&(kind, task, score)| TaskMetrics {
                kind,
                task,
                n_samples: 10,
                score,
                breakdown: BTreeMap::new(),
            })
            .collect();
        let file = MetricsFile {
            agent: agent.to_string(),
            config_sha256: "f00d".repeat(16),
            metrics,
        };
        let path = dir.join(name);
        file.write_to(&path).unwrap();
        path
    }

    #[test]
    fn overall_appears_once_every_game_has_a_score() {
        let dir = tempfile::tempdir().unwrap();
        let partial = metrics_file(
            dir.path(),
            "metrics-a-offline.json",
            "a",
            &[(GameKind::TicTacToe, TaskKind::Perceiving, 0.9)],
        );
        let report = cmd_report(&[partial.clone()], None).unwrap();
        assert_eq!(report.tasks.len(), 1);
        assert_eq!(report.tasks[0].overall, None);

        let rows: Vec<(GameKind, TaskKind, f64)> =
            GameKind::ALL.into_iter().map(|g| (g, TaskKind::Perceiving, 0.5)).collect();
        let complete = metrics_file(dir.path(), "metrics-b-offline.json", "a", &rows);
        let report = cmd_report(&[complete], Some(dir.path())).unwrap();
        let overall = report.tasks[0].overall.unwrap();
        assert!((overall - 0.5).abs() < 1e-12, "uniform scores aggregate to themselves");
        assert!(dir.path().join("report.json").exists());
        assert!(dir.path().join("report.txt").exists());
    }

    #[test]
    fn directories_are_scanned_and_later_inputs_win() {
        let dir = tempfile::tempdir().unwrap();
        metrics_file(
            dir.path(),
            "metrics-x-offline.json",
            "x",
            &[(GameKind::Chess, TaskKind::QA, 0.25)],
        );
        metrics_file(
            dir.path(),
            "metrics-y-offline.json",
            "x",
            &[(GameKind::Chess, TaskKind::QA, 0.75)],
        );
        let report = cmd_report(&[dir.path().to_path_buf()], None).unwrap();
        assert_eq!(report.inputs.len(), 2);
        assert_eq!(report.tasks[0].per_game[&GameKind::Chess], 0.75);

        let empty = tempfile::tempdir().unwrap();
        assert!(cmd_report(&[empty.path().to_path_buf()], None).is_err());
    }
}
