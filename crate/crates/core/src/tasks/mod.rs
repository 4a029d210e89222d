//! Builders for the four evaluation tasks.
//!
//! A [`Sample`] is one fully materialized unit of offline work: the rendered
//! screenshot, the prompt text, and whatever ground truth is needed to score
//! a response later. Builders are pure functions of (profile, theme, seed),
//! so a dataset can be regenerated byte-for-byte from its manifest.
//!
//! Prompt texts live as plain-text assets under `assets/prompts` and are
//! embedded at compile time. They are fixed strings on purpose: every model
//! sees the identical prompt for a given game and task, and the only
//! substitution anywhere is the `{question}` slot in the Q&A templates.

pub mod e2e;
pub mod qa;

use crate::board::{BoardMatrix, GameKind, Seed};
use crate::engines::GameState;
use crate::render::{render_matrix, render_state, Theme};
use crate::stategen::{random_legal_state, random_perception_board, GenError, GenProfile};
use qa::QAItem;
use serde::{Deserialize, Serialize};
use std::fmt;

pub use e2e::{run_e2e_session, E2ESessionLog, E2EStats, TurnRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TaskKind {
    #[serde(rename = "perceiving")]
    Perceiving,
    #[serde(rename = "qa")]
    QA,
    #[serde(rename = "rule")]
    RuleFollowing,
    #[serde(rename = "e2e")]
    EndToEnd,
}

impl TaskKind {
    pub const ALL: [TaskKind; 4] =
        [TaskKind::Perceiving, TaskKind::QA, TaskKind::RuleFollowing, TaskKind::EndToEnd];
    /// The three sample-based tasks; E2E is an online loop, not a dataset.
    pub const OFFLINE: [TaskKind; 3] =
        [TaskKind::Perceiving, TaskKind::QA, TaskKind::RuleFollowing];

    pub fn name(self) -> &'static str {
        match self {
            TaskKind::Perceiving => "perceiving",
            TaskKind::QA => "qa",
            TaskKind::RuleFollowing => "rule",
            TaskKind::EndToEnd => "e2e",
        }
    }

    pub fn from_name(s: &str) -> Option<TaskKind> {
        match s.trim().to_ascii_lowercase().as_str() {
            "perceiving" | "perceive" | "p" => Some(TaskKind::Perceiving),
            "qa" | "q&a" | "questionanswering" => Some(TaskKind::QA),
            "rule" | "rulefollowing" | "rule-following" => Some(TaskKind::RuleFollowing),
            "e2e" | "play" | "playing" => Some(TaskKind::EndToEnd),
            _ => None,
        }
    }
}

impl fmt::Display for TaskKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Task-typed scoring payload carried by a sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum GroundTruth {
    /// Perceiving: the exact matrix the screenshot was rendered from.
    Matrix(BoardMatrix),
    /// Q&A: the item plus the board it was asked about, so the stored answer
    /// can be re-audited against the pixels' source of truth.
    Answer { item: QAItem, board: BoardMatrix },
    /// Rule-following: the live state; validity is decided by the engine at
    /// evaluation time rather than by a stored answer list.
    State(GameState),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sample {
    pub id: String,
    pub kind: GameKind,
    pub task: TaskKind,
    pub image_png: Vec<u8>,
    pub prompt: String,
    pub ground_truth: GroundTruth,
    pub seed: Seed,
    /// Generator profile snapshot, enough to regenerate the sample.
    pub profile: GenProfile,
}

pub mod prompts {
    //! Compile-time embedded prompt texts, one per (game, task).

    use crate::board::GameKind;

    pub fn perceiving(kind: GameKind) -> &'static str {
        match kind {
            GameKind::TicTacToe => include_str!("../../assets/prompts/perceiving_tictactoe.txt"),
            GameKind::Reversi => include_str!("../../assets/prompts/perceiving_reversi.txt"),
            GameKind::Sudoku => include_str!("../../assets/prompts/perceiving_sudoku.txt"),
            GameKind::Minesweeper => {
                include_str!("../../assets/prompts/perceiving_minesweeper.txt")
            }
            GameKind::Gomoku => include_str!("../../assets/prompts/perceiving_gomoku.txt"),
            GameKind::Chess => include_str!("../../assets/prompts/perceiving_chess.txt"),
        }
    }

    /// Q&A template with a `{question}` slot.
    pub fn qa(kind: GameKind) -> &'static str {
        match kind {
            GameKind::TicTacToe => include_str!("../../assets/prompts/qa_tictactoe.txt"),
            GameKind::Reversi => include_str!("../../assets/prompts/qa_reversi.txt"),
            GameKind::Sudoku => include_str!("../../assets/prompts/qa_sudoku.txt"),
            GameKind::Minesweeper => include_str!("../../assets/prompts/qa_minesweeper.txt"),
            GameKind::Gomoku => include_str!("../../assets/prompts/qa_gomoku.txt"),
            GameKind::Chess => include_str!("../../assets/prompts/qa_chess.txt"),
        }
    }

    pub fn rule(kind: GameKind) -> &'static str {
        match kind {
            GameKind::TicTacToe => include_str!("../../assets/prompts/rule_tictactoe.txt"),
            GameKind::Reversi => include_str!("../../assets/prompts/rule_reversi.txt"),
            GameKind::Sudoku => include_str!("../../assets/prompts/rule_sudoku.txt"),
            GameKind::Minesweeper => include_str!("../../assets/prompts/rule_minesweeper.txt"),
            GameKind::Gomoku => include_str!("../../assets/prompts/rule_gomoku.txt"),
            GameKind::Chess => include_str!("../../assets/prompts/rule_chess.txt"),
        }
    }

    pub fn e2e(kind: GameKind) -> &'static str {
        match kind {
            GameKind::TicTacToe => include_str!("../../assets/prompts/e2e_tictactoe.txt"),
            GameKind::Reversi => include_str!("../../assets/prompts/e2e_reversi.txt"),
            GameKind::Sudoku => include_str!("../../assets/prompts/e2e_sudoku.txt"),
            GameKind::Minesweeper => include_str!("../../assets/prompts/e2e_minesweeper.txt"),
            GameKind::Gomoku => include_str!("../../assets/prompts/e2e_gomoku.txt"),
            GameKind::Chess => include_str!("../../assets/prompts/e2e_chess.txt"),
        }
    }

    /// One-line notice prepended to the prompt after a rejected move.
    pub const INVALID_MOVE_NOTICE: &str =
        include_str!("../../assets/prompts/e2e_invalid_notice.txt");
}

fn sample_id(kind: GameKind, task: TaskKind, seed: Seed) -> String {
    format!("{}-{}-{:016x}", kind.name(), task.name(), seed.0)
}

/// A rule-free board screenshot plus the matrix it encodes.
pub fn make_perceiving_sample(profile: &GenProfile, theme: &Theme, seed: Seed) -> Sample {
    let kind = profile.kind;
    let board = random_perception_board(profile, seed);
    Sample {
        id: sample_id(kind, TaskKind::Perceiving, seed),
        kind,
        task: TaskKind::Perceiving,
        image_png: render_matrix(&board, theme),
        prompt: prompts::perceiving(kind).to_string(),
        ground_truth: GroundTruth::Matrix(board),
        seed,
        profile: profile.clone(),
    }
}

/// A rule-free board plus one multiple-choice question about it.
pub fn make_qa_sample(profile: &GenProfile, theme: &Theme, seed: Seed) -> Sample {
    let kind = profile.kind;
    let board = random_perception_board(profile, seed);
    let mut rng = seed.child("qa-item", 0).rng();
    let item = qa::generate_item(kind, &board, &mut rng);
    let prompt = prompts::qa(kind).replace("{question}", &item.rendered());
    Sample {
        id: sample_id(kind, TaskKind::QA, seed),
        kind,
        task: TaskKind::QA,
        image_png: render_matrix(&board, theme),
        prompt,
        ground_truth: GroundTruth::Answer { item, board },
        seed,
        profile: profile.clone(),
    }
}

/// A rule-consistent live position; the engine itself judges move validity
/// when the response is scored.
pub fn make_rule_sample(
    profile: &GenProfile,
    theme: &Theme,
    seed: Seed,
) -> Result<Sample, GenError> {
    let kind = profile.kind;
    let state = random_legal_state(profile, seed)?;
    Ok(Sample {
        id: sample_id(kind, TaskKind::RuleFollowing, seed),
        kind,
        task: TaskKind::RuleFollowing,
        image_png: render_state(&state, theme),
        prompt: prompts::rule(kind).to_string(),
        ground_truth: GroundTruth::State(state),
        seed,
        profile: profile.clone(),
    })
}
