//! Full-game playing sessions.
//!
//! The evaluated model always sits as [`Side::First`] — O in Tic-Tac-Toe,
//! black in Reversi and Gomoku, white in Chess, the only seat in Sudoku and
//! Minesweeper — and the scripted search opponent answers for the other
//! seat. Turns are stateless on the model side: every turn sends the fixed
//! per-game prompt plus a fresh screenshot of the current board, nothing
//! else, so the model must re-read the position each time.
//!
//! Invalid output (unparseable or illegal) costs a strike and a re-prompt
//! with a notice prepended; the third strike forfeits the game as a loss.
//! Transport failures abort the session instead — an aborted log carries no
//! score and is excluded from aggregation, since it measures the pipeline
//! rather than the model.

use crate::board::{GameKind, Seed};
use crate::client::{ModelAdapter, ModelRequest, OracleContext};
use crate::engines::{GameState, MoveSpec, Outcome, Side};
use crate::opponents::{opponent_move, SearchConfig, UciEngine};
use crate::parse_eval::{extract_section, parse_move, score_e2e};
use crate::render::{render_state, sha256_hex, Theme};
use crate::tasks::{prompts, TaskKind};
use serde::{Deserialize, Serialize};

pub use crate::parse_eval::E2EStats;

pub const MAX_INVALID_MOVES: u32 = 3;

/// One model turn: what was sent, what came back, and what it did to the
/// game. Strikes are turns too, so a transcript replays the whole exchange.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TurnRecord {
    pub image_sha256: String,
    pub prompt: String,
    pub raw: String,
    pub observation: Option<String>,
    pub strategy: Option<String>,
    /// The extracted move, when one parsed.
    pub movement: Option<String>,
    pub valid: bool,
    /// True when no move could be extracted at all (as opposed to a
    /// well-formed but illegal move).
    pub parse_error: bool,
    /// The opponent's answer(s) after a valid move — more than one when the
    /// model's side had to pass.
    pub opponent_replies: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct E2ESessionLog {
    pub kind: GameKind,
    pub seed: Seed,
    pub agent: String,
    pub transcript: Vec<TurnRecord>,
    /// Every applied move, both seats, in order: replaying these from
    /// `GameState::initial(kind, seed)` reproduces the final position.
    pub moves: Vec<MoveSpec>,
    pub invalid_count: u32,
    /// Effective result: the board outcome, or `Loss(First)` after a
    /// forfeit or a dead-ended (stuck) single-player game.
    pub outcome: Outcome,
    pub forfeited: bool,
    pub aborted: bool,
    pub transport_error: Option<String>,
    pub stats: E2EStats,
    /// Playing score; 0 and meaningless when `aborted`.
    pub score: f64,
}

fn final_stats(state: &GameState, model_moves: u32) -> E2EStats {
    let mut stats = E2EStats { moves: model_moves, ..E2EStats::default() };
    match state {
        GameState::Sudoku(s) => {
            let (filled, correct) = s.filled_counts();
            stats.filled = filled as u32;
            stats.correct = correct as u32;
        }
        GameState::Reversi(s) => {
            stats.black_discs = s.counts().0 as u32;
        }
        GameState::Minesweeper(s) => {
            stats.revealed_safe = s.revealed_safe_count() as u32;
        }
        GameState::Chess(s) => {
            stats.captured_value = s.captured_points().0;
        }
        GameState::TicTacToe(_) | GameState::Gomoku(_) => {}
    }
    stats
}

pub fn run_e2e_session(
    kind: GameKind,
    seed: Seed,
    adapter: &mut dyn ModelAdapter,
    cfg: &SearchConfig,
    theme: &Theme,
    mut engine: Option<&mut UciEngine>,
) -> E2ESessionLog {
    let mut state = GameState::initial(kind, seed);
    let base_prompt = prompts::e2e(kind);
    let mut transcript: Vec<TurnRecord> = Vec::new();
    let mut moves: Vec<MoveSpec> = Vec::new();
    let mut invalid_count = 0u32;
    let mut model_moves = 0u32;
    let mut forfeited = false;
    let mut transport_error = None;
    let mut pending_notice = false;

    loop {
        if state.outcome().is_terminal() || state.legal_moves().is_empty() {
            break;
        }
        debug_assert_eq!(state.side_to_move(), Side::First);

        let png = render_state(&state, theme);
        let prompt = if pending_notice {
            format!("{}\n\n{}", prompts::INVALID_MOVE_NOTICE, base_prompt)
        } else {
            base_prompt.to_string()
        };
        let id = format!("{}-e2e-{:016x}-t{}", kind.name(), seed.0, transcript.len());
        let request = ModelRequest {
            prompt: &prompt,
            image_png: &png,
            kind,
            task: TaskKind::EndToEnd,
            id: &id,
            n_options: None,
            oracle: Some(OracleContext::State(&state)),
        };
        let raw = match adapter.send(&request) {
            Ok(text) => text,
            Err(e) => {
                transport_error = Some(e.to_string());
                break;
            }
        };

        let parsed = parse_move(&raw, kind);
        let mut record = TurnRecord {
            image_sha256: sha256_hex(&png),
            prompt,
            raw: raw.clone(),
            observation: extract_section(&raw, "Observation"),
            strategy: extract_section(&raw, "Strategy"),
            movement: parsed.move_spec().map(|m| m.to_string()),
            valid: false,
            parse_error: parsed.move_spec().is_none(),
            opponent_replies: Vec::new(),
        };

        let applied = parsed.move_spec().and_then(|mv| state.apply_move(mv).ok().map(|s| (mv.clone(), s)));
        match applied {
            None => {
                invalid_count += 1;
                pending_notice = true;
                transcript.push(record);
                if invalid_count >= MAX_INVALID_MOVES {
                    forfeited = true;
                    break;
                }
            }
            Some((mv, next)) => {
                record.valid = true;
                pending_notice = false;
                model_moves += 1;
                moves.push(mv);
                state = next;
                // The scripted opponent answers for Side::Second, repeating
                // if the model's side has to pass.
                while !state.outcome().is_terminal() && state.side_to_move() == Side::Second {
                    let reply = opponent_move(&state, cfg, engine.as_deref_mut())
                        .expect("competitive games always have an opponent move");
                    record.opponent_replies.push(reply.to_string());
                    moves.push(reply.clone());
                    state = state.apply_move(&reply).expect("opponent moves are legal");
                }
                transcript.push(record);
            }
        }
    }

    let aborted = transport_error.is_some();
    let board_outcome = state.outcome();
    let outcome = if forfeited || (!aborted && !board_outcome.is_terminal()) {
        // Forfeit, or a stuck single-player game with no moves left.
        Outcome::Loss(Side::First)
    } else {
        board_outcome
    };
    let stats = final_stats(&state, model_moves);
    let score = if aborted { 0.0 } else { score_e2e(kind, &stats, outcome) };
    E2ESessionLog {
        kind,
        seed,
        agent: adapter.name().to_string(),
        transcript,
        moves,
        invalid_count,
        outcome,
        forfeited,
        aborted,
        transport_error,
        stats,
        score,
    }
}
