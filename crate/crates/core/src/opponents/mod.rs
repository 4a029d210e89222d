//! Scripted opponents for game sessions: exact minimax for Tic-Tac-Toe,
//! alpha-beta searches for Reversi and Gomoku, and either an external UCI
//! engine or an internal search for Chess. All of them are deterministic:
//! ties are broken by the first candidate in move order.

use crate::engines::GameState;
use crate::MoveSpec;
use serde::{Deserialize, Serialize};

mod chess_search;
mod gomoku_search;
mod reversi_search;
mod ttt_search;
pub mod uci;

pub use chess_search::chess_search_move;
pub use gomoku_search::gomoku_search_move;
pub use reversi_search::reversi_alphabeta_move;
pub use ttt_search::ttt_minimax_move;
pub use uci::UciEngine;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct ReversiWeights {
    pub disc: i32,
    pub corner: i32,
    pub corner_adjacent: i32,
    pub edge: i32,
    pub mobility: i32,
}

impl Default for ReversiWeights {
    fn default() -> ReversiWeights {
        ReversiWeights { disc: 1, corner: 25, corner_adjacent: -8, edge: 5, mobility: 2 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct GomokuWeights {
    pub five: i64,
    pub open_four: i64,
    pub closed_four: i64,
    pub open_three: i64,
    pub closed_three: i64,
    pub open_two: i64,
}

impl Default for GomokuWeights {
    fn default() -> GomokuWeights {
        GomokuWeights {
            five: 1_000_000,
            open_four: 10_000,
            closed_four: 1_000,
            open_three: 1_000,
            closed_three: 100,
            open_two: 10,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SearchConfig {
    pub reversi_depth: u32,
    pub gomoku_depth: u32,
    pub chess_depth: u32,
    /// Thinking time handed to an external UCI engine per move.
    pub chess_movetime_ms: u64,
    pub reversi_weights: ReversiWeights,
    pub gomoku_weights: GomokuWeights,
}

impl Default for SearchConfig {
    fn default() -> SearchConfig {
        SearchConfig {
            reversi_depth: 4,
            gomoku_depth: 2,
            chess_depth: 3,
            chess_movetime_ms: 100,
            reversi_weights: ReversiWeights::default(),
            gomoku_weights: GomokuWeights::default(),
        }
    }
}

/// The scripted opponent's reply for the side to move, or `None` for
/// single-player games. `engine` supplies chess moves when available;
/// otherwise the internal search answers.
pub fn opponent_move(
    state: &GameState,
    cfg: &SearchConfig,
    engine: Option<&mut UciEngine>,
) -> Option<MoveSpec> {
    match state {
        GameState::TicTacToe(s) => Some(ttt_minimax_move(s)),
        GameState::Reversi(s) => Some(reversi_alphabeta_move(s, cfg)),
        GameState::Gomoku(s) => Some(gomoku_search_move(s, cfg)),
        GameState::Chess(s) => Some(chess_search_move(s, cfg, engine)),
        GameState::Sudoku(_) | GameState::Minesweeper(_) => None,
    }
}
