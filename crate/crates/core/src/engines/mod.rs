//! Game engines: rules, legal-move generation, move application, and
//! terminal detection for all six supported games behind one dispatch type.

use crate::board::{BoardMatrix, CellCoord, GameKind, Seed};
use serde::{Deserialize, Serialize};
use std::fmt;

pub mod chess;
pub mod gomoku;
pub mod minesweeper;
pub mod reversi;
pub mod sudoku;
pub mod ttt;

/// The two seats of a game. `First` always owns the opening move; in
/// single-player games it is the only seat. Which mark or color a seat
/// controls is a per-game fact (e.g. O opens Tic-Tac-Toe, black opens
/// Reversi and Gomoku, white opens Chess).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    First,
    Second,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::First => Side::Second,
            Side::Second => Side::First,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Ongoing,
    Win(Side),
    Tie,
    /// The named side lost without the other winning on the board — a
    /// revealed mine, or a forfeit after repeated invalid moves.
    Loss(Side),
}

impl Outcome {
    pub fn is_terminal(self) -> bool {
        !matches!(self, Outcome::Ongoing)
    }
}

/// One move, in the payload shape the game expects.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MovePayload {
    /// Mark/drop/reveal a cell (Tic-Tac-Toe, Reversi, Gomoku, Minesweeper).
    Cell(CellCoord),
    /// Write `digit` into a cell (Sudoku).
    CellDigit { cell: CellCoord, digit: u8 },
    /// A chess move in standard algebraic notation.
    San(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSpec {
    pub kind: GameKind,
    pub payload: MovePayload,
}

impl MoveSpec {
    pub fn cell(coord: CellCoord) -> MoveSpec {
        MoveSpec { kind: coord.kind, payload: MovePayload::Cell(coord) }
    }

    pub fn cell_digit(cell: CellCoord, digit: u8) -> MoveSpec {
        MoveSpec { kind: cell.kind, payload: MovePayload::CellDigit { cell, digit } }
    }

    pub fn san(text: impl Into<String>) -> MoveSpec {
        MoveSpec { kind: GameKind::Chess, payload: MovePayload::San(text.into()) }
    }
}

impl fmt::Display for MoveSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.payload {
            MovePayload::Cell(c) => f.write_str(&c.label()),
            MovePayload::CellDigit { cell, digit } => write!(f, "{} {}", cell.label(), digit),
            MovePayload::San(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum EngineError {
    #[error("illegal move {mv}: {reason}")]
    IllegalMove { mv: String, reason: String },
    #[error("game is already over")]
    TerminalState,
    #[error("move is for {got}, state is {expected}")]
    KindMismatch { expected: GameKind, got: GameKind },
}

impl EngineError {
    pub fn illegal(mv: &MoveSpec, reason: impl Into<String>) -> EngineError {
        EngineError::IllegalMove { mv: mv.to_string(), reason: reason.into() }
    }
}

/// A live game position for any supported game.
///
/// States are value types: `apply_move` returns the successor and leaves the
/// original untouched, and every state can be serialized and replayed from
/// `(kind, seed, move log)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "game", rename_all = "snake_case")]
pub enum GameState {
    TicTacToe(ttt::TttState),
    Reversi(reversi::ReversiState),
    Sudoku(sudoku::SudokuState),
    Minesweeper(minesweeper::MinesweeperState),
    Gomoku(gomoku::GomokuState),
    Chess(chess::ChessState),
}

impl GameState {
    /// The starting position. For Minesweeper the seed places the mines; for
    /// Sudoku it generates the puzzle; the deterministic games ignore it
    /// beyond recording it for replay.
    pub fn initial(kind: GameKind, seed: Seed) -> GameState {
        match kind {
            GameKind::TicTacToe => GameState::TicTacToe(ttt::TttState::new(seed)),
            GameKind::Reversi => GameState::Reversi(reversi::ReversiState::new(seed)),
            GameKind::Sudoku => {
                GameState::Sudoku(sudoku::SudokuState::generate(seed, sudoku::DEFAULT_CLUES))
            }
            GameKind::Minesweeper => {
                GameState::Minesweeper(minesweeper::MinesweeperState::new(seed))
            }
            GameKind::Gomoku => GameState::Gomoku(gomoku::GomokuState::new(seed)),
            GameKind::Chess => GameState::Chess(chess::ChessState::new(seed)),
        }
    }

    pub fn kind(&self) -> GameKind {
        match self {
            GameState::TicTacToe(_) => GameKind::TicTacToe,
            GameState::Reversi(_) => GameKind::Reversi,
            GameState::Sudoku(_) => GameKind::Sudoku,
            GameState::Minesweeper(_) => GameKind::Minesweeper,
            GameState::Gomoku(_) => GameKind::Gomoku,
            GameState::Chess(_) => GameKind::Chess,
        }
    }

    pub fn seed(&self) -> Seed {
        match self {
            GameState::TicTacToe(s) => s.seed,
            GameState::Reversi(s) => s.seed,
            GameState::Sudoku(s) => s.seed,
            GameState::Minesweeper(s) => s.seed,
            GameState::Gomoku(s) => s.seed,
            GameState::Chess(s) => s.seed,
        }
    }

    pub fn side_to_move(&self) -> Side {
        match self {
            GameState::TicTacToe(s) => s.to_move,
            GameState::Reversi(s) => s.to_move,
            GameState::Sudoku(_) | GameState::Minesweeper(_) => Side::First,
            GameState::Gomoku(s) => s.to_move,
            GameState::Chess(s) => s.side_to_move(),
        }
    }

    /// All legal moves in a stable order (row-major cell order; chess moves
    /// in generation order). Empty when the game is over, and possibly empty
    /// for a stuck-but-unfinished Sudoku.
    pub fn legal_moves(&self) -> Vec<MoveSpec> {
        match self {
            GameState::TicTacToe(s) => s.legal_moves(),
            GameState::Reversi(s) => s.legal_moves(),
            GameState::Sudoku(s) => s.legal_moves(),
            GameState::Minesweeper(s) => s.legal_moves(),
            GameState::Gomoku(s) => s.legal_moves(),
            GameState::Chess(s) => s.legal_moves_san(),
        }
    }

    pub fn apply_move(&self, mv: &MoveSpec) -> Result<GameState, EngineError> {
        if self.outcome().is_terminal() {
            return Err(EngineError::TerminalState);
        }
        if mv.kind != self.kind() {
            return Err(EngineError::KindMismatch { expected: self.kind(), got: mv.kind });
        }
        match self {
            GameState::TicTacToe(s) => s.apply(mv).map(GameState::TicTacToe),
            GameState::Reversi(s) => s.apply(mv).map(GameState::Reversi),
            GameState::Sudoku(s) => s.apply(mv).map(GameState::Sudoku),
            GameState::Minesweeper(s) => s.apply(mv).map(GameState::Minesweeper),
            GameState::Gomoku(s) => s.apply(mv).map(GameState::Gomoku),
            GameState::Chess(s) => s.apply(mv).map(GameState::Chess),
        }
    }

    pub fn is_legal(&self, mv: &MoveSpec) -> bool {
        !self.outcome().is_terminal() && self.apply_move(mv).is_ok()
    }

    pub fn outcome(&self) -> Outcome {
        match self {
            GameState::TicTacToe(s) => s.outcome(),
            GameState::Reversi(s) => s.outcome(),
            GameState::Sudoku(s) => s.outcome(),
            GameState::Minesweeper(s) => s.outcome(),
            GameState::Gomoku(s) => s.outcome(),
            GameState::Chess(s) => s.outcome(),
        }
    }

    /// The board as the player sees it, in the game's matrix encoding.
    pub fn board(&self) -> BoardMatrix {
        match self {
            GameState::TicTacToe(s) => s.board(),
            GameState::Reversi(s) => s.board(),
            GameState::Sudoku(s) => s.board(),
            GameState::Minesweeper(s) => s.board(),
            GameState::Gomoku(s) => s.board(),
            GameState::Chess(s) => s.board(),
        }
    }

    pub fn move_log(&self) -> &[MoveSpec] {
        match self {
            GameState::TicTacToe(s) => &s.log,
            GameState::Reversi(s) => &s.log,
            GameState::Sudoku(s) => &s.log,
            GameState::Minesweeper(s) => &s.log,
            GameState::Gomoku(s) => &s.log,
            GameState::Chess(s) => s.log(),
        }
    }

    /// Rebuild a state from its origin seed and move log.
    pub fn replay(kind: GameKind, seed: Seed, moves: &[MoveSpec]) -> Result<GameState, EngineError> {
        let mut state = GameState::initial(kind, seed);
        if let GameState::Sudoku(s) = &state {
            // Respect a non-default clue count recorded on the state itself.
            debug_assert_eq!(s.clue_count(), sudoku::DEFAULT_CLUES);
        }
        for mv in moves {
            state = state.apply_move(mv)?;
        }
        Ok(state)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replay_reproduces_states() {
        use rand::Rng;
        for kind in GameKind::ALL {
            let seed = Seed(11).child(kind.name(), 0);
            let mut state = GameState::initial(kind, seed);
            let mut rng = seed.child("walk", 0).rng();
            for _ in 0..6 {
                if state.outcome().is_terminal() {
                    break;
                }
                let moves = state.legal_moves();
                if moves.is_empty() {
                    break;
                }
                let mv = moves[rng.gen_range(0..moves.len())].clone();
                state = state.apply_move(&mv).unwrap();
            }
            let replayed =
                GameState::replay(kind, seed, &state.move_log().to_vec()).unwrap();
            assert_eq!(replayed.board(), state.board(), "{kind} replay diverged");
            assert_eq!(replayed.outcome(), state.outcome());
        }
    }

    #[test]
    fn terminal_states_reject_moves() {
        // Fastest O win: O at A1, B1, C1.
        let ttt = GameKind::TicTacToe;
        let mut s = GameState::initial(ttt, Seed(0));
        for label in ["A1", "A2", "B1", "B2", "C1"] {
            let coord = crate::board::label_to_coord(ttt, label).unwrap();
            s = s.apply_move(&MoveSpec::cell(coord)).unwrap();
        }
        assert_eq!(s.outcome(), Outcome::Win(Side::First));
        let c3 = crate::board::label_to_coord(ttt, "C3").unwrap();
        assert_eq!(s.apply_move(&MoveSpec::cell(c3)).unwrap_err(), EngineError::TerminalState);
    }

    #[test]
    fn kind_mismatch_is_reported() {
        let s = GameState::initial(GameKind::Reversi, Seed(0));
        let mv = MoveSpec::cell(CellCoord::new(GameKind::TicTacToe, 0, 0));
        assert!(matches!(
            s.apply_move(&mv).unwrap_err(),
            EngineError::KindMismatch { .. }
        ));
    }
}
