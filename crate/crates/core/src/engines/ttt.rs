//! Tic-Tac-Toe on the {-1 empty, 1 X, 0 O} matrix encoding. O moves first.

use super::{EngineError, MovePayload, MoveSpec, Outcome, Side};
use crate::board::{BoardMatrix, CellCoord, GameKind, Seed};
use serde::{Deserialize, Serialize};

pub const O_CELL: i8 = 0;
pub const X_CELL: i8 = 1;
pub const EMPTY: i8 = -1;

const LINES: [[usize; 3]; 8] = [
    [0, 1, 2],
    [3, 4, 5],
    [6, 7, 8],
    [0, 3, 6],
    [1, 4, 7],
    [2, 5, 8],
    [0, 4, 8],
    [2, 4, 6],
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TttState {
    pub(crate) cells: Vec<i8>,
    pub to_move: Side,
    pub log: Vec<MoveSpec>,
    pub seed: Seed,
}

impl TttState {
    pub fn new(seed: Seed) -> TttState {
        TttState { cells: vec![EMPTY; 9], to_move: Side::First, log: Vec::new(), seed }
    }

    fn mark_for(side: Side) -> i8 {
        match side {
            Side::First => O_CELL,
            Side::Second => X_CELL,
        }
    }

    pub fn legal_moves(&self) -> Vec<MoveSpec> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == EMPTY)
            .map(|(i, _)| MoveSpec::cell(CellCoord::new(GameKind::TicTacToe, i / 3, i % 3)))
            .collect()
    }

    pub fn apply(&self, mv: &MoveSpec) -> Result<TttState, EngineError> {
        let MovePayload::Cell(coord) = &mv.payload else {
            return Err(EngineError::illegal(mv, "expected a cell move"));
        };
        let idx = coord.row * 3 + coord.col;
        if self.cells[idx] != EMPTY {
            return Err(EngineError::illegal(mv, "cell is already marked"));
        }
        let mut next = self.clone();
        next.cells[idx] = TttState::mark_for(self.to_move);
        next.to_move = self.to_move.flip();
        next.log.push(mv.clone());
        Ok(next)
    }

    pub fn outcome(&self) -> Outcome {
        for line in LINES {
            let [a, b, c] = line.map(|i| self.cells[i]);
            if a != EMPTY && a == b && b == c {
                return if a == O_CELL { Outcome::Win(Side::First) } else { Outcome::Win(Side::Second) };
            }
        }
        if self.cells.iter().all(|&v| v != EMPTY) {
            Outcome::Tie
        } else {
            Outcome::Ongoing
        }
    }

    pub fn board(&self) -> BoardMatrix {
        BoardMatrix::from_flat(GameKind::TicTacToe, self.cells.clone()).unwrap()
    }

    /// Load a bare position for analysis; the mover is inferred from the
    /// mark counts (O moves first, so O leads or ties the count).
    pub fn from_board(board: &BoardMatrix, seed: Seed) -> Option<TttState> {
        if board.kind() != GameKind::TicTacToe {
            return None;
        }
        let o = board.count(O_CELL);
        let x = board.count(X_CELL);
        let to_move = if o == x {
            Side::First
        } else if o == x + 1 {
            Side::Second
        } else {
            return None;
        };
        Some(TttState { cells: board.cells().to_vec(), to_move, log: Vec::new(), seed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::label_to_coord;

    fn mv(label: &str) -> MoveSpec {
        MoveSpec::cell(label_to_coord(GameKind::TicTacToe, label).unwrap())
    }

    #[test]
    fn o_moves_first_and_marks_zero() {
        let s = TttState::new(Seed(0));
        let s = s.apply(&mv("B2")).unwrap();
        assert_eq!(s.board().get(1, 1), O_CELL);
        assert_eq!(s.to_move, Side::Second);
        let s = s.apply(&mv("A1")).unwrap();
        assert_eq!(s.board().get(0, 0), X_CELL);
    }

    #[test]
    fn nine_initial_moves() {
        assert_eq!(TttState::new(Seed(0)).legal_moves().len(), 9);
    }

    #[test]
    fn occupied_cell_is_illegal() {
        let s = TttState::new(Seed(0)).apply(&mv("A1")).unwrap();
        assert!(matches!(s.apply(&mv("A1")), Err(EngineError::IllegalMove { .. })));
    }

    #[test]
    fn diagonal_win_detected() {
        let mut s = TttState::new(Seed(0));
        for label in ["A1", "A2", "B2", "B1", "C3"] {
            s = s.apply(&mv(label)).unwrap();
        }
        assert_eq!(s.outcome(), Outcome::Win(Side::First));
    }

    #[test]
    fn x_column_win_detected() {
        let mut s = TttState::new(Seed(0));
        // O plays A1/A2/C2, X completes column 3.
        for label in ["A1", "A3", "A2", "B3", "C2", "C3"] {
            s = s.apply(&mv(label)).unwrap();
        }
        assert_eq!(s.outcome(), Outcome::Win(Side::Second));
    }

    #[test]
    fn full_board_without_line_is_tie() {
        let mut s = TttState::new(Seed(0));
        // O: B2, A1, B3, C2, A3 / X: A2, C1* ... drawn sequence:
        for label in ["B2", "A1", "A3", "C1", "B1", "B3", "C3", "C2", "A2"] {
            s = s.apply(&mv(label)).unwrap();
        }
        assert_eq!(s.outcome(), Outcome::Tie);
    }

    #[test]
    fn from_board_infers_mover() {
        let board = BoardMatrix::new(
            GameKind::TicTacToe,
            vec![vec![0, -1, -1], vec![-1, 1, -1], vec![-1, -1, -1]],
        )
        .unwrap();
        let s = TttState::from_board(&board, Seed(0)).unwrap();
        assert_eq!(s.to_move, Side::First);
        let board = BoardMatrix::new(
            GameKind::TicTacToe,
            vec![vec![0, -1, -1], vec![-1, -1, -1], vec![-1, -1, -1]],
        )
        .unwrap();
        assert_eq!(TttState::from_board(&board, Seed(0)).unwrap().to_move, Side::Second);
    }
}
