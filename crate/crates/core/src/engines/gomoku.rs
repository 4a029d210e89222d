//! Gomoku (five in a row) on a 15x15 {0 empty, 1 black, 2 white} board.
//! Black moves first; a run of five or more stones wins, so overlines count.

use super::{EngineError, MovePayload, MoveSpec, Outcome, Side};
use crate::board::{BoardMatrix, CellCoord, GameKind, Seed};
use serde::{Deserialize, Serialize};

pub const EMPTY: u8 = 0;
pub const BLACK: u8 = 1;
pub const WHITE: u8 = 2;
pub const SIZE: usize = 15;

pub fn stone_for(side: Side) -> u8 {
    match side {
        Side::First => BLACK,
        Side::Second => WHITE,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GomokuState {
    pub(crate) cells: Vec<u8>,
    pub to_move: Side,
    pub log: Vec<MoveSpec>,
    pub seed: Seed,
}

impl GomokuState {
    pub fn new(seed: Seed) -> GomokuState {
        GomokuState {
            cells: vec![EMPTY; SIZE * SIZE],
            to_move: Side::First,
            log: Vec::new(),
            seed,
        }
    }

    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.cells[r * SIZE + c]
    }

    pub fn legal_moves(&self) -> Vec<MoveSpec> {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == EMPTY)
            .map(|(i, _)| MoveSpec::cell(CellCoord::new(GameKind::Gomoku, i / SIZE, i % SIZE)))
            .collect()
    }

    pub fn apply(&self, mv: &MoveSpec) -> Result<GomokuState, EngineError> {
        let MovePayload::Cell(coord) = &mv.payload else {
            return Err(EngineError::illegal(mv, "expected a cell move"));
        };
        let idx = coord.row * SIZE + coord.col;
        if self.cells[idx] != EMPTY {
            return Err(EngineError::illegal(mv, "intersection is occupied"));
        }
        let mut next = self.clone();
        next.cells[idx] = stone_for(self.to_move);
        next.to_move = self.to_move.flip();
        next.log.push(mv.clone());
        Ok(next)
    }

    /// Longest run of `stone` through any cell, scanning all four directions.
    pub fn max_run(&self, stone: u8) -> usize {
        let mut best = 0;
        for r in 0..SIZE {
            for c in 0..SIZE {
                if self.get(r, c) != stone {
                    continue;
                }
                for (dr, dc) in [(0i32, 1i32), (1, 0), (1, 1), (1, -1)] {
                    // Only count runs from their first stone.
                    let pr = r as i32 - dr;
                    let pc = c as i32 - dc;
                    if (0..SIZE as i32).contains(&pr)
                        && (0..SIZE as i32).contains(&pc)
                        && self.get(pr as usize, pc as usize) == stone
                    {
                        continue;
                    }
                    let mut len = 0;
                    let (mut rr, mut cc) = (r as i32, c as i32);
                    while (0..SIZE as i32).contains(&rr)
                        && (0..SIZE as i32).contains(&cc)
                        && self.get(rr as usize, cc as usize) == stone
                    {
                        len += 1;
                        rr += dr;
                        cc += dc;
                    }
                    best = best.max(len);
                }
            }
        }
        best
    }

    pub fn outcome(&self) -> Outcome {
        if self.max_run(BLACK) >= 5 {
            return Outcome::Win(Side::First);
        }
        if self.max_run(WHITE) >= 5 {
            return Outcome::Win(Side::Second);
        }
        if self.cells.iter().all(|&v| v != EMPTY) {
            Outcome::Tie
        } else {
            Outcome::Ongoing
        }
    }

    pub fn board(&self) -> BoardMatrix {
        BoardMatrix::from_flat(GameKind::Gomoku, self.cells.iter().map(|&v| v as i8).collect())
            .unwrap()
    }

    pub fn from_board(board: &BoardMatrix, seed: Seed) -> Option<GomokuState> {
        if board.kind() != GameKind::Gomoku {
            return None;
        }
        let black = board.count(BLACK as i8);
        let white = board.count(WHITE as i8);
        let to_move = if black == white {
            Side::First
        } else if black == white + 1 {
            Side::Second
        } else {
            return None;
        };
        Some(GomokuState {
            cells: board.cells().iter().map(|&v| v as u8).collect(),
            to_move,
            log: Vec::new(),
            seed,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::label_to_coord;

    fn mv(label: &str) -> MoveSpec {
        MoveSpec::cell(label_to_coord(GameKind::Gomoku, label).unwrap())
    }

    #[test]
    fn black_opens() {
        let s = GomokuState::new(Seed(0));
        assert_eq!(s.legal_moves().len(), 225);
        let s = s.apply(&mv("H8")).unwrap();
        assert_eq!(s.get(7, 7), BLACK);
        assert_eq!(s.to_move, Side::Second);
    }

    #[test]
    fn five_in_a_row_wins() {
        let mut s = GomokuState::new(Seed(0));
        // Black builds A1..E1 horizontally (row 1, columns A-E) while white
        // scatters on row 15.
        for (b, w) in [("A1", "A15"), ("B1", "B15"), ("C1", "C15"), ("D1", "D15")] {
            s = s.apply(&mv(b)).unwrap().apply(&mv(w)).unwrap();
        }
        assert_eq!(s.outcome(), Outcome::Ongoing);
        s = s.apply(&mv("E1")).unwrap();
        assert_eq!(s.outcome(), Outcome::Win(Side::First));
    }

    #[test]
    fn overline_still_wins() {
        let mut s = GomokuState::new(Seed(0));
        s.cells = vec![EMPTY; SIZE * SIZE];
        for c in 4..10 {
            s.cells[7 * SIZE + c] = BLACK; // six in a row
        }
        assert_eq!(s.max_run(BLACK), 6);
        assert_eq!(s.outcome(), Outcome::Win(Side::First));
    }

    #[test]
    fn diagonal_win_detected() {
        let mut s = GomokuState::new(Seed(0));
        s.cells = vec![EMPTY; SIZE * SIZE];
        for i in 0..5 {
            s.cells[(3 + i) * SIZE + (10 - i)] = WHITE; // anti-diagonal
        }
        assert_eq!(s.outcome(), Outcome::Win(Side::Second));
    }

    #[test]
    fn four_is_not_a_win() {
        let mut s = GomokuState::new(Seed(0));
        s.cells = vec![EMPTY; SIZE * SIZE];
        for c in 0..4 {
            s.cells[c] = BLACK;
        }
        assert_eq!(s.outcome(), Outcome::Ongoing);
    }
}
