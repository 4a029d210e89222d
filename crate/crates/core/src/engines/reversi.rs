//! Reversi on an 8x8 {0 empty, 1 black, 2 white} board. Black moves first
//! from the D4/E5 opening layout. A side with no legal move passes
//! automatically; the game ends when neither side can move.

use super::{EngineError, MovePayload, MoveSpec, Outcome, Side};
use crate::board::{BoardMatrix, CellCoord, GameKind, Seed};
use serde::{Deserialize, Serialize};

pub const EMPTY: u8 = 0;
pub const BLACK: u8 = 1;
pub const WHITE: u8 = 2;

const DIRS: [(i32, i32); 8] =
    [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReversiState {
    pub(crate) cells: Vec<u8>,
    pub to_move: Side,
    pub log: Vec<MoveSpec>,
    pub seed: Seed,
}

pub fn disc_for(side: Side) -> u8 {
    match side {
        Side::First => BLACK,
        Side::Second => WHITE,
    }
}

impl ReversiState {
    pub fn new(seed: Seed) -> ReversiState {
        let mut cells = vec![EMPTY; 64];
        cells[3 * 8 + 3] = BLACK; // D4
        cells[4 * 8 + 4] = BLACK; // E5
        cells[3 * 8 + 4] = WHITE; // D5
        cells[4 * 8 + 3] = WHITE; // E4
        ReversiState { cells, to_move: Side::First, log: Vec::new(), seed }
    }

    fn at(&self, r: i32, c: i32) -> Option<u8> {
        if (0..8).contains(&r) && (0..8).contains(&c) {
            Some(self.cells[(r * 8 + c) as usize])
        } else {
            None
        }
    }

    /// Cells flipped by `side` playing at (r, c); empty when the move is illegal.
    pub fn flips(&self, side: Side, r: usize, c: usize) -> Vec<usize> {
        let own = disc_for(side);
        let opp = disc_for(side.flip());
        if self.cells[r * 8 + c] != EMPTY {
            return Vec::new();
        }
        let mut flipped = Vec::new();
        for (dr, dc) in DIRS {
            let mut run = Vec::new();
            let (mut rr, mut cc) = (r as i32 + dr, c as i32 + dc);
            while self.at(rr, cc) == Some(opp) {
                run.push((rr * 8 + cc) as usize);
                rr += dr;
                cc += dc;
            }
            if !run.is_empty() && self.at(rr, cc) == Some(own) {
                flipped.extend(run);
            }
        }
        flipped
    }

    /// Allocation-free legality probe, for move counting in evaluations.
    pub fn would_flip(&self, side: Side, r: usize, c: usize) -> bool {
        if self.cells[r * 8 + c] != EMPTY {
            return false;
        }
        let own = disc_for(side);
        let opp = disc_for(side.flip());
        for (dr, dc) in DIRS {
            let (mut rr, mut cc) = (r as i32 + dr, c as i32 + dc);
            let mut seen_opp = false;
            while self.at(rr, cc) == Some(opp) {
                seen_opp = true;
                rr += dr;
                cc += dc;
            }
            if seen_opp && self.at(rr, cc) == Some(own) {
                return true;
            }
        }
        false
    }

    pub fn side_has_move(&self, side: Side) -> bool {
        (0..64).any(|i| self.would_flip(side, i / 8, i % 8))
    }

    pub fn mobility(&self, side: Side) -> usize {
        (0..64).filter(|&i| self.would_flip(side, i / 8, i % 8)).count()
    }

    pub fn legal_moves(&self) -> Vec<MoveSpec> {
        (0..64)
            .filter(|&i| self.would_flip(self.to_move, i / 8, i % 8))
            .map(|i| MoveSpec::cell(CellCoord::new(GameKind::Reversi, i / 8, i % 8)))
            .collect()
    }

    pub fn apply(&self, mv: &MoveSpec) -> Result<ReversiState, EngineError> {
        let MovePayload::Cell(coord) = &mv.payload else {
            return Err(EngineError::illegal(mv, "expected a cell move"));
        };
        let flipped = self.flips(self.to_move, coord.row, coord.col);
        if flipped.is_empty() {
            return Err(EngineError::illegal(mv, "move flips no discs"));
        }
        let mut next = self.clone();
        let own = disc_for(self.to_move);
        next.cells[coord.row * 8 + coord.col] = own;
        for i in flipped {
            next.cells[i] = own;
        }
        next.log.push(mv.clone());
        // Turn passes to the opponent unless they are stuck and we are not.
        let opp = self.to_move.flip();
        next.to_move = opp;
        if !next.side_has_move(opp) && next.side_has_move(self.to_move) {
            next.to_move = self.to_move;
        }
        Ok(next)
    }

    pub fn counts(&self) -> (usize, usize) {
        let black = self.cells.iter().filter(|&&v| v == BLACK).count();
        let white = self.cells.iter().filter(|&&v| v == WHITE).count();
        (black, white)
    }

    pub fn outcome(&self) -> Outcome {
        if self.side_has_move(Side::First) || self.side_has_move(Side::Second) {
            return Outcome::Ongoing;
        }
        let (black, white) = self.counts();
        match black.cmp(&white) {
            std::cmp::Ordering::Greater => Outcome::Win(Side::First),
            std::cmp::Ordering::Less => Outcome::Win(Side::Second),
            std::cmp::Ordering::Equal => Outcome::Tie,
        }
    }

    pub fn board(&self) -> BoardMatrix {
        BoardMatrix::from_flat(GameKind::Reversi, self.cells.iter().map(|&v| v as i8).collect())
            .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::label_to_coord;

    #[test]
    fn opening_layout() {
        let s = ReversiState::new(Seed(0));
        let b = s.board();
        assert_eq!(b.get(3, 3), BLACK as i8); // D4
        assert_eq!(b.get(4, 4), BLACK as i8); // E5
        assert_eq!(b.get(3, 4), WHITE as i8); // D5
        assert_eq!(b.get(4, 3), WHITE as i8); // E4
        assert_eq!(b.count(EMPTY as i8), 60);
    }

    #[test]
    fn black_has_four_opening_moves() {
        let s = ReversiState::new(Seed(0));
        let labels: Vec<String> = s.legal_moves().iter().map(|m| m.to_string()).collect();
        assert_eq!(labels, ["C5", "D6", "E3", "F4"]);
    }

    #[test]
    fn flips_match_a_direct_scan() {
        // Independent re-derivation of the flip set for every opening move.
        let s = ReversiState::new(Seed(0));
        for mv in s.legal_moves() {
            let MovePayload::Cell(c) = mv.payload else { unreachable!() };
            let next = s.apply(&MoveSpec::cell(c)).unwrap();
            let before = s.board();
            let after = next.board();
            let mut flipped = Vec::new();
            for (r, cc) in before.coords() {
                if before.get(r, cc) == WHITE as i8 && after.get(r, cc) == BLACK as i8 {
                    flipped.push((r, cc));
                }
            }
            assert_eq!(flipped.len(), 1, "each opening move flips exactly one disc");
        }
    }

    #[test]
    fn move_that_flips_nothing_is_illegal() {
        let s = ReversiState::new(Seed(0));
        let corner = MoveSpec::cell(label_to_coord(GameKind::Reversi, "A1").unwrap());
        assert!(matches!(s.apply(&corner), Err(EngineError::IllegalMove { .. })));
    }

    #[test]
    fn turn_returns_when_opponent_is_stuck() {
        // Black A1, white A2 and A4, black to move. After black plays A3
        // (flipping A2), white's only disc cannot anchor any flip, but black
        // can still take A5 — so the turn must come back to black.
        let mut s = ReversiState::new(Seed(0));
        s.cells = vec![EMPTY; 64];
        s.cells[0] = BLACK; // A1
        s.cells[1] = WHITE; // A2
        s.cells[3] = WHITE; // A4
        s.to_move = Side::First;
        let a3 = MoveSpec::cell(label_to_coord(GameKind::Reversi, "A3").unwrap());
        let next = s.apply(&a3).unwrap();
        assert!(!next.side_has_move(Side::Second));
        assert_eq!(next.to_move, Side::First);
        assert_eq!(next.outcome(), Outcome::Ongoing);
        let labels: Vec<String> = next.legal_moves().iter().map(|m| m.to_string()).collect();
        assert_eq!(labels, ["A5"]);
    }

    #[test]
    fn game_ends_when_neither_side_moves() {
        let mut s = ReversiState::new(Seed(0));
        s.cells = vec![BLACK; 64];
        for i in 60..64 {
            s.cells[i] = WHITE;
        }
        assert_eq!(s.outcome(), Outcome::Win(Side::First));
        let (black, white) = s.counts();
        assert_eq!((black, white), (60, 4));
    }
}
