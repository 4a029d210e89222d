//! Minesweeper on an 8x8 board with exactly ten mines. The visible matrix
//! uses {-1 unrevealed, 0-8 revealed adjacency count, 9 revealed mine}.
//! Every unrevealed cell may be probed — there is no first-click protection
//! and no flagging. Revealing a 0 floods its whole zero-region.

use super::{EngineError, MovePayload, MoveSpec, Outcome, Side};
use crate::board::{BoardMatrix, CellCoord, GameKind, Seed};
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

pub const SIZE: usize = 8;
pub const MINES: usize = 10;
pub const UNREVEALED: i8 = -1;
pub const MINE: i8 = 9;

/// Choose the ten mine cells for a seed: a partial Fisher-Yates shuffle of
/// the 64 cell indices, so every layout is equally likely.
pub fn mine_layout(seed: Seed) -> Vec<bool> {
    use rand::Rng;
    let mut rng = seed.child("mine-layout", 0).rng();
    let mut idx: Vec<usize> = (0..SIZE * SIZE).collect();
    let mut mines = vec![false; SIZE * SIZE];
    for k in 0..MINES {
        let j = rng.gen_range(k..idx.len());
        idx.swap(k, j);
        mines[idx[k]] = true;
    }
    mines
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinesweeperState {
    mines: Vec<bool>,
    revealed: Vec<bool>,
    exploded: bool,
    pub log: Vec<MoveSpec>,
    pub seed: Seed,
}

impl MinesweeperState {
    pub fn new(seed: Seed) -> MinesweeperState {
        MinesweeperState {
            mines: mine_layout(seed),
            revealed: vec![false; SIZE * SIZE],
            exploded: false,
            log: Vec::new(),
            seed,
        }
    }

    pub fn is_mine(&self, r: usize, c: usize) -> bool {
        self.mines[r * SIZE + c]
    }

    pub fn is_revealed(&self, r: usize, c: usize) -> bool {
        self.revealed[r * SIZE + c]
    }

    pub fn adjacent_mines(&self, r: usize, c: usize) -> u8 {
        let mut n = 0;
        for dr in -1i32..=1 {
            for dc in -1i32..=1 {
                if dr == 0 && dc == 0 {
                    continue;
                }
                let (rr, cc) = (r as i32 + dr, c as i32 + dc);
                if (0..SIZE as i32).contains(&rr)
                    && (0..SIZE as i32).contains(&cc)
                    && self.mines[(rr * SIZE as i32 + cc) as usize]
                {
                    n += 1;
                }
            }
        }
        n
    }

    pub fn revealed_safe_count(&self) -> usize {
        (0..SIZE * SIZE).filter(|&i| self.revealed[i] && !self.mines[i]).count()
    }

    pub fn legal_moves(&self) -> Vec<MoveSpec> {
        self.revealed
            .iter()
            .enumerate()
            .filter(|(_, &rev)| !rev)
            .map(|(i, _)| {
                MoveSpec::cell(CellCoord::new(GameKind::Minesweeper, i / SIZE, i % SIZE))
            })
            .collect()
    }

    pub fn apply(&self, mv: &MoveSpec) -> Result<MinesweeperState, EngineError> {
        let MovePayload::Cell(coord) = &mv.payload else {
            return Err(EngineError::illegal(mv, "expected a cell move"));
        };
        let idx = coord.row * SIZE + coord.col;
        if self.revealed[idx] {
            return Err(EngineError::illegal(mv, "cell is already revealed"));
        }
        let mut next = self.clone();
        next.log.push(mv.clone());
        next.revealed[idx] = true;
        if next.mines[idx] {
            next.exploded = true;
            return Ok(next);
        }
        if next.adjacent_mines(coord.row, coord.col) == 0 {
            next.flood_from(idx);
        }
        Ok(next)
    }

    /// Breadth-first reveal of the zero-region around `start` plus its
    /// numbered boundary.
    fn flood_from(&mut self, start: usize) {
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let (r, c) = (i / SIZE, i % SIZE);
            if self.adjacent_mines(r, c) != 0 {
                continue;
            }
            for dr in -1i32..=1 {
                for dc in -1i32..=1 {
                    if dr == 0 && dc == 0 {
                        continue;
                    }
                    let (rr, cc) = (r as i32 + dr, c as i32 + dc);
                    if !(0..SIZE as i32).contains(&rr) || !(0..SIZE as i32).contains(&cc) {
                        continue;
                    }
                    let j = (rr * SIZE as i32 + cc) as usize;
                    if !self.revealed[j] && !self.mines[j] {
                        self.revealed[j] = true;
                        queue.push_back(j);
                    }
                }
            }
        }
    }

    pub fn outcome(&self) -> Outcome {
        if self.exploded {
            return Outcome::Loss(Side::First);
        }
        if self.revealed_safe_count() == SIZE * SIZE - MINES {
            Outcome::Win(Side::First)
        } else {
            Outcome::Ongoing
        }
    }

    pub fn board(&self) -> BoardMatrix {
        let cells = (0..SIZE * SIZE)
            .map(|i| {
                if !self.revealed[i] {
                    UNREVEALED
                } else if self.mines[i] {
                    MINE
                } else {
                    self.adjacent_mines(i / SIZE, i % SIZE) as i8
                }
            })
            .collect();
        BoardMatrix::from_flat(GameKind::Minesweeper, cells).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn layouts_have_exactly_ten_mines() {
        for i in 0..50 {
            let mines = mine_layout(Seed(i));
            assert_eq!(mines.iter().filter(|&&m| m).count(), MINES);
        }
    }

    #[test]
    fn layouts_vary_with_seed() {
        let distinct: HashSet<Vec<bool>> = (0..20).map(|i| mine_layout(Seed(i))).collect();
        assert!(distinct.len() > 15);
    }

    #[test]
    fn revealing_a_mine_loses() {
        let s = MinesweeperState::new(Seed(3));
        let mine_idx = (0..64).find(|&i| s.mines[i]).unwrap();
        let mv = MoveSpec::cell(CellCoord::new(GameKind::Minesweeper, mine_idx / 8, mine_idx % 8));
        let next = s.apply(&mv).unwrap();
        assert_eq!(next.outcome(), Outcome::Loss(Side::First));
        assert_eq!(next.board().get(mine_idx / 8, mine_idx % 8), MINE);
    }

    #[test]
    fn flood_reveal_matches_independent_bfs() {
        // Oracle: reveal set = {start} ∪ connected zero-region ∪ its boundary,
        // computed here with a fresh breadth-first search over the raw layout.
        for seed in 0..20u64 {
            let s = MinesweeperState::new(Seed(seed));
            let Some(zero) = (0..64).find(|&i| {
                !s.mines[i] && s.adjacent_mines(i / 8, i % 8) == 0
            }) else {
                continue;
            };
            let mv = MoveSpec::cell(CellCoord::new(GameKind::Minesweeper, zero / 8, zero % 8));
            let next = s.apply(&mv).unwrap();

            let mut expect = HashSet::new();
            let mut queue = vec![zero];
            expect.insert(zero);
            while let Some(i) = queue.pop() {
                let (r, c) = (i / 8, i % 8);
                if s.adjacent_mines(r, c) != 0 {
                    continue;
                }
                for dr in -1i32..=1 {
                    for dc in -1i32..=1 {
                        let (rr, cc) = (r as i32 + dr, c as i32 + dc);
                        if (0..8).contains(&rr) && (0..8).contains(&cc) {
                            let j = (rr * 8 + cc) as usize;
                            if !s.mines[j] && expect.insert(j) {
                                queue.push(j);
                            }
                        }
                    }
                }
            }
            let got: HashSet<usize> = (0..64).filter(|&i| next.revealed[i]).collect();
            assert_eq!(got, expect, "seed {seed}");
        }
    }

    #[test]
    fn win_when_all_safe_cells_revealed() {
        let s = MinesweeperState::new(Seed(1));
        let mut state = s.clone();
        for i in 0..64 {
            if !state.mines[i] && !state.revealed[i] {
                let mv = MoveSpec::cell(CellCoord::new(GameKind::Minesweeper, i / 8, i % 8));
                state = state.apply(&mv).unwrap();
            }
        }
        assert_eq!(state.outcome(), Outcome::Win(Side::First));
        assert_eq!(state.revealed_safe_count(), 54);
    }

    #[test]
    fn board_encoding_uses_adjacency_counts() {
        let s = MinesweeperState::new(Seed(2));
        let safe = (0..64).find(|&i| !s.mines[i] && s.adjacent_mines(i / 8, i % 8) > 0).unwrap();
        let mv = MoveSpec::cell(CellCoord::new(GameKind::Minesweeper, safe / 8, safe % 8));
        let next = s.apply(&mv).unwrap();
        let b = next.board();
        assert_eq!(
            b.get(safe / 8, safe % 8),
            next.adjacent_mines(safe / 8, safe % 8) as i8
        );
        // Everything never revealed stays -1.
        let hidden = (0..64).find(|&i| !next.revealed[i]).unwrap();
        assert_eq!(b.get(hidden / 8, hidden % 8), UNREVEALED);
    }
}
