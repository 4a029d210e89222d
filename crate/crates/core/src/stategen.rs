//! Board and state generators for the four tasks.
//!
//! Two regimes exist on purpose. Perceiving and Q&A boards are *rule-free*:
//! each cell is sampled independently, which exercises transcription on
//! positions no real game would reach. Rule-following and game states are
//! *rule-consistent*: produced by random legal playouts (or, for Sudoku and
//! Minesweeper, by the game's own generator).

use crate::board::{BoardMatrix, GameKind, Seed};
use crate::engines::{minesweeper, sudoku, GameState};
use rand::Rng;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum GenError {
    #[error("{kind}: no non-terminal state found after {attempts} playout attempts")]
    RetriesExhausted { kind: GameKind, attempts: u32 },
}

/// Tuning knobs for one game's generators.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GenProfile {
    pub kind: GameKind,
    /// Probability that a rule-free cell is non-empty.
    pub fill_density: f64,
    /// Inclusive range of random legal moves to play out.
    pub playout_depth: (u32, u32),
    /// Sudoku only: clue count for generated puzzles.
    pub sudoku_clues: usize,
}

impl GenProfile {
    pub fn default_for(kind: GameKind) -> GenProfile {
        let (fill_density, playout_depth) = match kind {
            GameKind::TicTacToe => (0.5, (2, 7)),
            GameKind::Reversi => (0.7, (4, 40)),
            GameKind::Gomoku => (0.2, (4, 40)),
            GameKind::Chess => (0.4, (4, 40)),
            GameKind::Minesweeper => (0.5, (1, 20)),
            GameKind::Sudoku => (0.4, (0, 0)), // puzzles are used as generated
        };
        GenProfile { kind, fill_density, playout_depth, sudoku_clues: sudoku::DEFAULT_CLUES }
    }
}

/// A rule-free board: each cell is empty with probability `1 - fill_density`,
/// otherwise uniform over the game's non-empty cell values.
pub fn random_perception_board(profile: &GenProfile, seed: Seed) -> BoardMatrix {
    let kind = profile.kind;
    let mut rng = seed.child("perception-board", 0).rng();
    let empty = kind.empty_cell();
    let filled: Vec<i8> =
        kind.alphabet().iter().copied().filter(|&v| v != empty).collect();
    let cells = (0..kind.cell_count())
        .map(|_| {
            // Draw both variates unconditionally so cell streams stay aligned.
            let fill = rng.gen_bool(profile.fill_density);
            let pick = rng.gen_range(0..filled.len());
            if fill {
                filled[pick]
            } else {
                empty
            }
        })
        .collect();
    BoardMatrix::from_flat(kind, cells).expect("sampled values come from the alphabet")
}

const MAX_PLAYOUT_ATTEMPTS: u32 = 1000;

/// A rule-consistent, non-terminal state with at least one legal move,
/// reached by playing uniformly random legal moves from the initial
/// position. Playouts that end a game early are retried with a fresh
/// substream, up to a bound.
pub fn random_legal_state(profile: &GenProfile, seed: Seed) -> Result<GameState, GenError> {
    let kind = profile.kind;
    if kind == GameKind::Sudoku {
        let state = sudoku::SudokuState::generate(seed, profile.sudoku_clues);
        return Ok(GameState::Sudoku(state));
    }
    for attempt in 0..MAX_PLAYOUT_ATTEMPTS {
        let sub = seed.child("legal-playout", attempt as u64);
        let mut rng = sub.rng();
        let (lo, hi) = profile.playout_depth;
        let depth = rng.gen_range(lo..=hi.max(lo));
        let mut state = GameState::initial(kind, sub);
        let mut ok = true;
        for _ in 0..depth {
            let moves = state.legal_moves();
            if moves.is_empty() || state.outcome().is_terminal() {
                ok = false;
                break;
            }
            let mv = moves[rng.gen_range(0..moves.len())].clone();
            state = state.apply_move(&mv).expect("legal move applies");
        }
        if ok && !state.outcome().is_terminal() && !state.legal_moves().is_empty() {
            return Ok(state);
        }
    }
    Err(GenError::RetriesExhausted { kind, attempts: MAX_PLAYOUT_ATTEMPTS })
}

/// Ten distinct mine cells on the 8x8 board, uniform over layouts.
pub fn generate_mine_layout(seed: Seed) -> Vec<bool> {
    minesweeper::mine_layout(seed)
}

/// A Sudoku puzzle with a unique solution and `clue_count` clues (or as few
/// as uniqueness allows).
pub fn generate_sudoku_puzzle(seed: Seed, clue_count: usize) -> sudoku::SudokuState {
    sudoku::SudokuState::generate(seed, clue_count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engines::Outcome;

    #[test]
    fn perception_boards_are_deterministic() {
        for kind in GameKind::ALL {
            let profile = GenProfile::default_for(kind);
            let a = random_perception_board(&profile, Seed(5));
            let b = random_perception_board(&profile, Seed(5));
            let c = random_perception_board(&profile, Seed(6));
            assert_eq!(a, b);
            assert_ne!(a, c, "{kind}: distinct seeds should differ");
        }
    }

    #[test]
    fn perception_density_tracks_the_profile() {
        // 200 boards x 64 cells gives a tight estimate of the fill rate.
        let profile = GenProfile::default_for(GameKind::Reversi);
        let mut filled = 0usize;
        let mut total = 0usize;
        for i in 0..200 {
            let b = random_perception_board(&profile, Seed(1).child("density", i));
            filled += b.cells().iter().filter(|&&v| v != 0).count();
            total += b.cells().len();
        }
        let rate = filled as f64 / total as f64;
        assert!((rate - 0.7).abs() < 0.02, "observed fill rate {rate}");
    }

    #[test]
    fn perception_symbols_are_uniform_over_nonempty() {
        let profile = GenProfile::default_for(GameKind::Sudoku);
        let mut counts = [0usize; 10];
        for i in 0..300 {
            let b = random_perception_board(&profile, Seed(2).child("uniform", i));
            for &v in b.cells() {
                counts[v as usize] += 1;
            }
        }
        let nonempty: usize = counts[1..].iter().sum();
        for d in 1..=9 {
            let share = counts[d] as f64 / nonempty as f64;
            assert!((share - 1.0 / 9.0).abs() < 0.01, "digit {d} share {share}");
        }
    }

    #[test]
    fn legal_states_are_live_and_replayable() {
        for kind in GameKind::ALL {
            let profile = GenProfile::default_for(kind);
            for i in 0..8 {
                let state =
                    random_legal_state(&profile, Seed(7).child(kind.name(), i)).unwrap();
                assert_eq!(state.outcome(), Outcome::Ongoing, "{kind}");
                assert!(!state.legal_moves().is_empty(), "{kind}");
                let replayed = GameState::replay(
                    state.kind(),
                    state.seed(),
                    &state.move_log().to_vec(),
                )
                .unwrap();
                assert_eq!(replayed.board(), state.board(), "{kind} replay");
            }
        }
    }

    #[test]
    fn ttt_playout_depth_stays_in_range() {
        let profile = GenProfile::default_for(GameKind::TicTacToe);
        for i in 0..40 {
            let state = random_legal_state(&profile, Seed(9).child("depth", i)).unwrap();
            let n = state.move_log().len() as u32;
            assert!((2..=7).contains(&n), "depth {n}");
        }
    }

    #[test]
    fn sudoku_legal_state_is_the_puzzle() {
        let mut profile = GenProfile::default_for(GameKind::Sudoku);
        profile.sudoku_clues = 36;
        let state = random_legal_state(&profile, Seed(3)).unwrap();
        let GameState::Sudoku(s) = &state else { panic!() };
        assert_eq!(s.clue_count(), 36);
        assert!(state.move_log().is_empty());
    }

    #[test]
    fn mine_layout_frequency_is_uniform() {
        // Each of the 64 cells should carry a mine in 10/64 of layouts.
        let trials = 4000u64;
        let mut per_cell = [0u32; 64];
        for i in 0..trials {
            let mines = generate_mine_layout(Seed(4).child("freq", i));
            for (c, &m) in mines.iter().enumerate() {
                if m {
                    per_cell[c] += 1;
                }
            }
        }
        let expected = 10.0 / 64.0;
        for (c, &n) in per_cell.iter().enumerate() {
            let rate = n as f64 / trials as f64;
            assert!((rate - expected).abs() < 0.02, "cell {c} rate {rate}");
        }
    }
}
