//! Alpha-beta Reversi opponent. The evaluation blends disc count,
//! positional weights (corners prized, corner-adjacent squares penalized,
//! other edges mildly rewarded), and mobility.

use super::{ReversiWeights, SearchConfig};
use crate::engines::reversi::{disc_for, ReversiState};
use crate::engines::{MoveSpec, Outcome, Side};

const WIN: i32 = 1_000_000;

fn square_weight(r: usize, c: usize, w: &ReversiWeights) -> i32 {
    let corner = (r == 0 || r == 7) && (c == 0 || c == 7);
    if corner {
        return w.corner;
    }
    let near_r = r <= 1 || r >= 6;
    let near_c = c <= 1 || c >= 6;
    let edge = r == 0 || r == 7 || c == 0 || c == 7;
    if near_r && near_c {
        // The eight cells diagonally or orthogonally touching each corner.
        return w.corner_adjacent;
    }
    if edge {
        return w.edge;
    }
    0
}

/// Static evaluation from `side`'s perspective.
fn eval(state: &ReversiState, side: Side, w: &ReversiWeights) -> i32 {
    let own = disc_for(side);
    let opp = disc_for(side.flip());
    let board = state.board();
    let mut score = 0;
    for (r, c) in board.coords() {
        let v = board.get(r, c) as u8;
        if v == own {
            score += w.disc + square_weight(r, c, w);
        } else if v == opp {
            score -= w.disc + square_weight(r, c, w);
        }
    }
    score + w.mobility * (state.mobility(side) as i32 - state.mobility(side.flip()) as i32)
}

/// Minimax with alpha-beta on the value for `root`. Passes break strict
/// alternation, so each node maximizes or minimizes according to whose turn
/// it actually is.
fn search(
    state: &ReversiState,
    depth: u32,
    mut alpha: i32,
    mut beta: i32,
    root: Side,
    w: &ReversiWeights,
) -> i32 {
    match state.outcome() {
        Outcome::Win(s) => {
            let (b, wh) = state.counts();
            let margin = if s == Side::First { b as i32 - wh as i32 } else { wh as i32 - b as i32 };
            return if s == root { WIN + margin } else { -WIN - margin };
        }
        Outcome::Tie => return 0,
        _ => {}
    }
    if depth == 0 {
        return eval(state, root, w);
    }
    let maximizing = state.to_move == root;
    let mut best = if maximizing { i32::MIN } else { i32::MAX };
    for mv in state.legal_moves() {
        let next = state.apply(&mv).expect("legal move");
        let v = search(&next, depth - 1, alpha, beta, root, w);
        if maximizing {
            best = best.max(v);
            alpha = alpha.max(best);
        } else {
            best = best.min(v);
            beta = beta.min(best);
        }
        if alpha >= beta {
            break;
        }
    }
    best
}

/// Best move for the side to move, ties broken by the first cell in
/// row-major order.
pub fn reversi_alphabeta_move(state: &ReversiState, cfg: &SearchConfig) -> MoveSpec {
    let moves = state.legal_moves();
    assert!(!moves.is_empty(), "search called with no legal moves");
    let w = &cfg.reversi_weights;
    let root = state.to_move;
    let depth = cfg.reversi_depth.max(1);
    let mut best_mv = moves[0].clone();
    let mut best = i32::MIN;
    for mv in &moves {
        let next = state.apply(mv).expect("legal move");
        // Full window per root child keeps values exact for tie-breaking.
        let v = search(&next, depth - 1, i32::MIN, i32::MAX, root, w);
        if v > best {
            best = v;
            best_mv = mv.clone();
        }
    }
    best_mv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::board::{GameKind, Seed};
    use crate::engines::MovePayload;
    use crate::stategen::{random_legal_state, GenProfile};
    use crate::GameState;

    /// Unpruned minimax over the same evaluation, as an oracle.
    fn plain_search(state: &ReversiState, depth: u32, root: Side, w: &ReversiWeights) -> i32 {
        match state.outcome() {
            Outcome::Win(s) => {
                let (b, wh) = state.counts();
                let margin =
                    if s == Side::First { b as i32 - wh as i32 } else { wh as i32 - b as i32 };
                return if s == root { WIN + margin } else { -WIN - margin };
            }
            Outcome::Tie => return 0,
            _ => {}
        }
        if depth == 0 {
            return eval(state, root, w);
        }
        let vals: Vec<i32> = state
            .legal_moves()
            .iter()
            .map(|m| plain_search(&state.apply(m).unwrap(), depth - 1, root, w))
            .collect();
        if state.to_move == root {
            *vals.iter().max().unwrap()
        } else {
            *vals.iter().min().unwrap()
        }
    }

    fn sample_state(i: u64) -> ReversiState {
        let profile = GenProfile::default_for(GameKind::Reversi);
        let state = random_legal_state(&profile, Seed(31).child("rv", i)).unwrap();
        let GameState::Reversi(s) = state else { panic!() };
        s
    }

    #[test]
    fn alpha_beta_matches_plain_minimax() {
        let w = ReversiWeights::default();
        for i in 0..12 {
            let s = sample_state(i);
            let pruned = search(&s, 3, i32::MIN, i32::MAX, s.to_move, &w);
            let plain = plain_search(&s, 3, s.to_move, &w);
            assert_eq!(pruned, plain, "state {i}");
        }
    }

    #[test]
    fn depth_one_with_disc_weight_only_maximizes_flips() {
        // With every positional term zeroed, a depth-1 search must pick the
        // move flipping the most discs (first such cell on ties).
        let cfg = SearchConfig {
            reversi_depth: 1,
            reversi_weights: ReversiWeights {
                disc: 1,
                corner: 0,
                corner_adjacent: 0,
                edge: 0,
                mobility: 0,
            },
            ..SearchConfig::default()
        };
        for i in 0..20 {
            let s = sample_state(i);
            let chosen = reversi_alphabeta_move(&s, &cfg);
            let MovePayload::Cell(cc) = chosen.payload else { panic!() };
            let chosen_flips = s.flips(s.to_move, cc.row, cc.col).len();
            let max_flips = (0..64)
                .map(|i| s.flips(s.to_move, i / 8, i % 8).len())
                .max()
                .unwrap();
            assert_eq!(chosen_flips, max_flips, "state {i}");
            // First maximal cell in row-major order wins the tie.
            let first_max = (0..64)
                .find(|&i| s.flips(s.to_move, i / 8, i % 8).len() == max_flips)
                .unwrap();
            assert_eq!((cc.row, cc.col), (first_max / 8, first_max % 8));
        }
    }

    #[test]
    fn prefers_a_corner_with_default_weights() {
        // Build a position where both a corner and a center capture are
        // available; the positional table should steer toward the corner.
        let mut s = ReversiState::new(Seed(0));
        s.cells = vec![0; 64];
        s.cells[1] = 2; // A2 white — taking corner A1 flips it
        s.cells[2] = 1; // A3 black
        s.cells[28] = 2; // D5 white — taking D4 flips it
        s.cells[29] = 1; // D6 black
        s.to_move = Side::First;
        let labels: Vec<String> = s.legal_moves().iter().map(|m| m.to_string()).collect();
        assert_eq!(labels, ["A1", "D4"]);
        let cfg = SearchConfig { reversi_depth: 1, ..SearchConfig::default() };
        let chosen = reversi_alphabeta_move(&s, &cfg);
        assert_eq!(chosen.to_string(), "A1");
    }

    #[test]
    fn search_is_deterministic() {
        let cfg = SearchConfig::default();
        let s = sample_state(3);
        assert_eq!(reversi_alphabeta_move(&s, &cfg), reversi_alphabeta_move(&s, &cfg));
    }
}
