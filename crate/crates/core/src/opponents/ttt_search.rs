//! Exhaustive minimax for Tic-Tac-Toe. The full game tree is small enough
//! to search exactly, so this opponent is optimal: it never loses from any
//! reachable position, and self-play always ties.

use crate::engines::ttt::TttState;
use crate::engines::{MoveSpec, Outcome};

/// Exact value of `state` for the side to move: +1 win, 0 tie, -1 loss.
fn value(state: &TttState, mut alpha: i32, beta: i32) -> i32 {
    match state.outcome() {
        // Any finished win belongs to the player who just moved.
        Outcome::Win(_) => return -1,
        Outcome::Tie => return 0,
        _ => {}
    }
    let mut best = -2;
    for mv in state.legal_moves() {
        let next = state.apply(&mv).expect("legal move");
        let v = -value(&next, -beta, -alpha);
        if v > best {
            best = v;
        }
        alpha = alpha.max(best);
        if alpha >= beta {
            break;
        }
    }
    best
}

/// The optimal move for the side to move, breaking value ties in favor of
/// the lowest (row, col) cell.
pub fn ttt_minimax_move(state: &TttState) -> MoveSpec {
    let moves = state.legal_moves();
    assert!(!moves.is_empty(), "minimax called on a finished game");
    let mut best_mv = moves[0].clone();
    let mut best = -2;
    for mv in moves {
        // Full window per child keeps values exact, so the first maximum in
        // coordinate order is chosen regardless of pruning inside.
        let next = state.apply(&mv).expect("legal move");
        let v = -value(&next, -2, 2);
        if v > best {
            best = v;
            best_mv = mv;
        }
    }
    best_mv
}
