//! Chess opponent: an external UCI engine when one is configured, with a
//! built-in material-and-mobility alpha-beta search as the fallback.

use super::uci::UciEngine;
use super::SearchConfig;
use crate::engines::chess::{piece_points, ChessState};
use crate::engines::{MoveSpec, Outcome};

const MATE: i64 = 1_000_000;

/// Static evaluation from white's point of view:
/// 10x material balance plus a pseudo-mobility differential.
fn eval_white(state: &ChessState) -> i64 {
    let mut material = 0i64;
    for sq in 0..64 {
        let p = state.piece_at(sq);
        material += p.signum() as i64 * piece_points(p) as i64;
    }
    let mobility = state.pseudo_move_count(true) as i64 - state.pseudo_move_count(false) as i64;
    10 * material + mobility
}

fn search(state: &ChessState, depth: u32, mut alpha: i64, beta: i64, ply: u32) -> i64 {
    match state.outcome() {
        Outcome::Win(_) => return -(MATE - ply as i64), // side to move is mated
        Outcome::Tie => return 0,
        Outcome::Loss(s) => return if s == state.side_to_move() { -(MATE - ply as i64) } else { MATE - ply as i64 },
        Outcome::Ongoing => {}
    }
    if depth == 0 {
        let white_score = eval_white(state);
        return if state.side_to_move() == crate::engines::Side::First {
            white_score
        } else {
            -white_score
        };
    }
    let mut best = i64::MIN;
    for mv in state.legal_mvs() {
        let next = state.apply_mv(mv);
        let v = -search(&next, depth - 1, -beta, -alpha, ply + 1);
        best = best.max(v);
        alpha = alpha.max(best);
        if alpha >= beta {
            break;
        }
    }
    best
}

/// Internal search: depth `cfg.chess_depth`, first-best tie-break over the
/// engine's move ordering, result expressed as canonical SAN.
pub fn chess_internal_move(state: &ChessState, cfg: &SearchConfig) -> MoveSpec {
    let legal = state.legal_mvs();
    assert!(!legal.is_empty(), "search called on a terminal position");
    let depth = cfg.chess_depth.max(1);
    let mut best_mv = legal[0];
    let mut best = i64::MIN;
    for &mv in &legal {
        let next = state.apply_mv(mv);
        let v = -search(&next, depth - 1, -MATE * 2, MATE * 2, 1);
        if v > best {
            best = v;
            best_mv = mv;
        }
    }
    MoveSpec::san(state.san_for(best_mv, &legal))
}

/// Picks the reply move, preferring `engine` when provided. Any UCI failure
/// (engine error, unparsable or illegal move) logs a warning and falls back
/// to the internal search so a game never stalls.
pub fn chess_search_move(
    state: &ChessState,
    cfg: &SearchConfig,
    engine: Option<&mut UciEngine>,
) -> MoveSpec {
    if let Some(engine) = engine {
        match engine.best_move(&state.fen(), cfg.chess_movetime_ms) {
            Ok(uci) => {
                let legal = state.legal_mvs();
                if let Some(&mv) = legal.iter().find(|m| m.uci() == uci) {
                    return MoveSpec::san(state.san_for(mv, &legal));
                }
                log::warn!("uci engine proposed illegal move {uci}; using internal search");
            }
            Err(err) => {
                log::warn!("uci engine failed ({err}); using internal search");
            }
        }
    }
    chess_internal_move(state, cfg)
}
