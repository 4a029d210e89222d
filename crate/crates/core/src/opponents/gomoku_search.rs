//! Shallow alpha-beta Gomoku opponent with a line-pattern evaluation.
//! Candidate moves are restricted to empty intersections within Chebyshev
//! distance 2 of an existing stone; on an empty board it opens at the
//! center (H8).

use super::{GomokuWeights, SearchConfig};
use crate::board::{CellCoord, GameKind};
use crate::engines::gomoku::{stone_for, GomokuState, BLACK, EMPTY, SIZE, WHITE};
use crate::engines::{MoveSpec, Outcome, Side};

const WIN: i64 = 1_000_000_000;

/// Pattern score for one color: every maximal run is classified by length
/// and the number of open (empty, in-bounds) ends.
fn score_for(state: &GomokuState, stone: u8, w: &GomokuWeights) -> i64 {
    let mut total = 0i64;
    let in_bounds = |r: i32, c: i32| (0..SIZE as i32).contains(&r) && (0..SIZE as i32).contains(&c);
    let cell = |r: i32, c: i32| -> u8 {
        if in_bounds(r, c) {
            state.get(r as usize, c as usize)
        } else {
            // Off-board counts as a closed end.
            u8::MAX
        }
    };
    for r in 0..SIZE as i32 {
        for c in 0..SIZE as i32 {
            if cell(r, c) != stone {
                continue;
            }
            for (dr, dc) in [(0i32, 1i32), (1, 0), (1, 1), (1, -1)] {
                if cell(r - dr, c - dc) == stone {
                    continue; // not the first stone of the run
                }
                let mut len = 0i32;
                let (mut rr, mut cc) = (r, c);
                while cell(rr, cc) == stone {
                    len += 1;
                    rr += dr;
                    cc += dc;
                }
                let open_head = cell(r - dr, c - dc) == EMPTY;
                let open_tail = cell(rr, cc) == EMPTY;
                let open = open_head as u32 + open_tail as u32;
                total += match (len, open) {
                    (l, _) if l >= 5 => w.five,
                    (4, 2) => w.open_four,
                    (4, 1) => w.closed_four,
                    (3, 2) => w.open_three,
                    (3, 1) => w.closed_three,
                    (2, 2) => w.open_two,
                    _ => 0,
                };
            }
        }
    }
    total
}

fn eval(state: &GomokuState, root: Side, w: &GomokuWeights) -> i64 {
    let own = stone_for(root);
    let opp = if own == BLACK { WHITE } else { BLACK };
    score_for(state, own, w) - score_for(state, opp, w)
}

/// Empty cells within Chebyshev distance 2 of any stone, row-major.
fn candidates(state: &GomokuState) -> Vec<CellCoord> {
    let mut near = vec![false; SIZE * SIZE];
    let mut any_stone = false;
    for r in 0..SIZE {
        for c in 0..SIZE {
            if state.get(r, c) == EMPTY {
                continue;
            }
            any_stone = true;
            for dr in -2i32..=2 {
                for dc in -2i32..=2 {
                    let (rr, cc) = (r as i32 + dr, c as i32 + dc);
                    if (0..SIZE as i32).contains(&rr) && (0..SIZE as i32).contains(&cc) {
                        near[(rr * SIZE as i32 + cc) as usize] = true;
                    }
                }
            }
        }
    }
    if !any_stone {
        return vec![CellCoord::new(GameKind::Gomoku, SIZE / 2, SIZE / 2)];
    }
    (0..SIZE * SIZE)
        .filter(|&i| near[i] && state.get(i / SIZE, i % SIZE) == EMPTY)
        .map(|i| CellCoord::new(GameKind::Gomoku, i / SIZE, i % SIZE))
        .collect()
}

fn search(
    state: &GomokuState,
    depth: u32,
    mut alpha: i64,
    mut beta: i64,
    root: Side,
    w: &GomokuWeights,
) -> i64 {
    match state.outcome() {
        Outcome::Win(s) => return if s == root { WIN } else { -WIN },
        Outcome::Tie => return 0,
        _ => {}
    }
    if depth == 0 {
        return eval(state, root, w);
    }
    let maximizing = state.to_move == root;
    let mut best = if maximizing { i64::MIN } else { i64::MAX };
    for coord in candidates(state) {
        let next = state.apply(&MoveSpec::cell(coord)).expect("candidate is empty");
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

/// Best candidate for the side to move; ties go to the first cell in
/// row-major order, and an empty board yields the center.
pub fn gomoku_search_move(state: &GomokuState, cfg: &SearchConfig) -> MoveSpec {
    let cands = candidates(state);
    let w = &cfg.gomoku_weights;
    let root = state.to_move;
    let depth = cfg.gomoku_depth.max(1);
    let mut best_mv = MoveSpec::cell(cands[0]);
    let mut best = i64::MIN;
    for coord in cands {
        let mv = MoveSpec::cell(coord);
        let next = state.apply(&mv).expect("candidate is empty");
        let v = search(&next, depth - 1, i64::MIN, i64::MAX, root, w);
        if v > best {
            best = v;
            best_mv = mv;
        }
    }
    best_mv
}
