//! Multiple-choice question generation over rule-free boards.
//!
//! Every family is backed by one oracle, [`recompute_answer`], which maps
//! `(family, params)` to the answer text by pure matrix arithmetic. The
//! generator calls the same oracle that audits later run, so a stored item
//! can never disagree with its own board.
//!
//! Families that don't apply to a given board (asking for the winner of an
//! unfinished game, a majority on a tied board, a piece on an empty square)
//! make the oracle return `None`; generation then resamples a family, up to
//! [`MAX_FAMILY_RETRIES`] attempts, before falling back to the game's
//! always-answerable counting family.
//!
//! Option counts follow the answer space: numeric and open categorical
//! families get four options, three-valued spaces (e.g. Black/White/Empty)
//! get three, and yes/no or either/or families get two. Numeric distractors
//! are drawn from the ±3 window around the truth, clipped to the family's
//! valid range.

use crate::board::{BoardMatrix, GameKind};
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

pub const OPTION_LETTERS: [char; 4] = ['A', 'B', 'C', 'D'];
pub const MAX_FAMILY_RETRIES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QAItem {
    pub question: String,
    /// Ordered (letter, text) pairs; letters run A, B, C, D.
    pub options: Vec<(char, String)>,
    pub correct: char,
    /// Stable family tag for per-family tallies.
    pub family: String,
    /// Instantiated parameters in the order the family's oracle consumes them.
    pub params: Vec<String>,
}

impl QAItem {
    pub fn correct_text(&self) -> &str {
        self.options
            .iter()
            .find(|(l, _)| *l == self.correct)
            .map(|(_, t)| t.as_str())
            .expect("correct letter is always one of the options")
    }

    /// The question plus its lettered options, as substituted into the
    /// prompt template's `{question}` slot.
    pub fn rendered(&self) -> String {
        let mut out = self.question.clone();
        for (letter, text) in &self.options {
            out.push_str(&format!("\n{letter}) {text}"));
        }
        out
    }
}

/// How a family's options are constructed around the correct answer.
enum OptionSpace {
    /// Four options; distractors from the ±3 window, clipped to [lo, hi].
    Numeric { lo: i64, hi: i64 },
    /// Up to four options drawn from a fixed pool that contains the answer.
    Pool(Vec<String>),
    /// Exactly these two options.
    Binary(String, String),
}

pub fn generate_item(kind: GameKind, m: &BoardMatrix, rng: &mut impl Rng) -> QAItem {
    for _ in 0..MAX_FAMILY_RETRIES {
        let (family, params, question) = pick_question(kind, m, rng);
        if let Some(item) = finish_item(kind, m, rng, family, params, question) {
            return item;
        }
    }
    let (family, params, question) = fallback_question(kind);
    finish_item(kind, m, rng, family, params, question)
        .expect("fallback families are answerable on every board")
}

fn finish_item(
    kind: GameKind,
    m: &BoardMatrix,
    rng: &mut impl Rng,
    family: &'static str,
    params: Vec<String>,
    question: String,
) -> Option<QAItem> {
    let answer = recompute_answer(kind, m, family, &params)?;
    let space = option_space(kind, family, &params);
    let (options, correct) = build_options(rng, &answer, space);
    Some(QAItem { question, options, correct, family: family.to_string(), params })
}

fn build_options(
    rng: &mut impl Rng,
    answer: &str,
    space: OptionSpace,
) -> (Vec<(char, String)>, char) {
    let mut texts: Vec<String> = match space {
        OptionSpace::Numeric { lo, hi } => {
            let gt: i64 = answer.parse().expect("numeric family answers are integers");
            let (mut near, mut far): (Vec<i64>, Vec<i64>) =
                (lo..=hi).filter(|&v| v != gt).partition(|v| (v - gt).abs() <= 3);
            near.shuffle(rng);
            far.sort_by_key(|&v| ((v - gt).abs(), v));
            let mut picks: Vec<i64> = near.into_iter().take(3).collect();
            for v in far {
                if picks.len() >= 3 {
                    break;
                }
                picks.push(v);
            }
            let mut t: Vec<String> = picks.into_iter().map(|v| v.to_string()).collect();
            t.push(answer.to_string());
            t
        }
        OptionSpace::Pool(pool) => {
            let mut others: Vec<String> =
                pool.into_iter().filter(|t| t != answer).collect();
            others.shuffle(rng);
            others.truncate(3);
            others.push(answer.to_string());
            others
        }
        OptionSpace::Binary(a, b) => vec![a.to_string(), b.to_string()],
    };
    texts.shuffle(rng);
    let correct_idx = texts.iter().position(|t| t == answer).expect("answer is an option");
    let options: Vec<(char, String)> =
        texts.into_iter().enumerate().map(|(i, t)| (OPTION_LETTERS[i], t)).collect();
    (options, OPTION_LETTERS[correct_idx])
}

// Label helpers. Rows are letters from the top for TTT, Reversi,
// Minesweeper, and Sudoku; Gomoku shows row numbers and column letters;
// Chess uses files a-h and ranks counted from the bottom.

fn row_letter(r: usize) -> String {
    char::from(b'A' + r as u8).to_string()
}

fn col_number(c: usize) -> String {
    (c + 1).to_string()
}

fn gomoku_row(r: usize) -> String {
    (r + 1).to_string()
}

fn gomoku_col(c: usize) -> String {
    char::from(b'A' + c as u8).to_string()
}

fn chess_file(c: usize) -> String {
    char::from(b'a' + c as u8).to_string()
}

fn chess_rank(r: usize) -> String {
    (8 - r).to_string()
}

// Param decoding, the inverse of the helpers above.

fn p_row_letter(params: &[String], i: usize) -> Option<usize> {
    let b = params.get(i)?.as_bytes();
    (b.len() == 1 && b[0].is_ascii_uppercase()).then(|| (b[0] - b'A') as usize)
}

fn p_number(params: &[String], i: usize) -> Option<usize> {
    params.get(i)?.parse().ok()
}

fn p_str<'a>(params: &'a [String], i: usize) -> Option<&'a str> {
    params.get(i).map(|s| s.as_str())
}

fn p_chess_file(params: &[String], i: usize) -> Option<usize> {
    let b = params.get(i)?.as_bytes();
    (b.len() == 1 && (b'a'..=b'h').contains(&b[0])).then(|| (b[0] - b'a') as usize)
}

// Matrix oracles shared across games.

fn count_eq(m: &BoardMatrix, v: i8) -> i64 {
    m.count(v) as i64
}

fn count_row_eq(m: &BoardMatrix, r: usize, v: i8) -> i64 {
    m.row(r).iter().filter(|&&x| x == v).count() as i64
}

fn count_col_eq(m: &BoardMatrix, c: usize, v: i8) -> i64 {
    (0..m.rows()).filter(|&r| m.get(r, c) == v).count() as i64
}

fn count_line_eq(m: &BoardMatrix, axis: &str, idx: usize, v: i8) -> Option<i64> {
    match axis {
        "row" => (idx < m.rows()).then(|| count_row_eq(m, idx, v)),
        "column" => (idx < m.cols()).then(|| count_col_eq(m, idx, v)),
        _ => None,
    }
}

fn max_run(line: &[i8], v: i8) -> i64 {
    let mut best = 0i64;
    let mut cur = 0i64;
    for &x in line {
        if x == v {
            cur += 1;
            best = best.max(cur);
        } else {
            cur = 0;
        }
    }
    best
}

fn diag_lines(m: &BoardMatrix) -> Vec<Vec<i8>> {
    let (rows, cols) = (m.rows() as isize, m.cols() as isize);
    let mut lines = Vec::new();
    // Down-right diagonals start on the top row or left column.
    for start in 0..(rows + cols - 1) {
        let (mut r, mut c) =
            if start < cols { (0, cols - 1 - start) } else { (start - cols + 1, 0) };
        let mut line = Vec::new();
        while r < rows && c < cols {
            line.push(m.get(r as usize, c as usize));
            r += 1;
            c += 1;
        }
        lines.push(line);
    }
    // Down-left diagonals start on the top row or right column.
    for start in 0..(rows + cols - 1) {
        let (mut r, mut c) =
            if start < cols { (0, start) } else { (start - cols + 1, cols - 1) };
        let mut line = Vec::new();
        while r < rows && c >= 0 {
            line.push(m.get(r as usize, c as usize));
            r += 1;
            c -= 1;
        }
        lines.push(line);
    }
    lines
}

fn adjacent_count(m: &BoardMatrix, r: usize, c: usize, pred: impl Fn(i8) -> bool) -> i64 {
    let mut n = 0;
    for dr in -1i32..=1 {
        for dc in -1i32..=1 {
            if dr == 0 && dc == 0 {
                continue;
            }
            let (nr, nc) = (r as i32 + dr, c as i32 + dc);
            if nr >= 0
                && nc >= 0
                && (nr as usize) < m.rows()
                && (nc as usize) < m.cols()
                && pred(m.get(nr as usize, nc as usize))
            {
                n += 1;
            }
        }
    }
    n
}

fn edge_count(m: &BoardMatrix, pred: impl Fn(i8) -> bool) -> i64 {
    let mut n = 0;
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let on_edge = r == 0 || c == 0 || r == m.rows() - 1 || c == m.cols() - 1;
            if on_edge && pred(m.get(r, c)) {
                n += 1;
            }
        }
    }
    n
}

fn ttt_has_line(m: &BoardMatrix, v: i8) -> bool {
    let g = |r: usize, c: usize| m.get(r, c) == v;
    (0..3).any(|r| g(r, 0) && g(r, 1) && g(r, 2))
        || (0..3).any(|c| g(0, c) && g(1, c) && g(2, c))
        || (g(0, 0) && g(1, 1) && g(2, 2))
        || (g(0, 2) && g(1, 1) && g(2, 0))
}

fn gomoku_has_winning_line(m: &BoardMatrix) -> bool {
    for v in [1i8, 2] {
        for r in 0..m.rows() {
            if max_run(m.row(r), v) >= 5 {
                return true;
            }
        }
        for c in 0..m.cols() {
            let col: Vec<i8> = (0..m.rows()).map(|r| m.get(r, c)).collect();
            if max_run(&col, v) >= 5 {
                return true;
            }
        }
        if diag_lines(m).iter().any(|l| max_run(l, v) >= 5) {
            return true;
        }
    }
    false
}

fn sudoku_line_sum(m: &BoardMatrix, axis: &str, idx: usize) -> Option<i64> {
    match axis {
        "row" => Some(m.row(idx).iter().map(|&v| v as i64).sum()),
        "column" => Some((0..9).map(|r| m.get(r, idx) as i64).sum()),
        _ => None,
    }
}

fn subgrid_cells(m: &BoardMatrix, r0: usize, c0: usize) -> Vec<i8> {
    let mut out = Vec::with_capacity(9);
    for r in r0..r0 + 3 {
        for c in c0..c0 + 3 {
            out.push(m.get(r, c));
        }
    }
    out
}

fn stone_value(color: &str) -> Option<i8> {
    match color {
        "Black" => Some(1),
        "White" => Some(2),
        _ => None,
    }
}

const PIECE_NAMES: [&str; 6] = ["pawn", "knight", "bishop", "rook", "queen", "king"];

fn piece_code(name: &str) -> Option<i8> {
    PIECE_NAMES.iter().position(|&n| n == name).map(|i| i as i8 + 1)
}

fn piece_display(code: i8) -> &'static str {
    ["Pawn", "Knight", "Bishop", "Rook", "Queen", "King"][(code.abs() - 1) as usize]
}

/// The single ground-truth oracle: answer text for `(family, params)` on
/// `m`, or `None` when the family doesn't apply to this board.
pub fn recompute_answer(
    kind: GameKind,
    m: &BoardMatrix,
    family: &str,
    params: &[String],
) -> Option<String> {
    match kind {
        GameKind::TicTacToe => ttt_answer(m, family, params),
        GameKind::Gomoku => gomoku_answer(m, family, params),
        GameKind::Minesweeper => minesweeper_answer(m, family, params),
        GameKind::Reversi => reversi_answer(m, family, params),
        GameKind::Sudoku => sudoku_answer(m, family, params),
        GameKind::Chess => chess_answer(m, family, params),
    }
}

fn ttt_symbol_value(s: &str) -> Option<i8> {
    match s {
        "X" => Some(1),
        "O" => Some(0),
        _ => None,
    }
}

/// Mark colors as rendered: X marks are blue, O marks are red.
fn ttt_color_value(s: &str) -> Option<i8> {
    match s {
        "blue" => Some(1),
        "red" => Some(0),
        _ => None,
    }
}

fn ttt_answer(m: &BoardMatrix, family: &str, params: &[String]) -> Option<String> {
    match family {
        "symbol-at" => {
            let r = p_row_letter(params, 0)?;
            let c = p_number(params, 1)?.checked_sub(1)?;
            Some(
                match m.get(r, c) {
                    1 => "X",
                    0 => "O",
                    _ => "Empty",
                }
                .to_string(),
            )
        }
        "symbol-count" => {
            let v = ttt_symbol_value(p_str(params, 0)?)?;
            Some(count_eq(m, v).to_string())
        }
        "empty-count" => Some(count_eq(m, -1).to_string()),
        "symbol-count-line" => {
            let v = ttt_symbol_value(p_str(params, 0)?)?;
            let (axis, idx) = line_params(params, 1, m.kind())?;
            count_line_eq(m, axis, idx, v).map(|n| n.to_string())
        }
        "winner" => {
            let x = ttt_has_line(m, 1);
            let o = ttt_has_line(m, 0);
            match (x, o) {
                (true, false) => Some("X".to_string()),
                (false, true) => Some("O".to_string()),
                _ => None,
            }
        }
        "color-marks" => {
            let v = ttt_color_value(p_str(params, 0)?)?;
            if params.len() == 1 {
                return Some(count_eq(m, v).to_string());
            }
            let (axis, idx) = line_params(params, 1, m.kind())?;
            count_line_eq(m, axis, idx, v).map(|n| n.to_string())
        }
        _ => None,
    }
}

fn gomoku_answer(m: &BoardMatrix, family: &str, params: &[String]) -> Option<String> {
    match family {
        "stone-at" => {
            let r = p_number(params, 0)?.checked_sub(1)?;
            let b = p_str(params, 1)?.as_bytes();
            let c = (b.len() == 1 && b[0].is_ascii_uppercase()).then(|| (b[0] - b'A') as usize)?;
            Some(
                match m.get(r, c) {
                    1 => "Black",
                    2 => "White",
                    _ => "Empty",
                }
                .to_string(),
            )
        }
        "stone-count" => {
            let v = stone_value(p_str(params, 0)?)?;
            Some(count_eq(m, v).to_string())
        }
        "stone-count-line" => {
            let v = stone_value(p_str(params, 0)?)?;
            let (axis, idx) = line_params(params, 1, m.kind())?;
            count_line_eq(m, axis, idx, v).map(|n| n.to_string())
        }
        "winning-line" => {
            Some(if gomoku_has_winning_line(m) { "Yes" } else { "No" }.to_string())
        }
        "adjacent-stones" => {
            let r = p_number(params, 0)?.checked_sub(1)?;
            let b = p_str(params, 1)?.as_bytes();
            let c = (b.len() == 1 && b[0].is_ascii_uppercase()).then(|| (b[0] - b'A') as usize)?;
            (r < 15 && c < 15).then(|| adjacent_count(m, r, c, |v| v != 0).to_string())
        }
        "empty-count" => Some(count_eq(m, 0).to_string()),
        "max-run" => {
            let v = stone_value(p_str(params, 0)?)?;
            match p_str(params, 1)? {
                "row" => {
                    let r = p_number(params, 2)?.checked_sub(1)?;
                    (r < 15).then(|| max_run(m.row(r), v).to_string())
                }
                "diagonal" => {
                    let best =
                        diag_lines(m).iter().map(|l| max_run(l, v)).max().unwrap_or(0);
                    Some(best.to_string())
                }
                _ => None,
            }
        }
        "edge-stone-count" => {
            let v = stone_value(p_str(params, 0)?)?;
            Some(edge_count(m, |x| x == v).to_string())
        }
        _ => None,
    }
}

fn minesweeper_answer(m: &BoardMatrix, family: &str, params: &[String]) -> Option<String> {
    match family {
        "cell-symbol" => {
            let r = p_row_letter(params, 0)?;
            let c = p_number(params, 1)?.checked_sub(1)?;
            Some(match m.get(r, c) {
                -1 => "Unrevealed".to_string(),
                9 => "Mine".to_string(),
                v => v.to_string(),
            })
        }
        "revealed-mine-count" => Some(count_eq(m, 9).to_string()),
        "revealed-count" => Some((64 - count_eq(m, -1)).to_string()),
        "revealed-count-line" => {
            let (axis, idx) = line_params(params, 0, m.kind())?;
            count_line_eq(m, axis, idx, -1).map(|n| (8 - n).to_string())
        }
        "adjacent-mine-count" => {
            let r = p_row_letter(params, 0)?;
            let c = p_number(params, 1)?.checked_sub(1)?;
            (r < 8 && c < 8).then(|| adjacent_count(m, r, c, |v| v == 9).to_string())
        }
        "mine-at" => {
            let r = p_row_letter(params, 0)?;
            let c = p_number(params, 1)?.checked_sub(1)?;
            Some(if m.get(r, c) == 9 { "Yes" } else { "No" }.to_string())
        }
        _ => None,
    }
}

fn reversi_answer(m: &BoardMatrix, family: &str, params: &[String]) -> Option<String> {
    match family {
        "symbol-at" => {
            let r = p_row_letter(params, 0)?;
            let c = p_number(params, 1)?.checked_sub(1)?;
            Some(
                match m.get(r, c) {
                    1 => "Black",
                    2 => "White",
                    _ => "Empty",
                }
                .to_string(),
            )
        }
        "color-count" | "total-color-count" => {
            let v = stone_value(p_str(params, 0)?)?;
            Some(count_eq(m, v).to_string())
        }
        "empty-count" => Some(count_eq(m, 0).to_string()),
        "color-count-line" => {
            let v = stone_value(p_str(params, 0)?)?;
            let (axis, idx) = line_params(params, 1, m.kind())?;
            count_line_eq(m, axis, idx, v).map(|n| n.to_string())
        }
        "row-most" => {
            let v = stone_value(p_str(params, 0)?)?;
            let counts: Vec<i64> = (0..8).map(|r| count_row_eq(m, r, v)).collect();
            let best = *counts.iter().max()?;
            let winners: Vec<usize> =
                (0..8).filter(|&r| counts[r] == best).collect();
            (winners.len() == 1).then(|| row_letter(winners[0]))
        }
        "majority" => {
            let black = count_eq(m, 1);
            let white = count_eq(m, 2);
            match black.cmp(&white) {
                std::cmp::Ordering::Greater => Some("Black".to_string()),
                std::cmp::Ordering::Less => Some("White".to_string()),
                std::cmp::Ordering::Equal => None,
            }
        }
        "line-total" => {
            let (axis, idx) = line_params(params, 0, m.kind())?;
            count_line_eq(m, axis, idx, 0).map(|empties| (8 - empties).to_string())
        }
        _ => None,
    }
}

fn sudoku_answer(m: &BoardMatrix, family: &str, params: &[String]) -> Option<String> {
    match family {
        "number-at" => {
            let r = p_row_letter(params, 0)?;
            let c = p_number(params, 1)?.checked_sub(1)?;
            Some(match m.get(r, c) {
                0 => "Empty".to_string(),
                v => v.to_string(),
            })
        }
        "digit-count" => {
            let d = p_number(params, 0)? as i8;
            Some(count_eq(m, d).to_string())
        }
        "empty-count" => Some(count_eq(m, 0).to_string()),
        "digit-count-line" => {
            let d = p_number(params, 0)? as i8;
            let (axis, idx) = line_params(params, 1, m.kind())?;
            count_line_eq(m, axis, idx, d).map(|n| n.to_string())
        }
        "digit-count-subgrid" => {
            let d = p_number(params, 0)? as i8;
            let r0 = p_row_letter(params, 1)?;
            let c0 = p_number(params, 2)?.checked_sub(1)?;
            Some(subgrid_cells(m, r0, c0).iter().filter(|&&v| v == d).count().to_string())
        }
        "line-sum" => {
            let (axis, idx) = line_params(params, 0, m.kind())?;
            sudoku_line_sum(m, axis, idx).map(|s| s.to_string())
        }
        "subgrid-sum" => {
            let r0 = p_row_letter(params, 0)?;
            let c0 = p_number(params, 1)?.checked_sub(1)?;
            Some(subgrid_cells(m, r0, c0).iter().map(|&v| v as i64).sum::<i64>().to_string())
        }
        "contains-digit" => {
            let (axis, idx) = line_params(params, 0, m.kind())?;
            let d = p_number(params, 2)? as i8;
            let n = count_line_eq(m, axis, idx, d)?;
            Some(if n > 0 { "Yes" } else { "No" }.to_string())
        }
        "empty-count-subgrid" => {
            let r0 = p_row_letter(params, 0)?;
            let c0 = p_number(params, 1)?.checked_sub(1)?;
            Some(subgrid_cells(m, r0, c0).iter().filter(|&&v| v == 0).count().to_string())
        }
        _ => None,
    }
}

fn chess_answer(m: &BoardMatrix, family: &str, params: &[String]) -> Option<String> {
    match family {
        "piece-color-at" => {
            let c = p_chess_file(params, 0)?;
            let r = 8usize.checked_sub(p_number(params, 1)?)?;
            match m.get(r, c) {
                0 => None,
                v if v > 0 => Some("White".to_string()),
                _ => Some("Black".to_string()),
            }
        }
        "piece-name-at" => {
            let c = p_chess_file(params, 0)?;
            let r = 8usize.checked_sub(p_number(params, 1)?)?;
            match m.get(r, c) {
                0 => None,
                v => Some(piece_display(v).to_string()),
            }
        }
        "piece-count" => {
            let color = p_str(params, 0)?;
            let code = piece_code(p_str(params, 1)?)?;
            let target = match color {
                "white" => code,
                "black" => -code,
                _ => return None,
            };
            Some(count_eq(m, target).to_string())
        }
        "pieces-in-line" => match p_str(params, 0)? {
            "row" => {
                let r = 8usize.checked_sub(p_number(params, 1)?)?;
                Some(m.row(r).iter().filter(|&&v| v != 0).count().to_string())
            }
            "column" => {
                let c = p_chess_file(params, 1)?;
                Some((0..8).filter(|&r| m.get(r, c) != 0).count().to_string())
            }
            _ => None,
        },
        "color-majority" => {
            let white = m.cells().iter().filter(|&&v| v > 0).count();
            let black = m.cells().iter().filter(|&&v| v < 0).count();
            match white.cmp(&black) {
                std::cmp::Ordering::Greater => Some("White".to_string()),
                std::cmp::Ordering::Less => Some("Black".to_string()),
                std::cmp::Ordering::Equal => None,
            }
        }
        "type-comparison" => {
            let c1 = piece_code(p_str(params, 0)?)?;
            let c2 = piece_code(p_str(params, 1)?)?;
            let n1 = m.cells().iter().filter(|&&v| v.abs() == c1).count();
            let n2 = m.cells().iter().filter(|&&v| v.abs() == c2).count();
            match n1.cmp(&n2) {
                std::cmp::Ordering::Greater => Some(format!("{}s", p_str(params, 0)?)),
                std::cmp::Ordering::Less => Some(format!("{}s", p_str(params, 1)?)),
                std::cmp::Ordering::Equal => None,
            }
        }
        "edge-piece-count" => Some(edge_count(m, |v| v != 0).to_string()),
        "empty-half" => {
            let empty_in = |rows: std::ops::Range<usize>| {
                rows.map(|r| count_row_eq(m, r, 0)).sum::<i64>()
            };
            let top = empty_in(0..4);
            let bottom = empty_in(4..8);
            match top.cmp(&bottom) {
                std::cmp::Ordering::Greater => Some("Top".to_string()),
                std::cmp::Ordering::Less => Some("Bottom".to_string()),
                std::cmp::Ordering::Equal => None,
            }
        }
        _ => None,
    }
}

/// Decodes an `axis, label` pair starting at `params[i]`, returning the axis
/// name and the zero-based line index. Row labels are letters for most
/// games, numbers for Gomoku; Chess rows are ranks from the bottom and its
/// columns are files.
fn line_params(params: &[String], i: usize, kind: GameKind) -> Option<(&'static str, usize)> {
    let axis = p_str(params, i)?;
    let label = p_str(params, i + 1)?;
    let idx = match (kind, axis) {
        (GameKind::Gomoku, "row") => label.parse::<usize>().ok()?.checked_sub(1)?,
        (GameKind::Gomoku, "column") => {
            let b = label.as_bytes();
            (b.len() == 1 && b[0].is_ascii_uppercase()).then(|| (b[0] - b'A') as usize)?
        }
        (_, "row") => {
            let b = label.as_bytes();
            (b.len() == 1 && b[0].is_ascii_uppercase()).then(|| (b[0] - b'A') as usize)?
        }
        (_, "column") => label.parse::<usize>().ok()?.checked_sub(1)?,
        _ => return None,
    };
    let bound = match axis {
        "row" => kind.rows(),
        _ => kind.cols(),
    };
    (idx < bound).then_some(match axis {
        "row" => ("row", idx),
        _ => ("column", idx),
    })
}

fn option_space(kind: GameKind, family: &str, params: &[String]) -> OptionSpace {
    use OptionSpace::*;
    let binary = |a: &str, b: &str| Binary(a.to_string(), b.to_string());
    match (kind, family) {
        (GameKind::TicTacToe, "symbol-at") => {
            Pool(vec!["X".into(), "O".into(), "Empty".into()])
        }
        (GameKind::TicTacToe, "symbol-count" | "empty-count") => Numeric { lo: 0, hi: 9 },
        (GameKind::TicTacToe, "symbol-count-line") => Numeric { lo: 0, hi: 3 },
        (GameKind::TicTacToe, "winner") => binary("X", "O"),
        (GameKind::TicTacToe, "color-marks") => Numeric { lo: 0, hi: 9 },

        (GameKind::Gomoku, "stone-at") => {
            Pool(vec!["Black".into(), "White".into(), "Empty".into()])
        }
        (GameKind::Gomoku, "stone-count" | "empty-count") => Numeric { lo: 0, hi: 225 },
        (GameKind::Gomoku, "stone-count-line" | "max-run") => Numeric { lo: 0, hi: 15 },
        (GameKind::Gomoku, "winning-line") => binary("Yes", "No"),
        (GameKind::Gomoku, "adjacent-stones") => Numeric { lo: 0, hi: 8 },
        (GameKind::Gomoku, "edge-stone-count") => Numeric { lo: 0, hi: 56 },

        (GameKind::Minesweeper, "cell-symbol") => {
            let mut pool: Vec<String> = vec!["Unrevealed".into(), "Mine".into()];
            pool.extend((0..=8).map(|n: i32| n.to_string()));
            Pool(pool)
        }
        (GameKind::Minesweeper, "revealed-mine-count" | "revealed-count") => {
            Numeric { lo: 0, hi: 64 }
        }
        (GameKind::Minesweeper, "revealed-count-line" | "adjacent-mine-count") => {
            Numeric { lo: 0, hi: 8 }
        }
        (GameKind::Minesweeper, "mine-at") => binary("Yes", "No"),

        (GameKind::Reversi, "symbol-at") => {
            Pool(vec!["Black".into(), "White".into(), "Empty".into()])
        }
        (GameKind::Reversi, "color-count" | "total-color-count" | "empty-count") => {
            Numeric { lo: 0, hi: 64 }
        }
        (GameKind::Reversi, "color-count-line" | "line-total") => Numeric { lo: 0, hi: 8 },
        (GameKind::Reversi, "row-most") => {
            Pool((0..8).map(row_letter).collect())
        }
        (GameKind::Reversi, "majority") => binary("Black", "White"),

        (GameKind::Sudoku, "number-at") => {
            let mut pool: Vec<String> = vec!["Empty".into()];
            pool.extend((1..=9).map(|n: i32| n.to_string()));
            Pool(pool)
        }
        (GameKind::Sudoku, "digit-count" | "empty-count") => Numeric { lo: 0, hi: 81 },
        (GameKind::Sudoku, "digit-count-line" | "digit-count-subgrid") => {
            Numeric { lo: 0, hi: 9 }
        }
        (GameKind::Sudoku, "line-sum" | "subgrid-sum") => Numeric { lo: 0, hi: 81 },
        (GameKind::Sudoku, "contains-digit") => binary("Yes", "No"),
        (GameKind::Sudoku, "empty-count-subgrid") => Numeric { lo: 0, hi: 9 },

        (GameKind::Chess, "piece-color-at" | "color-majority") => binary("White", "Black"),
        (GameKind::Chess, "piece-name-at") => {
            Pool((1..=6).map(|c| piece_display(c).to_string()).collect())
        }
        (GameKind::Chess, "piece-count") => Numeric { lo: 0, hi: 64 },
        (GameKind::Chess, "pieces-in-line") => Numeric { lo: 0, hi: 8 },
        (GameKind::Chess, "type-comparison") => {
            Binary(format!("{}s", params[0]), format!("{}s", params[1]))
        }
        (GameKind::Chess, "edge-piece-count") => Numeric { lo: 0, hi: 28 },
        (GameKind::Chess, "empty-half") => binary("Top", "Bottom"),

        _ => unreachable!("unknown family {family} for {kind}"),
    }
}

type Picked = (&'static str, Vec<String>, String);

fn pick_question(kind: GameKind, m: &BoardMatrix, rng: &mut impl Rng) -> Picked {
    match kind {
        GameKind::TicTacToe => pick_ttt(m, rng),
        GameKind::Gomoku => pick_gomoku(m, rng),
        GameKind::Minesweeper => pick_minesweeper(m, rng),
        GameKind::Reversi => pick_reversi(m, rng),
        GameKind::Sudoku => pick_sudoku(m, rng),
        GameKind::Chess => pick_chess(m, rng),
    }
}

/// Always-answerable question used after repeated inapplicable draws.
fn fallback_question(kind: GameKind) -> Picked {
    match kind {
        GameKind::TicTacToe => {
            ("empty-count", vec![], "How many empty cells are there?".to_string())
        }
        GameKind::Gomoku | GameKind::Reversi | GameKind::Sudoku => {
            ("empty-count", vec![], "How many empty cells are there on the board?".to_string())
        }
        GameKind::Minesweeper => (
            "revealed-count",
            vec![],
            "How many revealed cells are there on the board?".to_string(),
        ),
        GameKind::Chess => (
            "edge-piece-count",
            vec![],
            "How many pieces are on the edge of the board?".to_string(),
        ),
    }
}

fn random_cell(m: &BoardMatrix, rng: &mut impl Rng) -> (usize, usize) {
    (rng.gen_range(0..m.rows()), rng.gen_range(0..m.cols()))
}

fn pick_ttt(m: &BoardMatrix, rng: &mut impl Rng) -> Picked {
    match rng.gen_range(0..6) {
        0 => {
            let (r, c) = random_cell(m, rng);
            let (rl, cn) = (row_letter(r), col_number(c));
            let q = format!("What is the symbol in row {rl}, column {cn}?");
            ("symbol-at", vec![rl, cn], q)
        }
        1 => {
            let s = *["X", "O"].choose(rng).unwrap();
            let q = format!("How many '{s}'s are present on the board?");
            ("symbol-count", vec![s.to_string()], q)
        }
        2 => ("empty-count", vec![], "How many empty cells are there?".to_string()),
        3 => {
            let s = *["X", "O"].choose(rng).unwrap();
            if rng.gen_bool(0.5) {
                let rl = row_letter(rng.gen_range(0..3));
                let q = format!("How many '{s}'s are there in row {rl}?");
                ("symbol-count-line", vec![s.to_string(), "row".to_string(), rl], q)
            } else {
                let cn = col_number(rng.gen_range(0..3));
                let q = format!("How many '{s}'s are there in column {cn}?");
                ("symbol-count-line", vec![s.to_string(), "column".to_string(), cn], q)
            }
        }
        4 => ("winner", vec![], "Did X or O win the game?".to_string()),
        _ => {
            let color = *["red", "blue"].choose(rng).unwrap();
            match rng.gen_range(0..3) {
                0 => {
                    let q = format!("How many {color} marks are present on the board?");
                    ("color-marks", vec![color.to_string()], q)
                }
                1 => {
                    let rl = row_letter(rng.gen_range(0..3));
                    let q = format!("How many {color} marks are there in row {rl}?");
                    ("color-marks", vec![color.to_string(), "row".to_string(), rl], q)
                }
                _ => {
                    let cn = col_number(rng.gen_range(0..3));
                    let q = format!("How many {color} marks are there in column {cn}?");
                    ("color-marks", vec![color.to_string(), "column".to_string(), cn], q)
                }
            }
        }
    }
}

fn pick_gomoku(m: &BoardMatrix, rng: &mut impl Rng) -> Picked {
    let color = *["Black", "White"].choose(rng).unwrap();
    match rng.gen_range(0..8) {
        0 => {
            let (r, c) = random_cell(m, rng);
            let (rl, cl) = (gomoku_row(r), gomoku_col(c));
            let q = format!("What is the stone at row {rl}, column {cl}?");
            ("stone-at", vec![rl, cl], q)
        }
        1 => {
            let q = format!("How many '{color}' stones are on the board?");
            ("stone-count", vec![color.to_string()], q)
        }
        2 => {
            if rng.gen_bool(0.5) {
                let rl = gomoku_row(rng.gen_range(0..15));
                let q = format!("How many '{color}' stones are in row {rl}?");
                ("stone-count-line", vec![color.to_string(), "row".to_string(), rl], q)
            } else {
                let cl = gomoku_col(rng.gen_range(0..15));
                let q = format!("How many '{color}' stones are in column {cl}?");
                ("stone-count-line", vec![color.to_string(), "column".to_string(), cl], q)
            }
        }
        3 => ("winning-line", vec![], "Is there a winning line on the board?".to_string()),
        4 => {
            let (r, c) = random_cell(m, rng);
            let (rl, cl) = (gomoku_row(r), gomoku_col(c));
            let q = format!("How many adjacent stones are around row {rl}, column {cl}?");
            ("adjacent-stones", vec![rl, cl], q)
        }
        5 => ("empty-count", vec![], "How many empty cells are there on the board?".to_string()),
        6 => {
            if rng.gen_bool(0.5) {
                let rl = gomoku_row(rng.gen_range(0..15));
                let q = format!(
                    "What is the maximum number of consecutive '{color}' stones in row {rl}?"
                );
                ("max-run", vec![color.to_string(), "row".to_string(), rl], q)
            } else {
                let q = format!(
                    "What is the maximum number of consecutive '{color}' stones on any diagonal?"
                );
                ("max-run", vec![color.to_string(), "diagonal".to_string()], q)
            }
        }
        _ => {
            let q = format!("How many '{color}' stones are on the edge of the board?");
            ("edge-stone-count", vec![color.to_string()], q)
        }
    }
}

fn pick_minesweeper(m: &BoardMatrix, rng: &mut impl Rng) -> Picked {
    match rng.gen_range(0..6) {
        0 => {
            let (r, c) = random_cell(m, rng);
            let (rl, cn) = (row_letter(r), col_number(c));
            let q = format!("What is the revealed number or symbol in row {rl}, column {cn}?");
            ("cell-symbol", vec![rl, cn], q)
        }
        1 => (
            "revealed-mine-count",
            vec![],
            "How many revealed mines are there on the board?".to_string(),
        ),
        2 => (
            "revealed-count",
            vec![],
            "How many revealed cells are there on the board?".to_string(),
        ),
        3 => {
            if rng.gen_bool(0.5) {
                let rl = row_letter(rng.gen_range(0..8));
                let q = format!("How many revealed cells are there in row {rl}?");
                ("revealed-count-line", vec!["row".to_string(), rl], q)
            } else {
                let cn = col_number(rng.gen_range(0..8));
                let q = format!("How many revealed cells are there in column {cn}?");
                ("revealed-count-line", vec!["column".to_string(), cn], q)
            }
        }
        4 => {
            let (r, c) = random_cell(m, rng);
            let (rl, cn) = (row_letter(r), col_number(c));
            let q = format!("How many mines are adjacent to the cell at row {rl}, column {cn}?");
            ("adjacent-mine-count", vec![rl, cn], q)
        }
        _ => {
            let (r, c) = random_cell(m, rng);
            let (rl, cn) = (row_letter(r), col_number(c));
            let q = format!("Is there a revealed mine at row {rl}, column {cn}?");
            ("mine-at", vec![rl, cn], q)
        }
    }
}

fn pick_reversi(m: &BoardMatrix, rng: &mut impl Rng) -> Picked {
    let color = *["Black", "White"].choose(rng).unwrap();
    match rng.gen_range(0..8) {
        0 => {
            let (r, c) = random_cell(m, rng);
            let (rl, cn) = (row_letter(r), col_number(c));
            let q = format!("What is the symbol in row {rl}, column {cn}?");
            ("symbol-at", vec![rl, cn], q)
        }
        1 => {
            let q = format!("How many '{color}' pieces are present on the board?");
            ("color-count", vec![color.to_string()], q)
        }
        2 => ("empty-count", vec![], "How many empty cells are there on the board?".to_string()),
        3 => {
            if rng.gen_bool(0.5) {
                let rl = row_letter(rng.gen_range(0..8));
                let q = format!("How many '{color}' pieces are there in row {rl}?");
                ("color-count-line", vec![color.to_string(), "row".to_string(), rl], q)
            } else {
                let cn = col_number(rng.gen_range(0..8));
                let q = format!("How many '{color}' pieces are there in column {cn}?");
                ("color-count-line", vec![color.to_string(), "column".to_string(), cn], q)
            }
        }
        4 => {
            let q = format!("Which row contains the most '{color}' pieces?");
            ("row-most", vec![color.to_string()], q)
        }
        5 => (
            "majority",
            vec![],
            "Which player has more pieces on the board, 'Black' or 'White'?".to_string(),
        ),
        6 => {
            if rng.gen_bool(0.5) {
                let rl = row_letter(rng.gen_range(0..8));
                let q = format!("How many pieces are there in total in row {rl}?");
                ("line-total", vec!["row".to_string(), rl], q)
            } else {
                let cn = col_number(rng.gen_range(0..8));
                let q = format!("How many pieces are there in total in column {cn}?");
                ("line-total", vec!["column".to_string(), cn], q)
            }
        }
        _ => {
            let q = format!("How many '{color}' pieces are there in total on the board?");
            ("total-color-count", vec![color.to_string()], q)
        }
    }
}

fn pick_sudoku(m: &BoardMatrix, rng: &mut impl Rng) -> Picked {
    let digit = rng.gen_range(1..=9usize).to_string();
    let sub_r = row_letter(3 * rng.gen_range(0..3));
    let sub_c = col_number(3 * rng.gen_range(0..3));
    match rng.gen_range(0..9) {
        0 => {
            let (r, c) = random_cell(m, rng);
            let (rl, cn) = (row_letter(r), col_number(c));
            let q = format!("What is the number in row {rl}, column {cn}?");
            ("number-at", vec![rl, cn], q)
        }
        1 => {
            let q = format!("How many '{digit}'s are present on the board?");
            ("digit-count", vec![digit], q)
        }
        2 => ("empty-count", vec![], "How many empty cells are there on the board?".to_string()),
        3 => {
            if rng.gen_bool(0.5) {
                let rl = row_letter(rng.gen_range(0..9));
                let q = format!("How many '{digit}'s are there in row {rl}?");
                ("digit-count-line", vec![digit, "row".to_string(), rl], q)
            } else {
                let cn = col_number(rng.gen_range(0..9));
                let q = format!("How many '{digit}'s are there in column {cn}?");
                ("digit-count-line", vec![digit, "column".to_string(), cn], q)
            }
        }
        4 => {
            let q = format!(
                "How many '{digit}'s are there in the subgrid starting at row {sub_r}, column {sub_c}?"
            );
            ("digit-count-subgrid", vec![digit, sub_r, sub_c], q)
        }
        5 => {
            if rng.gen_bool(0.5) {
                let rl = row_letter(rng.gen_range(0..9));
                let q = format!("What is the sum of numbers in row {rl}?");
                ("line-sum", vec!["row".to_string(), rl], q)
            } else {
                let cn = col_number(rng.gen_range(0..9));
                let q = format!("What is the sum of numbers in column {cn}?");
                ("line-sum", vec!["column".to_string(), cn], q)
            }
        }
        6 => {
            let q = format!(
                "What is the sum of numbers in the subgrid starting at row {sub_r}, column {sub_c}?"
            );
            ("subgrid-sum", vec![sub_r, sub_c], q)
        }
        7 => {
            if rng.gen_bool(0.5) {
                let rl = row_letter(rng.gen_range(0..9));
                let q = format!("Does row {rl} contain the number '{digit}'?");
                ("contains-digit", vec!["row".to_string(), rl, digit], q)
            } else {
                let cn = col_number(rng.gen_range(0..9));
                let q = format!("Does column {cn} contain the number '{digit}'?");
                ("contains-digit", vec!["column".to_string(), cn, digit], q)
            }
        }
        _ => {
            let q = format!(
                "How many empty cells are there in the subgrid starting at row {sub_r}, column {sub_c}?"
            );
            ("empty-count-subgrid", vec![sub_r, sub_c], q)
        }
    }
}

fn pick_chess(m: &BoardMatrix, rng: &mut impl Rng) -> Picked {
    match rng.gen_range(0..8) {
        0 | 1 => {
            // Position questions target an occupied square when one exists;
            // the oracle still rejects the (empty-board) leftovers.
            let occupied: Vec<(usize, usize)> = (0..8)
                .flat_map(|r| (0..8).map(move |c| (r, c)))
                .filter(|&(r, c)| m.get(r, c) != 0)
                .collect();
            let (r, c) = *occupied.choose(rng).unwrap_or(&(0, 0));
            let (f, k) = (chess_file(c), chess_rank(r));
            if rng.gen_bool(0.5) {
                let q = format!("What is the color of the piece at column {f}, row {k}?");
                ("piece-color-at", vec![f, k], q)
            } else {
                let q = format!("What is the piece at column {f}, row {k}?");
                ("piece-name-at", vec![f, k], q)
            }
        }
        2 => {
            let color = *["white", "black"].choose(rng).unwrap();
            let piece = *PIECE_NAMES.choose(rng).unwrap();
            let q = format!("How many {color} {piece}s are on the board?");
            ("piece-count", vec![color.to_string(), piece.to_string()], q)
        }
        3 => {
            if rng.gen_bool(0.5) {
                let k = chess_rank(rng.gen_range(0..8));
                let q = format!("How many pieces are in row {k}?");
                ("pieces-in-line", vec!["row".to_string(), k], q)
            } else {
                let f = chess_file(rng.gen_range(0..8));
                let q = format!("How many pieces are in column {f}?");
                ("pieces-in-line", vec!["column".to_string(), f], q)
            }
        }
        4 => (
            "color-majority",
            vec![],
            "Which color has more pieces, white or black?".to_string(),
        ),
        5 => {
            let mut names = PIECE_NAMES;
            names.shuffle(rng);
            let (p1, p2) = (names[0], names[1]);
            let q = format!("Which has more, {p1}s or {p2}s?");
            ("type-comparison", vec![p1.to_string(), p2.to_string()], q)
        }
        6 => (
            "edge-piece-count",
            vec![],
            "How many pieces are on the edge of the board?".to_string(),
        ),
        _ => (
            "empty-half",
            vec![],
            "Which half of the board has more empty cells, top or bottom?".to_string(),
        ),
    }
}
