//! Answer extraction from free-form model text, and all scoring.
//!
//! Models restate instructions, wrap output in code fences, and decorate
//! answers with prose, so every parser here is deliberately tolerant about
//! everything except the substance: a matrix must have exactly the board's
//! dimensions and alphabet, an answer must be a single option letter, a move
//! must resolve to a real action. Markers are matched case-insensitively and
//! the LAST occurrence wins, because the most common failure mode is echoing
//! the prompt template (marker included) before the actual answer.
//!
//! Anything that cannot be extracted is an [`ParseStatus::InvalidFormat`]
//! response, which scores zero — there is no partial credit for unreadable
//! output.

use crate::board::{label_to_coord, BoardMatrix, CellCoord, GameKind};
use crate::engines::{GameState, MoveSpec, Outcome, Side};
use crate::tasks::qa::QAItem;
use crate::tasks::TaskKind;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ParseStatus {
    Ok,
    InvalidFormat,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ResponsePayload {
    Matrix(BoardMatrix),
    Answer(char),
    Move(MoveSpec),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ParsedResponse {
    pub raw: String,
    pub status: ParseStatus,
    pub payload: Option<ResponsePayload>,
}

impl ParsedResponse {
    fn ok(raw: &str, payload: ResponsePayload) -> ParsedResponse {
        ParsedResponse { raw: raw.to_string(), status: ParseStatus::Ok, payload: Some(payload) }
    }

    fn invalid(raw: &str) -> ParsedResponse {
        ParsedResponse { raw: raw.to_string(), status: ParseStatus::InvalidFormat, payload: None }
    }

    pub fn is_ok(&self) -> bool {
        self.status == ParseStatus::Ok
    }

    pub fn matrix(&self) -> Option<&BoardMatrix> {
        match &self.payload {
            Some(ResponsePayload::Matrix(m)) => Some(m),
            _ => None,
        }
    }

    pub fn answer(&self) -> Option<char> {
        match &self.payload {
            Some(ResponsePayload::Answer(c)) => Some(*c),
            _ => None,
        }
    }

    pub fn move_spec(&self) -> Option<&MoveSpec> {
        match &self.payload {
            Some(ResponsePayload::Move(mv)) => Some(mv),
            _ => None,
        }
    }
}

/// Marker-search view of the text: ASCII-lowercased with backticks blanked.
/// Both transforms preserve byte positions, so offsets found here index the
/// original text directly (needed to keep the case of SAN moves and the
/// wording of transcript sections).
fn fold(text: &str) -> String {
    let mut s = text.replace('`', " ");
    s.make_ascii_lowercase();
    s
}

fn is_gap(text: &str) -> bool {
    text.chars().all(|c| c.is_whitespace() || matches!(c, ',' | ';' | '[' | ']'))
}

fn parse_ints(seg: &str) -> Option<Vec<i64>> {
    let mut out = Vec::new();
    for token in seg.split(|c: char| c.is_whitespace() || c == ',' || c == ';') {
        if token.is_empty() {
            continue;
        }
        out.push(token.parse::<i64>().ok()?);
    }
    Some(out)
}

/// Innermost bracketed integer rows with their byte spans, in order.
fn bracket_rows(s: &str) -> Vec<(usize, usize, Vec<i64>)> {
    let bytes = s.as_bytes();
    let mut rows = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i] == b'[' {
            let rest = &s[i + 1..];
            let close = rest.find(']');
            let open = rest.find('[');
            if let (Some(c), true) = (close, open.map_or(true, |o| close.unwrap() < o)) {
                if let Some(ints) = parse_ints(&rest[..c]) {
                    if !ints.is_empty() {
                        rows.push((i, i + 1 + c + 1, ints));
                    }
                }
                i = i + 1 + close.unwrap() + 1;
                continue;
            }
        }
        i += 1;
    }
    rows
}

/// Group rows into maximal runs separated only by list punctuation, then
/// return the LAST run whose shape is exactly `rows x cols`.
fn last_exact_run(
    spans: &[(usize, usize, Vec<i64>)],
    s: &str,
    rows: usize,
    cols: usize,
) -> Option<Vec<Vec<i64>>> {
    let mut runs: Vec<Vec<&Vec<i64>>> = Vec::new();
    for (i, (start, _end, ints)) in spans.iter().enumerate() {
        let contiguous = i > 0 && is_gap(&s[spans[i - 1].1..*start]);
        if contiguous {
            runs.last_mut().unwrap().push(ints);
        } else {
            runs.push(vec![ints]);
        }
    }
    runs.into_iter()
        .rev()
        .find(|run| run.len() == rows && run.iter().all(|r| r.len() == cols))
        .map(|run| run.into_iter().cloned().collect())
}

/// Fallback for matrices written as bare number lines without brackets.
fn line_runs(s: &str, rows: usize, cols: usize) -> Option<Vec<Vec<i64>>> {
    let mut runs: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
    for line in s.lines() {
        match parse_ints(line) {
            Some(ints) if !ints.is_empty() => runs.last_mut().unwrap().push(ints),
            _ => {
                if !runs.last().unwrap().is_empty() {
                    runs.push(Vec::new());
                }
            }
        }
    }
    runs.into_iter()
        .rev()
        .find(|run| run.len() == rows && run.iter().all(|r| r.len() == cols))
}

pub fn parse_matrix(text: &str, kind: GameKind) -> ParsedResponse {
    // Numbers are all that survives extraction, so this copy may also fold
    // Unicode minus/dash variants without worrying about byte offsets.
    let s = fold(text).replace(['\u{2212}', '\u{2013}', '\u{2014}'], "-");
    let slice = match s.rfind("game state") {
        Some(i) => &s[i + "game state".len()..],
        None => &s[..],
    };
    let rows = bracket_rows(slice);
    let grid = last_exact_run(&rows, slice, kind.rows(), kind.cols())
        .or_else(|| line_runs(slice, kind.rows(), kind.cols()));
    let Some(grid) = grid else {
        return ParsedResponse::invalid(text);
    };
    let mut cells = Vec::with_capacity(kind.cell_count());
    for row in grid {
        for v in row {
            let Ok(v) = i8::try_from(v) else {
                return ParsedResponse::invalid(text);
            };
            cells.push(v);
        }
    }
    match BoardMatrix::from_flat(kind, cells) {
        Ok(m) => ParsedResponse::ok(text, ResponsePayload::Matrix(m)),
        Err(_) => ParsedResponse::invalid(text),
    }
}

/// Thin matrix-only view of [`parse_matrix`], the inverse of
/// [`crate::board::matrix_to_text`] on well-formed input.
pub fn text_to_matrix(text: &str, kind: GameKind) -> Option<BoardMatrix> {
    parse_matrix(text, kind).matrix().cloned()
}

fn first_option_letter(s: &str) -> Option<char> {
    let mut token_len = 0usize;
    let mut letter = ' ';
    for c in s.chars().chain(std::iter::once(' ')) {
        if c.is_ascii_alphanumeric() {
            token_len += 1;
            letter = c;
        } else if token_len > 0 {
            if token_len == 1 && matches!(letter, 'a'..='d') {
                return Some(letter.to_ascii_uppercase());
            }
            token_len = 0;
        }
    }
    None
}

pub fn parse_answer(text: &str) -> ParsedResponse {
    let s = fold(text);
    if let Some(i) = s.rfind("answer") {
        if let Some(letter) = first_option_letter(&s[i + "answer".len()..]) {
            return ParsedResponse::ok(text, ResponsePayload::Answer(letter));
        }
    }
    for line in s.lines().rev() {
        let cleaned: Vec<char> = line.chars().filter(|c| c.is_ascii_alphanumeric()).collect();
        if let [letter @ 'a'..='d'] = cleaned[..] {
            return ParsedResponse::ok(
                text,
                ResponsePayload::Answer(letter.to_ascii_uppercase()),
            );
        }
    }
    ParsedResponse::invalid(text)
}

/// Byte offset just past the last standalone occurrence of `word`.
fn after_last_word(s: &str, word: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    let mut best = None;
    let mut from = 0;
    while let Some(pos) = s[from..].find(word) {
        let start = from + pos;
        let end = start + word.len();
        let left_ok = start == 0 || !bytes[start - 1].is_ascii_alphabetic();
        let right_ok = end == s.len() || !bytes[end].is_ascii_alphabetic();
        if left_ok && right_ok {
            best = Some(end);
        }
        from = start + 1;
    }
    best
}

fn alnum_runs(line: &str) -> Vec<&str> {
    line.split(|c: char| !c.is_ascii_alphanumeric()).filter(|t| !t.is_empty()).collect()
}

fn cell_from_line(kind: GameKind, line: &str) -> Option<CellCoord> {
    if let Ok(c) = label_to_coord(kind, line) {
        return Some(c);
    }
    let runs = alnum_runs(line);
    for (i, run) in runs.iter().enumerate() {
        if let Ok(c) = label_to_coord(kind, run) {
            return Some(c);
        }
        if let Some(next) = runs.get(i + 1) {
            if let Ok(c) = label_to_coord(kind, &format!("{run}{next}")) {
                return Some(c);
            }
        }
    }
    None
}

fn sudoku_move_from_line(line: &str) -> Option<MoveSpec> {
    let digit_ok = |s: &str| s.len() == 1 && s.as_bytes()[0].is_ascii_digit() && s != "0";
    let runs = alnum_runs(line);
    for (i, run) in runs.iter().enumerate() {
        // "A1 5" — a complete label followed by the digit.
        if let Ok(cell) = label_to_coord(GameKind::Sudoku, run) {
            if let Some(d) = runs.get(i + 1).filter(|d| digit_ok(d)) {
                return Some(MoveSpec::cell_digit(cell, d.as_bytes()[0] - b'0'));
            }
        }
        // "A 1 5" — letter, column, digit as separate tokens.
        if run.len() == 1 && run.as_bytes()[0].is_ascii_alphabetic() {
            if let (Some(col), Some(d)) = (runs.get(i + 1), runs.get(i + 2)) {
                if digit_ok(col) && digit_ok(d) {
                    if let Ok(cell) = label_to_coord(GameKind::Sudoku, &format!("{run}{col}")) {
                        return Some(MoveSpec::cell_digit(cell, d.as_bytes()[0] - b'0'));
                    }
                }
            }
        }
        // "A15" — label and digit fused into one token.
        let b = run.as_bytes();
        if b.len() == 3 && b[0].is_ascii_alphabetic() && b[1].is_ascii_digit() && b[2].is_ascii_digit()
        {
            if let Ok(cell) = label_to_coord(GameKind::Sudoku, &run[..2]) {
                if b[2] != b'0' {
                    return Some(MoveSpec::cell_digit(cell, b[2] - b'0'));
                }
            }
        }
    }
    None
}

fn san_shaped(token: &str) -> Option<String> {
    let t = token.trim_matches(|c: char| {
        !(c.is_ascii_alphanumeric() || matches!(c, '-' | '=' | '+' | '#'))
    });
    let core = t.trim_end_matches(['+', '#', '!', '?', '.']);
    if core.is_empty() || core.len() > 8 {
        return None;
    }
    let castle = core.to_ascii_uppercase().replace('0', "O");
    if matches!(castle.as_str(), "O-O" | "O-O-O") {
        return Some(t.to_string());
    }
    let mut body = core;
    if let Some((head, promo)) = core.split_once('=') {
        if !matches!(promo.to_ascii_uppercase().as_str(), "Q" | "R" | "B" | "N") {
            return None;
        }
        body = head;
    } else if core.len() >= 3 && matches!(core.as_bytes()[core.len() - 1], b'Q' | b'R' | b'N') {
        // Promotion without the '=': "e8Q".
        body = &core[..core.len() - 1];
    }
    let c: Vec<char> = body.chars().collect();
    if c.len() < 2 {
        return None;
    }
    let n = c.len();
    if !(('a'..='h').contains(&c[n - 2]) && ('1'..='8').contains(&c[n - 1])) {
        return None;
    }
    let mut i = 0;
    if matches!(c[0], 'K' | 'Q' | 'R' | 'B' | 'N') {
        i = 1;
    }
    let file = |ch: &char| ('a'..='h').contains(ch);
    let rank = |ch: &char| ('1'..='8').contains(ch);
    let ok = match &c[i..n - 2] {
        [] => true,
        ['x'] => true,
        [d] => file(d) || rank(d),
        [d, 'x'] => file(d) || rank(d),
        [f, r] => file(f) && rank(r),
        [f, r, 'x'] => file(f) && rank(r),
        _ => false,
    };
    ok.then(|| t.to_string())
}

fn chess_move_from_line(line: &str) -> Option<MoveSpec> {
    line.split_whitespace().find_map(san_shaped).map(MoveSpec::san)
}

fn move_from_line(kind: GameKind, line: &str) -> Option<MoveSpec> {
    match kind {
        GameKind::Sudoku => sudoku_move_from_line(line),
        GameKind::Chess => chess_move_from_line(line),
        _ => cell_from_line(kind, line).map(MoveSpec::cell),
    }
}

pub fn parse_move(text: &str, kind: GameKind) -> ParsedResponse {
    let s = fold(text);
    let marker = after_last_word(&s, "movement").or_else(|| after_last_word(&s, "move"));
    let found = match marker {
        Some(end) => {
            let rest = text[end..].trim_start_matches([':', '*', ' ', '\t']);
            rest.lines().next().and_then(|line| move_from_line(kind, line))
        }
        // No marker at all: accept a bare move, preferring the last line
        // that contains one.
        None => text.lines().rev().find_map(|line| move_from_line(kind, line)),
    };
    match found {
        Some(mv) => ParsedResponse::ok(text, ResponsePayload::Move(mv)),
        None => ParsedResponse::invalid(text),
    }
}

const SECTION_MARKERS: [&str; 3] = ["observation", "strategy", "movement"];

/// The span following the last `marker` line-label, up to the next section
/// marker. Used to keep Observation/Strategy prose in E2E transcripts even
/// when the movement itself fails to parse.
pub fn extract_section(text: &str, marker: &str) -> Option<String> {
    let s = fold(text);
    let start = after_last_word(&s, &marker.to_ascii_lowercase())?;
    let tail = &s[start..];
    let mut end = tail.len();
    for m in SECTION_MARKERS {
        if m.eq_ignore_ascii_case(marker) {
            continue;
        }
        if let Some(pos) = tail.find(m) {
            end = end.min(pos);
        }
    }
    let span = text[start..start + end].trim_matches([':', '*', ' ', '\t', '\n', '\r']);
    (!span.is_empty()).then(|| span.to_string())
}

pub fn score_perceiving(parsed: &ParsedResponse, gt: &BoardMatrix) -> f64 {
    let Some(p) = parsed.matrix() else {
        return 0.0;
    };
    if p.kind() != gt.kind() {
        return 0.0;
    }
    let hits = p.cells().iter().zip(gt.cells()).filter(|(a, b)| a == b).count();
    hits as f64 / gt.cells().len() as f64
}

pub fn score_qa(parsed: &ParsedResponse, item: &QAItem) -> u32 {
    u32::from(parsed.answer() == Some(item.correct))
}

pub fn validate_rule_move(parsed: &ParsedResponse, state: &GameState) -> bool {
    match parsed.move_spec() {
        Some(mv) => state.is_legal(mv),
        None => false,
    }
}

/// Final-position counters feeding [`score_e2e`]. `moves` counts the
/// evaluated player's own applied moves; the other fields are read off the
/// terminal state of the games they apply to.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct E2EStats {
    pub moves: u32,
    pub filled: u32,
    pub correct: u32,
    pub black_discs: u32,
    pub revealed_safe: u32,
    pub captured_value: u32,
}

/// Playing score for a finished session. The evaluated model always sits as
/// [`Side::First`], so a forfeit is recorded as `Loss(First)` and earns no
/// outcome bonus.
pub fn score_e2e(kind: GameKind, stats: &E2EStats, outcome: Outcome) -> f64 {
    debug_assert!(outcome.is_terminal(), "scoring requires a finished session");
    let win = outcome == Outcome::Win(Side::First) || outcome == Outcome::Loss(Side::Second);
    let tie = outcome == Outcome::Tie;
    let moves = 10.0 * stats.moves as f64;
    let bonus = |w: f64, t: f64| if win { w } else if tie { t } else { 0.0 };
    match kind {
        GameKind::TicTacToe => moves + bonus(50.0, 20.0),
        GameKind::Sudoku => {
            2.0 * stats.filled as f64 + 10.0 * stats.correct as f64 + bonus(1000.0, 0.0)
        }
        GameKind::Reversi => moves + 20.0 * stats.black_discs as f64 + bonus(1000.0, 500.0),
        GameKind::Minesweeper => moves + 2.0 * stats.revealed_safe as f64 + bonus(1000.0, 0.0),
        GameKind::Gomoku => moves + bonus(1000.0, 500.0),
        GameKind::Chess => moves + 5.0 * stats.captured_value as f64 + bonus(1000.0, 500.0),
    }
}

/// Largest score the formulas permit, from per-game move-count ceilings:
/// the first player fills at most half the board (rounded up) in placement
/// games, reveals at most the 54 safe cells in Minesweeper, fills at most
/// all 81 cells in Sudoku, and plays at most 5899 white moves in a chess
/// game capped by the fifty-move rule. Used to bring playing scores onto a
/// 0-1 scale for cross-task aggregation.
pub fn e2e_max_score(kind: GameKind) -> f64 {
    let max_stats = match kind {
        GameKind::TicTacToe => E2EStats { moves: 5, ..E2EStats::default() },
        GameKind::Sudoku => E2EStats { moves: 81, filled: 81, correct: 81, ..E2EStats::default() },
        GameKind::Reversi => E2EStats { moves: 60, black_discs: 64, ..E2EStats::default() },
        GameKind::Minesweeper => {
            E2EStats { moves: 54, revealed_safe: 54, ..E2EStats::default() }
        }
        GameKind::Gomoku => E2EStats { moves: 113, ..E2EStats::default() },
        GameKind::Chess => E2EStats { moves: 5899, captured_value: 39, ..E2EStats::default() },
    };
    score_e2e(kind, &max_stats, Outcome::Win(Side::First))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Ability {
    Perception,
    Reasoning,
    Decision,
    Adversary,
}

impl TaskKind {
    /// The abilities a task exercises; game weights for aggregation are the
    /// mean star rating over this set.
    pub fn abilities(self) -> &'static [Ability] {
        match self {
            TaskKind::Perceiving => &[Ability::Perception],
            TaskKind::QA => &[Ability::Perception, Ability::Reasoning],
            TaskKind::RuleFollowing => {
                &[Ability::Perception, Ability::Reasoning, Ability::Decision]
            }
            TaskKind::EndToEnd => &[
                Ability::Perception,
                Ability::Reasoning,
                Ability::Decision,
                Ability::Adversary,
            ],
        }
    }
}

/// A game's 0.5-5.0 star ratings; `None` marks abilities that do not apply
/// (no adversary in the single-player games).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AbilityStars {
    pub perception: f64,
    pub reasoning: Option<f64>,
    pub decision: Option<f64>,
    pub adversary: Option<f64>,
}

impl AbilityStars {
    pub fn get(&self, ability: Ability) -> Option<f64> {
        match ability {
            Ability::Perception => Some(self.perception),
            Ability::Reasoning => self.reasoning,
            Ability::Decision => self.decision,
            Ability::Adversary => self.adversary,
        }
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
#[error("no {task} score for {game}")]
pub struct MissingScore {
    pub game: GameKind,
    pub task: TaskKind,
}

/// Star-weighted mean of per-game scores:
/// `sum(weight_g * score_g) / sum(weight_g)` where a game's weight is the
/// mean of its star ratings over the task's ability set, applicable
/// abilities only. Playing scores must be normalized before aggregation
/// (see [`e2e_max_score`]).
pub fn aggregate_overall(
    task: TaskKind,
    per_game: &BTreeMap<GameKind, f64>,
    stars: &BTreeMap<GameKind, AbilityStars>,
) -> Result<f64, MissingScore> {
    let mut num = 0.0;
    let mut den = 0.0;
    for (&game, rating) in stars {
        let score = *per_game.get(&game).ok_or(MissingScore { game, task })?;
        let applicable: Vec<f64> =
            task.abilities().iter().filter_map(|&a| rating.get(a)).collect();
        if applicable.is_empty() {
            continue;
        }
        let weight = applicable.iter().sum::<f64>() / applicable.len() as f64;
        num += weight * score;
        den += weight;
    }
    Ok(num / den)
}

/// One reported row: a (game, task) pair's sample count, aggregate score,
/// and per-family or per-outcome tallies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TaskMetrics {
    pub kind: GameKind,
    pub task: TaskKind,
    pub n_samples: usize,
    pub score: f64,
    pub breakdown: BTreeMap<String, f64>,
}
