//! Shared board vocabulary: game identifiers, integer board matrices, cell
//! coordinates and their human-readable labels, and the seed type that makes
//! every downstream artifact reproducible.

use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GameKind {
    TicTacToe,
    Reversi,
    Sudoku,
    Minesweeper,
    Gomoku,
    Chess,
}

impl GameKind {
    pub const ALL: [GameKind; 6] = [
        GameKind::TicTacToe,
        GameKind::Reversi,
        GameKind::Sudoku,
        GameKind::Minesweeper,
        GameKind::Gomoku,
        GameKind::Chess,
    ];

    pub fn rows(self) -> usize {
        match self {
            GameKind::TicTacToe => 3,
            GameKind::Reversi | GameKind::Minesweeper | GameKind::Chess => 8,
            GameKind::Sudoku => 9,
            GameKind::Gomoku => 15,
        }
    }

    pub fn cols(self) -> usize {
        self.rows()
    }

    pub fn cell_count(self) -> usize {
        self.rows() * self.cols()
    }

    /// Every integer a cell of this game's board matrix may hold.
    pub fn alphabet(self) -> &'static [i8] {
        match self {
            GameKind::TicTacToe => &[-1, 0, 1],
            GameKind::Reversi | GameKind::Gomoku => &[0, 1, 2],
            GameKind::Sudoku => &[0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
            GameKind::Minesweeper => &[-1, 0, 1, 2, 3, 4, 5, 6, 7, 8, 9],
            GameKind::Chess => &[
                -6, -5, -4, -3, -2, -1, 0, 1, 2, 3, 4, 5, 6,
            ],
        }
    }

    /// The cell value that renders as an empty square.
    pub fn empty_cell(self) -> i8 {
        match self {
            GameKind::TicTacToe | GameKind::Minesweeper => -1,
            _ => 0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            GameKind::TicTacToe => "tictactoe",
            GameKind::Reversi => "reversi",
            GameKind::Sudoku => "sudoku",
            GameKind::Minesweeper => "minesweeper",
            GameKind::Gomoku => "gomoku",
            GameKind::Chess => "chess",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            GameKind::TicTacToe => "Tic-Tac-Toe",
            GameKind::Reversi => "Reversi",
            GameKind::Sudoku => "Sudoku",
            GameKind::Minesweeper => "Minesweeper",
            GameKind::Gomoku => "Gomoku",
            GameKind::Chess => "Chess",
        }
    }

    pub fn from_name(s: &str) -> Option<GameKind> {
        let key = s.trim().to_ascii_lowercase().replace(['-', '_', ' '], "");
        Some(match key.as_str() {
            "tictactoe" | "ttt" => GameKind::TicTacToe,
            "reversi" | "othello" => GameKind::Reversi,
            "sudoku" => GameKind::Sudoku,
            "minesweeper" => GameKind::Minesweeper,
            "gomoku" => GameKind::Gomoku,
            "chess" => GameKind::Chess,
            _ => return None,
        })
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum BoardError {
    #[error("{kind}: expected {expected} rows, got {got}")]
    RowCount { kind: GameKind, expected: usize, got: usize },
    #[error("{kind}: row {row} has {got} cells, expected {expected}")]
    RowWidth { kind: GameKind, row: usize, expected: usize, got: usize },
    #[error("{kind}: value {value} at ({row}, {col}) is outside the cell alphabet")]
    BadCell { kind: GameKind, row: usize, col: usize, value: i8 },
    #[error("{kind}: label {label:?} is not a valid cell")]
    BadLabel { kind: GameKind, label: String },
}

/// A fully materialized board: row-major cells, dimensions fixed by the game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoardMatrix {
    kind: GameKind,
    cells: Vec<i8>,
}

impl BoardMatrix {
    pub fn new(kind: GameKind, rows: Vec<Vec<i8>>) -> Result<BoardMatrix, BoardError> {
        if rows.len() != kind.rows() {
            return Err(BoardError::RowCount { kind, expected: kind.rows(), got: rows.len() });
        }
        let mut cells = Vec::with_capacity(kind.cell_count());
        for (r, row) in rows.iter().enumerate() {
            if row.len() != kind.cols() {
                return Err(BoardError::RowWidth {
                    kind,
                    row: r,
                    expected: kind.cols(),
                    got: row.len(),
                });
            }
            for (c, &v) in row.iter().enumerate() {
                if !kind.alphabet().contains(&v) {
                    return Err(BoardError::BadCell { kind, row: r, col: c, value: v });
                }
                cells.push(v);
            }
        }
        Ok(BoardMatrix { kind, cells })
    }

    pub fn from_flat(kind: GameKind, cells: Vec<i8>) -> Result<BoardMatrix, BoardError> {
        if cells.len() != kind.cell_count() {
            return Err(BoardError::RowCount {
                kind,
                expected: kind.rows(),
                got: cells.len() / kind.cols().max(1),
            });
        }
        for (i, &v) in cells.iter().enumerate() {
            if !kind.alphabet().contains(&v) {
                return Err(BoardError::BadCell {
                    kind,
                    row: i / kind.cols(),
                    col: i % kind.cols(),
                    value: v,
                });
            }
        }
        Ok(BoardMatrix { kind, cells })
    }

    pub fn filled(kind: GameKind, value: i8) -> BoardMatrix {
        BoardMatrix::from_flat(kind, vec![value; kind.cell_count()])
            .expect("fill value must be in the alphabet")
    }

    pub fn empty(kind: GameKind) -> BoardMatrix {
        BoardMatrix::filled(kind, kind.empty_cell())
    }

    pub fn kind(&self) -> GameKind {
        self.kind
    }

    pub fn rows(&self) -> usize {
        self.kind.rows()
    }

    pub fn cols(&self) -> usize {
        self.kind.cols()
    }

    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.cells[row * self.kind.cols() + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i8) {
        assert!(
            self.kind.alphabet().contains(&value),
            "{value} is not in the {} alphabet",
            self.kind
        );
        self.cells[row * self.kind.cols() + col] = value;
    }

    pub fn cells(&self) -> &[i8] {
        &self.cells
    }

    pub fn row(&self, row: usize) -> &[i8] {
        let w = self.kind.cols();
        &self.cells[row * w..(row + 1) * w]
    }

    pub fn count(&self, value: i8) -> usize {
        self.cells.iter().filter(|&&v| v == value).count()
    }

    pub fn coords(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let w = self.kind.cols();
        (0..self.cells.len()).map(move |i| (i / w, i % w))
    }
}

/// A single cell position, tied to the game whose labeling convention applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellCoord {
    pub kind: GameKind,
    pub row: usize,
    pub col: usize,
}

impl CellCoord {
    pub fn new(kind: GameKind, row: usize, col: usize) -> CellCoord {
        debug_assert!(row < kind.rows() && col < kind.cols());
        CellCoord { kind, row, col }
    }

    pub fn label(&self) -> String {
        coord_to_label(*self)
    }
}

/// Canonical label for a cell.
///
/// Three conventions are in play:
/// - Tic-Tac-Toe, Reversi, Minesweeper, Sudoku: row letter (A = top row)
///   followed by a 1-based column number, e.g. "B3".
/// - Gomoku: column letter (A = leftmost) followed by a 1-based row number
///   counted from the top, e.g. "H8" for the center.
/// - Chess: file letter a-h followed by rank 1-8, rank 1 at the bottom
///   (matrix row 0 is rank 8), e.g. "e2" is row 6, col 4.
pub fn coord_to_label(coord: CellCoord) -> String {
    let CellCoord { kind, row, col } = coord;
    match kind {
        GameKind::TicTacToe | GameKind::Reversi | GameKind::Minesweeper | GameKind::Sudoku => {
            format!("{}{}", (b'A' + row as u8) as char, col + 1)
        }
        GameKind::Gomoku => format!("{}{}", (b'A' + col as u8) as char, row + 1),
        GameKind::Chess => {
            format!("{}{}", (b'a' + col as u8) as char, kind.rows() - row)
        }
    }
}

/// Parse a cell label, tolerantly: either letter-then-number or
/// number-then-letter, any letter case, surrounding whitespace ignored.
pub fn label_to_coord(kind: GameKind, label: &str) -> Result<CellCoord, BoardError> {
    let bad = || BoardError::BadLabel { kind, label: label.to_string() };
    let s = label.trim();
    let mut letter: Option<char> = None;
    let mut digits = String::new();
    for ch in s.chars() {
        if ch.is_ascii_alphabetic() {
            if letter.is_some() {
                return Err(bad());
            }
            letter = Some(ch.to_ascii_uppercase());
        } else if ch.is_ascii_digit() {
            digits.push(ch);
        } else if !ch.is_whitespace() && ch != ',' {
            return Err(bad());
        }
    }
    let letter = letter.ok_or_else(bad)?;
    let number: usize = digits.parse().map_err(|_| bad())?;
    let letter_idx = (letter as u8 - b'A') as usize;
    let (row, col) = match kind {
        GameKind::TicTacToe | GameKind::Reversi | GameKind::Minesweeper | GameKind::Sudoku => {
            (letter_idx, number.checked_sub(1).ok_or_else(bad)?)
        }
        GameKind::Gomoku => (number.checked_sub(1).ok_or_else(bad)?, letter_idx),
        GameKind::Chess => (
            kind.rows().checked_sub(number).ok_or_else(bad)?,
            letter_idx,
        ),
    };
    if row >= kind.rows() || col >= kind.cols() || number == 0 {
        return Err(bad());
    }
    Ok(CellCoord { kind, row, col })
}

/// Render a matrix in the bracketed row-major form models are asked to emit,
/// e.g. `[[-1, -1, -1], [-1, -1, -1], [-1, -1, -1]]` for an empty 3x3 board.
pub fn matrix_to_text(m: &BoardMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let cells: Vec<String> = m.row(r).iter().map(|v| v.to_string()).collect();
            format!("[{}]", cells.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Stable 64-bit seed with deterministic child derivation, so independent
/// sample streams never share randomness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Seed(pub u64);

impl Seed {
    /// Derive the seed for a tagged substream. Same parent, tag, and index
    /// always yield the same child; distinct tags yield unrelated streams.
    pub fn child(self, tag: &str, index: u64) -> Seed {
        let mut h = self.0 ^ 0x9e37_79b9_7f4a_7c15;
        for &b in tag.as_bytes() {
            h = mix64(h ^ u64::from(b));
        }
        Seed(mix64(h ^ index))
    }

    pub fn rng(self) -> rand_chacha::ChaCha8Rng {
        use rand::SeedableRng;
        rand_chacha::ChaCha8Rng::seed_from_u64(self.0)
    }
}

pub(crate) fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

impl fmt::Display for Seed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions_match_game() {
        assert_eq!(GameKind::TicTacToe.rows(), 3);
        assert_eq!(GameKind::Reversi.rows(), 8);
        assert_eq!(GameKind::Sudoku.rows(), 9);
        assert_eq!(GameKind::Minesweeper.rows(), 8);
        assert_eq!(GameKind::Gomoku.rows(), 15);
        assert_eq!(GameKind::Chess.rows(), 8);
    }

    #[test]
    fn empty_ttt_matrix_text() {
        let m = BoardMatrix::empty(GameKind::TicTacToe);
        assert_eq!(
            matrix_to_text(&m),
            "[[-1, -1, -1], [-1, -1, -1], [-1, -1, -1]]"
        );
    }

    #[test]
    fn matrix_rejects_out_of_alphabet_values() {
        let rows = vec![vec![-1, 0, 1], vec![0, 0, 7], vec![1, 1, -1]];
        let err = BoardMatrix::new(GameKind::TicTacToe, rows).unwrap_err();
        assert_eq!(
            err,
            BoardError::BadCell { kind: GameKind::TicTacToe, row: 1, col: 2, value: 7 }
        );
    }

    #[test]
    fn matrix_rejects_wrong_dimensions() {
        let rows = vec![vec![-1, 0, 1], vec![0, 0, 0]];
        assert!(matches!(
            BoardMatrix::new(GameKind::TicTacToe, rows).unwrap_err(),
            BoardError::RowCount { .. }
        ));
    }

    #[test]
    fn row_letter_labels() {
        // Row letter + column number, A1 in the top-left.
        for kind in [GameKind::TicTacToe, GameKind::Reversi, GameKind::Minesweeper, GameKind::Sudoku]
        {
            assert_eq!(coord_to_label(CellCoord::new(kind, 0, 0)), "A1");
            assert_eq!(coord_to_label(CellCoord::new(kind, 1, 2)), "B3");
        }
        assert_eq!(
            coord_to_label(CellCoord::new(GameKind::Sudoku, 8, 8)),
            "I9"
        );
    }

    #[test]
    fn gomoku_labels_are_column_letter_row_number() {
        let center = CellCoord::new(GameKind::Gomoku, 7, 7);
        assert_eq!(coord_to_label(center), "H8");
        assert_eq!(coord_to_label(CellCoord::new(GameKind::Gomoku, 0, 0)), "A1");
        assert_eq!(coord_to_label(CellCoord::new(GameKind::Gomoku, 14, 14)), "O15");
        // Column O, row 3 from the top.
        assert_eq!(coord_to_label(CellCoord::new(GameKind::Gomoku, 2, 14)), "O3");
    }

    #[test]
    fn chess_labels_put_a1_bottom_left() {
        assert_eq!(coord_to_label(CellCoord::new(GameKind::Chess, 7, 0)), "a1");
        assert_eq!(coord_to_label(CellCoord::new(GameKind::Chess, 0, 0)), "a8");
        assert_eq!(coord_to_label(CellCoord::new(GameKind::Chess, 6, 4)), "e2");
        assert_eq!(coord_to_label(CellCoord::new(GameKind::Chess, 0, 7)), "h8");
    }

    #[test]
    fn labels_round_trip() {
        for kind in GameKind::ALL {
            for row in 0..kind.rows() {
                for col in 0..kind.cols() {
                    let coord = CellCoord::new(kind, row, col);
                    let parsed = label_to_coord(kind, &coord_to_label(coord)).unwrap();
                    assert_eq!(parsed, coord);
                }
            }
        }
    }

    #[test]
    fn label_parsing_is_tolerant() {
        let ttt = GameKind::TicTacToe;
        assert_eq!(label_to_coord(ttt, "2B").unwrap(), CellCoord::new(ttt, 1, 1));
        assert_eq!(label_to_coord(ttt, "b2").unwrap(), CellCoord::new(ttt, 1, 1));
        assert_eq!(label_to_coord(ttt, " C 3 ").unwrap(), CellCoord::new(ttt, 2, 2));
        let chess = GameKind::Chess;
        assert_eq!(label_to_coord(chess, "E2").unwrap(), CellCoord::new(chess, 6, 4));
        assert_eq!(label_to_coord(chess, "1a").unwrap(), CellCoord::new(chess, 7, 0));
        let gomoku = GameKind::Gomoku;
        assert_eq!(label_to_coord(gomoku, "o15").unwrap(), CellCoord::new(gomoku, 14, 14));
        assert_eq!(label_to_coord(gomoku, "15O").unwrap(), CellCoord::new(gomoku, 14, 14));
    }

    #[test]
    fn label_parsing_rejects_junk() {
        assert!(label_to_coord(GameKind::TicTacToe, "D1").is_err());
        assert!(label_to_coord(GameKind::TicTacToe, "A4").is_err());
        assert!(label_to_coord(GameKind::TicTacToe, "A0").is_err());
        assert!(label_to_coord(GameKind::TicTacToe, "AA1").is_err());
        assert!(label_to_coord(GameKind::TicTacToe, "7").is_err());
        assert!(label_to_coord(GameKind::TicTacToe, "").is_err());
        assert!(label_to_coord(GameKind::Chess, "i1").is_err());
        assert!(label_to_coord(GameKind::Chess, "a9").is_err());
        assert!(label_to_coord(GameKind::Gomoku, "P1").is_err());
        assert!(label_to_coord(GameKind::Gomoku, "A16").is_err());
    }

    #[test]
    fn seed_children_are_stable_and_distinct() {
        let root = Seed(42);
        let a = root.child("mines", 0);
        let b = root.child("mines", 1);
        let c = root.child("playout", 0);
        assert_eq!(a, root.child("mines", 0));
        assert_ne!(a, b);
        assert_ne!(a, c);
        assert_ne!(b, c);
    }

    #[test]
    fn seeded_rng_is_reproducible() {
        use rand::Rng;
        let mut r1 = Seed(7).rng();
        let mut r2 = Seed(7).rng();
        let xs: Vec<u32> = (0..8).map(|_| r1.gen_range(0..100)).collect();
        let ys: Vec<u32> = (0..8).map(|_| r2.gen_range(0..100)).collect();
        assert_eq!(xs, ys);
    }
}
