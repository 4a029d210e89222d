//! Deterministic board rasterization: every game state renders to a PNG
//! screenshot whose axis labels match the game's coordinate codec. All
//! drawing uses integer math and the embedded font, so identical inputs
//! produce identical bytes on every platform.

pub mod canvas;

use crate::board::{BoardMatrix, GameKind};
use crate::engines::GameState;
use canvas::{Canvas, Rgb};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Palette {
    pub background: Rgb,
    pub grid: Rgb,
    pub label: Rgb,
    pub ttt_x: Rgb,
    pub ttt_o: Rgb,
    pub reversi_board: Rgb,
    pub gomoku_board: Rgb,
    pub stone_black: Rgb,
    pub stone_white: Rgb,
    pub mine_hidden: Rgb,
    pub mine_revealed: Rgb,
    pub mine_icon: Rgb,
    /// Classic Minesweeper digit colors for counts 1-8.
    pub mine_digits: [Rgb; 8],
    pub sudoku_clue: Rgb,
    pub sudoku_fill: Rgb,
    pub chess_light: Rgb,
    pub chess_dark: Rgb,
    pub chess_white_piece: Rgb,
    pub chess_black_piece: Rgb,
}

impl Default for Palette {
    fn default() -> Palette {
        Palette {
            background: [255, 255, 255],
            grid: [40, 40, 40],
            label: [60, 60, 60],
            ttt_x: [30, 80, 220],
            ttt_o: [220, 40, 40],
            reversi_board: [0, 130, 60],
            gomoku_board: [210, 165, 95],
            stone_black: [15, 15, 15],
            stone_white: [245, 245, 245],
            mine_hidden: [150, 150, 150],
            mine_revealed: [225, 225, 225],
            mine_icon: [10, 10, 10],
            mine_digits: [
                [0, 0, 255],
                [0, 128, 0],
                [255, 0, 0],
                [0, 0, 128],
                [128, 0, 0],
                [0, 128, 128],
                [0, 0, 0],
                [128, 128, 128],
            ],
            sudoku_clue: [0, 0, 0],
            sudoku_fill: [30, 80, 220],
            chess_light: [240, 217, 181],
            chess_dark: [181, 136, 99],
            chess_white_piece: [250, 250, 250],
            chess_black_piece: [25, 25, 25],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Theme {
    /// Canvas side length for every game except Gomoku.
    pub image_px: u32,
    /// Gomoku gets a larger canvas so 15x15 intersections stay readable.
    pub gomoku_px: u32,
    pub show_labels: bool,
    pub palette: Palette,
}

impl Default for Theme {
    fn default() -> Theme {
        Theme { image_px: 480, gomoku_px: 600, show_labels: true, palette: Palette::default() }
    }
}

impl Theme {
    pub fn side_px(&self, kind: GameKind) -> u32 {
        match kind {
            GameKind::Gomoku => self.gomoku_px,
            _ => self.image_px,
        }
    }
}

/// Pixel layout shared by the per-game painters: where the grid starts,
/// how big a cell is, and where cell centers and axis labels sit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Geometry {
    pub side: i32,
    pub margin: i32,
    pub origin_x: i32,
    pub origin_y: i32,
    pub cell: i32,
    pub n: i32,
}

impl Geometry {
    pub fn new(kind: GameKind, theme: &Theme) -> Geometry {
        let side = theme.side_px(kind) as i32;
        let margin = if theme.show_labels { side * 7 / 100 } else { side * 2 / 100 };
        let n = kind.rows() as i32;
        let cell = (side - margin - margin / 2) / n;
        let (origin_x, origin_y) = match kind {
            // Chess keeps its file labels under the board.
            GameKind::Chess => (margin, margin / 2),
            _ => (margin, margin),
        };
        Geometry { side, margin, origin_x, origin_y, cell, n }
    }

    /// Center of a cell — for Gomoku this is the intersection point.
    pub fn cell_center(&self, row: usize, col: usize) -> (i32, i32) {
        (
            self.origin_x + col as i32 * self.cell + self.cell / 2,
            self.origin_y + row as i32 * self.cell + self.cell / 2,
        )
    }

    pub fn cell_rect(&self, row: usize, col: usize) -> (i32, i32, u32, u32) {
        (
            self.origin_x + col as i32 * self.cell,
            self.origin_y + row as i32 * self.cell,
            self.cell as u32,
            self.cell as u32,
        )
    }

    fn label_scale(&self) -> u32 {
        (self.side as u32 / 240).max(1)
    }

    fn glyph_scale(&self) -> u32 {
        ((self.cell as u32) * 3 / 5 / canvas::GLYPH_H as u32).max(1)
    }

    /// Anchor of the label for `row` on the left margin.
    pub fn row_label_anchor(&self, row: usize) -> (i32, i32) {
        let (_, cy) = self.cell_center(row, 0);
        (self.margin / 2, cy)
    }

    /// Anchor of the label for `col`: top margin normally, bottom for Chess.
    pub fn col_label_anchor(&self, kind: GameKind, col: usize) -> (i32, i32) {
        let (cx, _) = self.cell_center(0, col);
        match kind {
            GameKind::Chess => (cx, self.origin_y + self.n * self.cell + self.margin / 2),
            _ => (cx, self.margin / 2),
        }
    }
}

/// Axis label text, matching the coordinate codec of each game.
pub fn row_label_text(kind: GameKind, row: usize) -> String {
    match kind {
        GameKind::Gomoku => (row + 1).to_string(),
        GameKind::Chess => (8 - row).to_string(),
        _ => char::from(b'A' + row as u8).to_string(),
    }
}

pub fn col_label_text(kind: GameKind, col: usize) -> String {
    match kind {
        GameKind::Gomoku => char::from(b'A' + col as u8).to_string(),
        GameKind::Chess => char::from(b'a' + col as u8).to_string(),
        _ => (col + 1).to_string(),
    }
}

fn draw_labels(c: &mut Canvas, kind: GameKind, geo: &Geometry, pal: &Palette) {
    let scale = geo.label_scale();
    for row in 0..geo.n as usize {
        let (x, y) = geo.row_label_anchor(row);
        c.text_centered(x, y, scale, pal.label, &row_label_text(kind, row));
    }
    for col in 0..geo.n as usize {
        let (x, y) = geo.col_label_anchor(kind, col);
        c.text_centered(x, y, scale, pal.label, &col_label_text(kind, col));
    }
}

fn grid_lines(c: &mut Canvas, geo: &Geometry, t: u32, color: Rgb) {
    let w = (geo.n * geo.cell) as u32;
    for i in 0..=geo.n {
        c.fill_rect(geo.origin_x, geo.origin_y + i * geo.cell, w, t, color);
        c.fill_rect(geo.origin_x + i * geo.cell, geo.origin_y, t, w, color);
    }
}

/// Renders a game state. Sudoku states distinguish clue digits from
/// player-filled digits; everything else delegates to the matrix renderer.
pub fn render_state(state: &GameState, theme: &Theme) -> Vec<u8> {
    match state {
        GameState::Sudoku(s) => {
            let clues: Vec<bool> =
                (0..81).map(|i| s.is_clue(i / 9, i % 9)).collect();
            render_sudoku(&state.board(), Some(&clues), theme)
        }
        _ => render_matrix(&state.board(), theme),
    }
}

/// Renders a bare matrix. Sudoku digits all draw in the clue style since a
/// matrix alone cannot tell clues from fills.
pub fn render_matrix(m: &BoardMatrix, theme: &Theme) -> Vec<u8> {
    match m.kind() {
        GameKind::TicTacToe => render_ttt(m, theme),
        GameKind::Reversi => render_reversi(m, theme),
        GameKind::Sudoku => render_sudoku(m, None, theme),
        GameKind::Minesweeper => render_minesweeper(m, theme),
        GameKind::Gomoku => render_gomoku(m, theme),
        GameKind::Chess => render_chess(m, theme),
    }
}

fn render_ttt(m: &BoardMatrix, theme: &Theme) -> Vec<u8> {
    let kind = GameKind::TicTacToe;
    let geo = Geometry::new(kind, theme);
    let pal = &theme.palette;
    let mut c = Canvas::new(geo.side as u32, geo.side as u32, pal.background);
    grid_lines(&mut c, &geo, (geo.cell as u32 / 24).max(2), pal.grid);
    if theme.show_labels {
        draw_labels(&mut c, kind, &geo, pal);
    }
    for row in 0..3 {
        for col in 0..3 {
            let (cx, cy) = geo.cell_center(row, col);
            let inset = geo.cell / 4;
            match m.get(row, col) {
                1 => {
                    let t = (geo.cell as u32 / 10).max(3);
                    c.line(cx - inset, cy - inset, cx + inset, cy + inset, t, pal.ttt_x);
                    c.line(cx - inset, cy + inset, cx + inset, cy - inset, t, pal.ttt_x);
                }
                0 => {
                    let t = (geo.cell / 10).max(3);
                    c.circle_outline(cx, cy, geo.cell / 2 - geo.cell / 6, t, pal.ttt_o);
                }
                _ => {}
            }
        }
    }
    c.png_bytes()
}

fn render_reversi(m: &BoardMatrix, theme: &Theme) -> Vec<u8> {
    let kind = GameKind::Reversi;
    let geo = Geometry::new(kind, theme);
    let pal = &theme.palette;
    let mut c = Canvas::new(geo.side as u32, geo.side as u32, pal.background);
    c.fill_rect(
        geo.origin_x,
        geo.origin_y,
        (geo.n * geo.cell) as u32,
        (geo.n * geo.cell) as u32,
        pal.reversi_board,
    );
    grid_lines(&mut c, &geo, 1, pal.grid);
    if theme.show_labels {
        draw_labels(&mut c, kind, &geo, pal);
    }
    for row in 0..8 {
        for col in 0..8 {
            let (cx, cy) = geo.cell_center(row, col);
            let r = geo.cell / 2 - geo.cell / 8;
            match m.get(row, col) {
                1 => c.fill_circle(cx, cy, r, pal.stone_black),
                2 => {
                    c.fill_circle(cx, cy, r, pal.stone_white);
                    c.circle_outline(cx, cy, r, 1, pal.grid);
                }
                _ => {}
            }
        }
    }
    c.png_bytes()
}

fn render_sudoku(m: &BoardMatrix, clues: Option<&[bool]>, theme: &Theme) -> Vec<u8> {
    let kind = GameKind::Sudoku;
    let geo = Geometry::new(kind, theme);
    let pal = &theme.palette;
    let mut c = Canvas::new(geo.side as u32, geo.side as u32, pal.background);
    grid_lines(&mut c, &geo, 1, pal.grid);
    // Heavier lines around each 3x3 subgrid.
    let w = (geo.n * geo.cell) as u32;
    for i in (0..=9).step_by(3) {
        c.fill_rect(geo.origin_x - 1, geo.origin_y + i * geo.cell - 1, w + 3, 3, pal.grid);
        c.fill_rect(geo.origin_x + i * geo.cell - 1, geo.origin_y - 1, 3, w + 3, pal.grid);
    }
    if theme.show_labels {
        draw_labels(&mut c, kind, &geo, pal);
    }
    let scale = geo.glyph_scale();
    for row in 0..9 {
        for col in 0..9 {
            let digit = m.get(row, col);
            if digit == 0 {
                continue;
            }
            let is_clue = clues.map_or(true, |cl| cl[row * 9 + col]);
            let color = if is_clue { pal.sudoku_clue } else { pal.sudoku_fill };
            let (cx, cy) = geo.cell_center(row, col);
            c.text_centered(cx, cy, scale, color, &digit.to_string());
            if is_clue {
                // Clue digits draw doubled for a bold face.
                c.text_centered(cx + 1, cy, scale, color, &digit.to_string());
            }
        }
    }
    c.png_bytes()
}

fn render_minesweeper(m: &BoardMatrix, theme: &Theme) -> Vec<u8> {
    let kind = GameKind::Minesweeper;
    let geo = Geometry::new(kind, theme);
    let pal = &theme.palette;
    let mut c = Canvas::new(geo.side as u32, geo.side as u32, pal.background);
    if theme.show_labels {
        draw_labels(&mut c, kind, &geo, pal);
    }
    let scale = geo.glyph_scale();
    for row in 0..8 {
        for col in 0..8 {
            let (x, y, w, h) = geo.cell_rect(row, col);
            let v = m.get(row, col);
            let bg = if v == -1 { pal.mine_hidden } else { pal.mine_revealed };
            c.fill_rect(x, y, w, h, bg);
            c.rect_outline(x, y, w, h, 1, pal.grid);
            let (cx, cy) = geo.cell_center(row, col);
            match v {
                -1 | 0 => {}
                1..=8 => {
                    let color = pal.mine_digits[(v - 1) as usize];
                    c.text_centered(cx, cy, scale, color, &v.to_string());
                }
                9 => {
                    let r = geo.cell / 4;
                    c.fill_circle(cx, cy, r, pal.mine_icon);
                    let spike = r + geo.cell / 8;
                    c.line(cx - spike, cy, cx + spike, cy, 2, pal.mine_icon);
                    c.line(cx, cy - spike, cx, cy + spike, 2, pal.mine_icon);
                }
                _ => unreachable!("minesweeper alphabet"),
            }
        }
    }
    c.png_bytes()
}

fn render_gomoku(m: &BoardMatrix, theme: &Theme) -> Vec<u8> {
    let kind = GameKind::Gomoku;
    let geo = Geometry::new(kind, theme);
    let pal = &theme.palette;
    let mut c = Canvas::new(geo.side as u32, geo.side as u32, pal.background);
    c.fill_rect(
        geo.origin_x,
        geo.origin_y,
        (geo.n * geo.cell) as u32,
        (geo.n * geo.cell) as u32,
        pal.gomoku_board,
    );
    // Lines meet at intersections (cell centers), Go-board style.
    let first = geo.cell / 2;
    let span = ((geo.n - 1) * geo.cell + 1) as u32;
    for i in 0..geo.n {
        let offset = first + i * geo.cell;
        c.fill_rect(geo.origin_x + first, geo.origin_y + offset, span, 1, pal.grid);
        c.fill_rect(geo.origin_x + offset, geo.origin_y + first, 1, span, pal.grid);
    }
    if theme.show_labels {
        draw_labels(&mut c, kind, &geo, pal);
    }
    for row in 0..15 {
        for col in 0..15 {
            let (cx, cy) = geo.cell_center(row, col);
            let r = geo.cell / 2 - 2;
            match m.get(row, col) {
                1 => c.fill_circle(cx, cy, r, pal.stone_black),
                2 => {
                    c.fill_circle(cx, cy, r, pal.stone_white);
                    c.circle_outline(cx, cy, r, 1, pal.grid);
                }
                _ => {}
            }
        }
    }
    c.png_bytes()
}

fn chess_piece_letter(code: i8) -> &'static str {
    match code.abs() {
        1 => "P",
        2 => "N",
        3 => "B",
        4 => "R",
        5 => "Q",
        6 => "K",
        _ => "?",
    }
}

fn render_chess(m: &BoardMatrix, theme: &Theme) -> Vec<u8> {
    let kind = GameKind::Chess;
    let geo = Geometry::new(kind, theme);
    let pal = &theme.palette;
    let mut c = Canvas::new(geo.side as u32, geo.side as u32, pal.background);
    for row in 0..8 {
        for col in 0..8 {
            let (x, y, w, h) = geo.cell_rect(row, col);
            let color = if (row + col) % 2 == 0 { pal.chess_light } else { pal.chess_dark };
            c.fill_rect(x, y, w, h, color);
        }
    }
    c.rect_outline(
        geo.origin_x,
        geo.origin_y,
        (geo.n * geo.cell) as u32,
        (geo.n * geo.cell) as u32,
        1,
        pal.grid,
    );
    if theme.show_labels {
        draw_labels(&mut c, kind, &geo, pal);
    }
    let scale = geo.glyph_scale();
    for row in 0..8 {
        for col in 0..8 {
            let code = m.get(row, col);
            if code == 0 {
                continue;
            }
            let (cx, cy) = geo.cell_center(row, col);
            let r = geo.cell / 2 - geo.cell / 8;
            let (disc, letter) = if code > 0 {
                (pal.chess_white_piece, pal.chess_black_piece)
            } else {
                (pal.chess_black_piece, pal.chess_white_piece)
            };
            c.fill_circle(cx, cy, r, disc);
            c.circle_outline(cx, cy, r, 1, pal.grid);
            c.text_centered(cx, cy, scale, letter, chess_piece_letter(code));
        }
    }
    c.png_bytes()
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(bytes);
    let mut out = String::with_capacity(64);
    for b in digest {
        out.push_str(&format!("{b:02x}"));
    }
    out
}
