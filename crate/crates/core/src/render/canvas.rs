//! In-memory RGB canvas with the raster primitives the board renderers
//! need: rectangles, lines, discs, and a built-in 5x7 bitmap font, so
//! rendering never touches system fonts or external assets.

use image::codecs::png::{CompressionType, FilterType, PngEncoder};
use image::{ExtendedColorType, ImageEncoder};

pub type Rgb = [u8; 3];

pub struct Canvas {
    pub width: u32,
    pub height: u32,
    pixels: Vec<u8>,
}

impl Canvas {
    pub fn new(width: u32, height: u32, bg: Rgb) -> Canvas {
        let mut pixels = Vec::with_capacity((width * height * 3) as usize);
        for _ in 0..width * height {
            pixels.extend_from_slice(&bg);
        }
        Canvas { width, height, pixels }
    }

    pub fn put(&mut self, x: i32, y: i32, color: Rgb) {
        if x < 0 || y < 0 || x >= self.width as i32 || y >= self.height as i32 {
            return;
        }
        let i = ((y as u32 * self.width + x as u32) * 3) as usize;
        self.pixels[i..i + 3].copy_from_slice(&color);
    }

    pub fn get(&self, x: u32, y: u32) -> Rgb {
        let i = ((y * self.width + x) * 3) as usize;
        [self.pixels[i], self.pixels[i + 1], self.pixels[i + 2]]
    }

    pub fn fill_rect(&mut self, x: i32, y: i32, w: u32, h: u32, color: Rgb) {
        for yy in y..y + h as i32 {
            for xx in x..x + w as i32 {
                self.put(xx, yy, color);
            }
        }
    }

    pub fn rect_outline(&mut self, x: i32, y: i32, w: u32, h: u32, t: u32, color: Rgb) {
        self.fill_rect(x, y, w, t, color);
        self.fill_rect(x, y + h as i32 - t as i32, w, t, color);
        self.fill_rect(x, y, t, h, color);
        self.fill_rect(x + w as i32 - t as i32, y, t, h, color);
    }

    /// Straight line with a square brush of the given thickness.
    pub fn line(&mut self, x0: i32, y0: i32, x1: i32, y1: i32, t: u32, color: Rgb) {
        let (dx, dy) = ((x1 - x0).abs(), -(y1 - y0).abs());
        let (sx, sy) = (if x0 < x1 { 1 } else { -1 }, if y0 < y1 { 1 } else { -1 });
        let (mut x, mut y, mut err) = (x0, y0, dx + dy);
        let half = t as i32 / 2;
        loop {
            self.fill_rect(x - half, y - half, t, t, color);
            if x == x1 && y == y1 {
                break;
            }
            let e2 = 2 * err;
            if e2 >= dy {
                err += dy;
                x += sx;
            }
            if e2 <= dx {
                err += dx;
                y += sy;
            }
        }
    }

    pub fn fill_circle(&mut self, cx: i32, cy: i32, r: i32, color: Rgb) {
        for y in -r..=r {
            for x in -r..=r {
                if x * x + y * y <= r * r {
                    self.put(cx + x, cy + y, color);
                }
            }
        }
    }

    pub fn circle_outline(&mut self, cx: i32, cy: i32, r: i32, t: i32, color: Rgb) {
        let inner = (r - t).max(0);
        for y in -r..=r {
            for x in -r..=r {
                let d = x * x + y * y;
                if d <= r * r && d > inner * inner {
                    self.put(cx + x, cy + y, color);
                }
            }
        }
    }

    /// Draws `text` with the embedded font at integer `scale`; `(x, y)` is
    /// the top-left corner of the first glyph.
    pub fn text(&mut self, x: i32, y: i32, scale: u32, color: Rgb, text: &str) {
        let mut pen = x;
        for ch in text.chars() {
            let glyph = glyph(ch);
            for (gy, row) in glyph.iter().enumerate() {
                for gx in 0..GLYPH_W {
                    if row & (1 << (GLYPH_W - 1 - gx)) != 0 {
                        self.fill_rect(
                            pen + (gx as u32 * scale) as i32,
                            y + (gy as u32 * scale) as i32,
                            scale,
                            scale,
                            color,
                        );
                    }
                }
            }
            pen += ((GLYPH_W as u32 + 1) * scale) as i32;
        }
    }

    pub fn text_size(text: &str, scale: u32) -> (u32, u32) {
        let chars = text.chars().count() as u32;
        if chars == 0 {
            return (0, GLYPH_H as u32 * scale);
        }
        (chars * (GLYPH_W as u32 + 1) * scale - scale, GLYPH_H as u32 * scale)
    }

    pub fn text_centered(&mut self, cx: i32, cy: i32, scale: u32, color: Rgb, text: &str) {
        let (w, h) = Canvas::text_size(text, scale);
        self.text(cx - w as i32 / 2, cy - h as i32 / 2, scale, color, text);
    }

    /// Encodes as 8-bit RGB PNG. Compression settings are pinned so the
    /// same canvas always yields the same bytes.
    pub fn png_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        PngEncoder::new_with_quality(&mut out, CompressionType::Default, FilterType::Adaptive)
            .write_image(&self.pixels, self.width, self.height, ExtendedColorType::Rgb8)
            .expect("in-memory png encoding");
        out
    }
}

pub const GLYPH_W: usize = 5;
pub const GLYPH_H: usize = 7;

/// 5x7 bitmap for a character; bit 4 (MSB of the low 5 bits) is the left
/// column. Unknown characters render as a filled box.
pub fn glyph(ch: char) -> [u8; GLYPH_H] {
    match ch {
        '0' => [0b01110, 0b10001, 0b10011, 0b10101, 0b11001, 0b10001, 0b01110],
        '1' => [0b00100, 0b01100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110],
        '2' => [0b01110, 0b10001, 0b00001, 0b00010, 0b00100, 0b01000, 0b11111],
        '3' => [0b11111, 0b00010, 0b00100, 0b00010, 0b00001, 0b10001, 0b01110],
        '4' => [0b00010, 0b00110, 0b01010, 0b10010, 0b11111, 0b00010, 0b00010],
        '5' => [0b11111, 0b10000, 0b11110, 0b00001, 0b00001, 0b10001, 0b01110],
        '6' => [0b00110, 0b01000, 0b10000, 0b11110, 0b10001, 0b10001, 0b01110],
        '7' => [0b11111, 0b00001, 0b00010, 0b00100, 0b00100, 0b00100, 0b00100],
        '8' => [0b01110, 0b10001, 0b10001, 0b01110, 0b10001, 0b10001, 0b01110],
        '9' => [0b01110, 0b10001, 0b10001, 0b01111, 0b00001, 0b00010, 0b01100],
        'A' => [0b01110, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001],
        'B' => [0b11110, 0b10001, 0b10001, 0b11110, 0b10001, 0b10001, 0b11110],
        'C' => [0b01110, 0b10001, 0b10000, 0b10000, 0b10000, 0b10001, 0b01110],
        'D' => [0b11100, 0b10010, 0b10001, 0b10001, 0b10001, 0b10010, 0b11100],
        'E' => [0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b11111],
        'F' => [0b11111, 0b10000, 0b10000, 0b11110, 0b10000, 0b10000, 0b10000],
        'G' => [0b01110, 0b10001, 0b10000, 0b10111, 0b10001, 0b10001, 0b01111],
        'H' => [0b10001, 0b10001, 0b10001, 0b11111, 0b10001, 0b10001, 0b10001],
        'I' => [0b01110, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b01110],
        'J' => [0b00111, 0b00010, 0b00010, 0b00010, 0b00010, 0b10010, 0b01100],
        'K' => [0b10001, 0b10010, 0b10100, 0b11000, 0b10100, 0b10010, 0b10001],
        'L' => [0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b10000, 0b11111],
        'M' => [0b10001, 0b11011, 0b10101, 0b10101, 0b10001, 0b10001, 0b10001],
        'N' => [0b10001, 0b10001, 0b11001, 0b10101, 0b10011, 0b10001, 0b10001],
        'O' => [0b01110, 0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01110],
        'P' => [0b11110, 0b10001, 0b10001, 0b11110, 0b10000, 0b10000, 0b10000],
        'Q' => [0b01110, 0b10001, 0b10001, 0b10001, 0b10101, 0b10010, 0b01101],
        'R' => [0b11110, 0b10001, 0b10001, 0b11110, 0b10100, 0b10010, 0b10001],
        'S' => [0b01111, 0b10000, 0b10000, 0b01110, 0b00001, 0b00001, 0b11110],
        'T' => [0b11111, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100, 0b00100],
        'U' => [0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01110],
        'V' => [0b10001, 0b10001, 0b10001, 0b10001, 0b10001, 0b01010, 0b00100],
        'W' => [0b10001, 0b10001, 0b10001, 0b10101, 0b10101, 0b10101, 0b01010],
        'X' => [0b10001, 0b10001, 0b01010, 0b00100, 0b01010, 0b10001, 0b10001],
        'Y' => [0b10001, 0b10001, 0b01010, 0b00100, 0b00100, 0b00100, 0b00100],
        'Z' => [0b11111, 0b00001, 0b00010, 0b00100, 0b01000, 0b10000, 0b11111],
        'a' => [0b00000, 0b00000, 0b01110, 0b00001, 0b01111, 0b10001, 0b01111],
        'b' => [0b10000, 0b10000, 0b11110, 0b10001, 0b10001, 0b10001, 0b11110],
        'c' => [0b00000, 0b00000, 0b01110, 0b10000, 0b10000, 0b10001, 0b01110],
        'd' => [0b00001, 0b00001, 0b01111, 0b10001, 0b10001, 0b10001, 0b01111],
        'e' => [0b00000, 0b00000, 0b01110, 0b10001, 0b11111, 0b10000, 0b01110],
        'f' => [0b00110, 0b01001, 0b01000, 0b11100, 0b01000, 0b01000, 0b01000],
        'g' => [0b00000, 0b00000, 0b01111, 0b10001, 0b01111, 0b00001, 0b01110],
        'h' => [0b10000, 0b10000, 0b11110, 0b10001, 0b10001, 0b10001, 0b10001],
        '-' => [0b00000, 0b00000, 0b00000, 0b01110, 0b00000, 0b00000, 0b00000],
        ' ' => [0; GLYPH_H],
        _ => [0b11111; GLYPH_H],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BLACK: Rgb = [0, 0, 0];
    const WHITE: Rgb = [255, 255, 255];

    #[test]
    fn put_and_get_round_trip() {
        let mut c = Canvas::new(10, 10, WHITE);
        c.put(3, 4, [10, 20, 30]);
        assert_eq!(c.get(3, 4), [10, 20, 30]);
        assert_eq!(c.get(0, 0), WHITE);
        // Out-of-bounds writes are ignored, not panics.
        c.put(-1, 0, BLACK);
        c.put(10, 0, BLACK);
    }

    #[test]
    fn circle_is_symmetric() {
        let mut c = Canvas::new(21, 21, WHITE);
        c.fill_circle(10, 10, 6, BLACK);
        for (x, y) in [(10, 4), (10, 16), (4, 10), (16, 10)] {
            assert_eq!(c.get(x, y), BLACK);
        }
        assert_eq!(c.get(0, 0), WHITE);
        assert_eq!(c.get(10, 3), WHITE);
    }

    #[test]
    fn glyphs_render_their_bitmap() {
        let mut c = Canvas::new(16, 16, WHITE);
        c.text(0, 0, 1, BLACK, "1");
        // Column 2 carries the stem of "1".
        assert_eq!(c.get(2, 1), BLACK);
        assert_eq!(c.get(0, 0), WHITE);
        let bitmap = glyph('1');
        for (y, row) in bitmap.iter().enumerate() {
            for x in 0..GLYPH_W {
                let expect = row & (1 << (GLYPH_W - 1 - x)) != 0;
                assert_eq!(c.get(x as u32, y as u32) == BLACK, expect, "({x},{y})");
            }
        }
    }

    #[test]
    fn every_needed_glyph_is_defined() {
        let needed = ('0'..='9')
            .chain('A'..='Z')
            .chain('a'..='h')
            .chain(['-', ' ']);
        for ch in needed {
            assert_ne!(glyph(ch), [0b11111; GLYPH_H], "missing glyph for {ch:?}");
        }
        // The space really is blank, not boxed.
        assert_eq!(glyph(' '), [0; GLYPH_H]);
    }

    #[test]
    fn png_encoding_is_deterministic() {
        let mut c = Canvas::new(32, 32, WHITE);
        c.fill_circle(16, 16, 10, [200, 30, 30]);
        c.text(2, 2, 1, BLACK, "A1");
        let a = c.png_bytes();
        let b = c.png_bytes();
        assert_eq!(a, b);
        assert_eq!(&a[1..4], b"PNG");
    }

    #[test]
    fn text_size_accounts_for_spacing() {
        assert_eq!(Canvas::text_size("A", 2), (10, 14));
        assert_eq!(Canvas::text_size("AB", 2), (22, 14));
    }
}
