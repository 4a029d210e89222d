//! Chess with the full rule set: castling, en passant, promotion, check and
//! checkmate, stalemate, the fifty-move rule, threefold repetition, and
//! insufficient material. Moves are exchanged in standard algebraic notation.
//!
//! Board encoding: row 0 of the matrix is rank 8 (black's back rank at the
//! top of the image), and piece codes are signed — white pawn/knight/bishop/
//! rook/queen/king are 1..6, black pieces are the negatives.

use super::{EngineError, MovePayload, MoveSpec, Outcome, Side};
use crate::board::{mix64, BoardMatrix, GameKind, Seed};
use serde::{Deserialize, Serialize};

pub const WP: i8 = 1;
pub const WN: i8 = 2;
pub const WB: i8 = 3;
pub const WR: i8 = 4;
pub const WQ: i8 = 5;
pub const WK: i8 = 6;

const CASTLE_WK: u8 = 1;
const CASTLE_WQ: u8 = 2;
const CASTLE_BK: u8 = 4;
const CASTLE_BQ: u8 = 8;

/// Capture value of a piece in pawns (kings are never captured).
pub fn piece_points(code: i8) -> u32 {
    match code.abs() {
        1 => 1,
        2 | 3 => 3,
        4 => 5,
        5 => 9,
        _ => 0,
    }
}

fn piece_letter(code: i8) -> char {
    match code.abs() {
        1 => 'P',
        2 => 'N',
        3 => 'B',
        4 => 'R',
        5 => 'Q',
        6 => 'K',
        _ => '?',
    }
}

fn letter_piece(ch: char) -> Option<i8> {
    Some(match ch {
        'P' => WP,
        'N' => WN,
        'B' => WB,
        'R' => WR,
        'Q' => WQ,
        'K' => WK,
        _ => return None,
    })
}

pub fn square_name(sq: usize) -> String {
    format!("{}{}", (b'a' + (sq % 8) as u8) as char, 8 - sq / 8)
}

fn parse_square(s: &str) -> Option<usize> {
    let bytes = s.as_bytes();
    if bytes.len() != 2 {
        return None;
    }
    let file = bytes[0].checked_sub(b'a')? as usize;
    let rank = (bytes[1] as char).to_digit(10)? as usize;
    if file > 7 || !(1..=8).contains(&rank) {
        return None;
    }
    Some((8 - rank) * 8 + file)
}

/// An internal move; piece and capture are read off the board when applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Mv {
    pub from: usize,
    pub to: usize,
    /// Absolute piece code (2-5) when this move promotes, else 0.
    pub promo: i8,
    pub is_ep: bool,
    /// 0 = none, 1 = kingside, 2 = queenside.
    pub castle: u8,
}

impl Mv {
    fn plain(from: usize, to: usize) -> Mv {
        Mv { from, to, promo: 0, is_ep: false, castle: 0 }
    }

    /// Long algebraic form, e.g. "e2e4" or "e7e8q".
    pub fn uci(&self) -> String {
        let mut s = format!("{}{}", square_name(self.from), square_name(self.to));
        if self.promo != 0 {
            s.push(piece_letter(self.promo).to_ascii_lowercase());
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChessState {
    board: Vec<i8>,
    white_to_move: bool,
    castling: u8,
    /// Square a capturing pawn would land on, when the last move was a
    /// double push.
    ep_target: Option<usize>,
    halfmove_clock: u32,
    fullmove: u32,
    history: Vec<u64>,
    pub log: Vec<MoveSpec>,
    pub seed: Seed,
    captured_black_points: u32,
    captured_white_points: u32,
}

impl ChessState {
    pub fn new(seed: Seed) -> ChessState {
        let mut board = vec![0i8; 64];
        let back = [WR, WN, WB, WQ, WK, WB, WN, WR];
        for (c, &p) in back.iter().enumerate() {
            board[c] = -p; // rank 8
            board[8 + c] = -WP; // rank 7
            board[48 + c] = WP; // rank 2
            board[56 + c] = p; // rank 1
        }
        let mut s = ChessState {
            board,
            white_to_move: true,
            castling: CASTLE_WK | CASTLE_WQ | CASTLE_BK | CASTLE_BQ,
            ep_target: None,
            halfmove_clock: 0,
            fullmove: 1,
            history: Vec::new(),
            log: Vec::new(),
            seed,
            captured_black_points: 0,
            captured_white_points: 0,
        };
        s.history.push(s.position_key());
        s
    }

    pub fn side_to_move(&self) -> Side {
        if self.white_to_move {
            Side::First
        } else {
            Side::Second
        }
    }

    pub fn piece_at(&self, sq: usize) -> i8 {
        self.board[sq]
    }

    /// Points of black material white has captured so far (and vice versa).
    pub fn captured_points(&self) -> (u32, u32) {
        (self.captured_black_points, self.captured_white_points)
    }

    pub fn log(&self) -> &[MoveSpec] {
        &self.log
    }

    fn own_sign(&self) -> i8 {
        if self.white_to_move {
            1
        } else {
            -1
        }
    }

    fn king_square(&self, white: bool) -> usize {
        let target = if white { WK } else { -WK };
        self.board.iter().position(|&p| p == target).expect("king on board")
    }

    /// Is `sq` attacked by the given color?
    pub fn is_attacked(&self, sq: usize, by_white: bool) -> bool {
        let (r, c) = (sq as i32 / 8, sq as i32 % 8);
        let sign: i8 = if by_white { 1 } else { -1 };
        let at = |rr: i32, cc: i32| -> i8 {
            if (0..8).contains(&rr) && (0..8).contains(&cc) {
                self.board[(rr * 8 + cc) as usize]
            } else {
                0
            }
        };
        // Pawns: white pawns attack toward smaller rows.
        let pr = if by_white { r + 1 } else { r - 1 };
        if at(pr, c - 1) == sign * WP || at(pr, c + 1) == sign * WP {
            return true;
        }
        for (dr, dc) in [(-2i32, -1i32), (-2, 1), (-1, -2), (-1, 2), (1, -2), (1, 2), (2, -1), (2, 1)]
        {
            if at(r + dr, c + dc) == sign * WN {
                return true;
            }
        }
        for dr in -1i32..=1 {
            for dc in -1i32..=1 {
                if (dr != 0 || dc != 0) && at(r + dr, c + dc) == sign * WK {
                    return true;
                }
            }
        }
        let rays: [((i32, i32), i8); 8] = [
            ((-1, 0), WR),
            ((1, 0), WR),
            ((0, -1), WR),
            ((0, 1), WR),
            ((-1, -1), WB),
            ((-1, 1), WB),
            ((1, -1), WB),
            ((1, 1), WB),
        ];
        for ((dr, dc), slider) in rays {
            let (mut rr, mut cc) = (r + dr, c + dc);
            while (0..8).contains(&rr) && (0..8).contains(&cc) {
                let p = self.board[(rr * 8 + cc) as usize];
                if p != 0 {
                    if p.signum() == sign && (p.abs() == slider || p.abs() == WQ) {
                        return true;
                    }
                    break;
                }
                rr += dr;
                cc += dc;
            }
        }
        false
    }

    pub fn in_check(&self) -> bool {
        self.is_attacked(self.king_square(self.white_to_move), !self.white_to_move)
    }

    fn pseudo_moves(&self) -> Vec<Mv> {
        self.gen_pseudo(self.own_sign())
    }

    /// Pseudo-legal move count for either color, as a mobility measure.
    pub fn pseudo_move_count(&self, white: bool) -> usize {
        self.gen_pseudo(if white { 1 } else { -1 }).len()
    }

    fn gen_pseudo(&self, sign: i8) -> Vec<Mv> {
        let mut moves = Vec::with_capacity(48);
        for from in 0..64 {
            let p = self.board[from];
            if p == 0 || p.signum() != sign {
                continue;
            }
            let (r, c) = (from as i32 / 8, from as i32 % 8);
            let push = |moves: &mut Vec<Mv>, to: usize, promo_rank: bool| {
                if promo_rank {
                    for promo in [WQ, WR, WB, WN] {
                        moves.push(Mv { from, to, promo, is_ep: false, castle: 0 });
                    }
                } else {
                    moves.push(Mv::plain(from, to));
                }
            };
            match p.abs() {
                1 => {
                    let dir: i32 = if sign > 0 { -1 } else { 1 };
                    let start_row = if sign > 0 { 6 } else { 1 };
                    let last_row = if sign > 0 { 0 } else { 7 };
                    let fr = r + dir;
                    if (0..8).contains(&fr) && self.board[(fr * 8 + c) as usize] == 0 {
                        push(&mut moves, (fr * 8 + c) as usize, fr == last_row);
                        let dr = r + 2 * dir;
                        if r == start_row && self.board[(dr * 8 + c) as usize] == 0 {
                            moves.push(Mv::plain(from, (dr * 8 + c) as usize));
                        }
                    }
                    for dc in [-1i32, 1] {
                        let (rr, cc) = (r + dir, c + dc);
                        if !(0..8).contains(&rr) || !(0..8).contains(&cc) {
                            continue;
                        }
                        let to = (rr * 8 + cc) as usize;
                        let target = self.board[to];
                        if target != 0 && target.signum() == -sign {
                            push(&mut moves, to, rr == last_row);
                        } else if target == 0 && self.ep_target == Some(to) {
                            moves.push(Mv { from, to, promo: 0, is_ep: true, castle: 0 });
                        }
                    }
                }
                2 => {
                    for (dr, dc) in
                        [(-2i32, -1i32), (-2, 1), (-1, -2), (-1, 2), (1, -2), (1, 2), (2, -1), (2, 1)]
                    {
                        let (rr, cc) = (r + dr, c + dc);
                        if (0..8).contains(&rr) && (0..8).contains(&cc) {
                            let to = (rr * 8 + cc) as usize;
                            if self.board[to].signum() != sign {
                                moves.push(Mv::plain(from, to));
                            }
                        }
                    }
                }
                6 => {
                    for dr in -1i32..=1 {
                        for dc in -1i32..=1 {
                            if dr == 0 && dc == 0 {
                                continue;
                            }
                            let (rr, cc) = (r + dr, c + dc);
                            if (0..8).contains(&rr) && (0..8).contains(&cc) {
                                let to = (rr * 8 + cc) as usize;
                                if self.board[to].signum() != sign {
                                    moves.push(Mv::plain(from, to));
                                }
                            }
                        }
                    }
                }
                kind @ (3 | 4 | 5) => {
                    let dirs: &[(i32, i32)] = match kind {
                        3 => &[(-1, -1), (-1, 1), (1, -1), (1, 1)],
                        4 => &[(-1, 0), (1, 0), (0, -1), (0, 1)],
                        _ => &[
                            (-1, -1),
                            (-1, 1),
                            (1, -1),
                            (1, 1),
                            (-1, 0),
                            (1, 0),
                            (0, -1),
                            (0, 1),
                        ],
                    };
                    for &(dr, dc) in dirs {
                        let (mut rr, mut cc) = (r + dr, c + dc);
                        while (0..8).contains(&rr) && (0..8).contains(&cc) {
                            let to = (rr * 8 + cc) as usize;
                            let target = self.board[to];
                            if target.signum() == sign {
                                break;
                            }
                            moves.push(Mv::plain(from, to));
                            if target != 0 {
                                break;
                            }
                            rr += dr;
                            cc += dc;
                        }
                    }
                }
                _ => unreachable!(),
            }
        }
        moves
    }

    fn castle_moves(&self) -> Vec<Mv> {
        let mut moves = Vec::new();
        let (home, k_bit, q_bit) = if self.white_to_move {
            (56usize, CASTLE_WK, CASTLE_WQ)
        } else {
            (0usize, CASTLE_BK, CASTLE_BQ)
        };
        let king = home + 4;
        let enemy_white = !self.white_to_move;
        if self.is_attacked(king, enemy_white) {
            return moves;
        }
        let rook = self.own_sign() * WR;
        if self.castling & k_bit != 0
            && self.board[home + 5] == 0
            && self.board[home + 6] == 0
            && self.board[home + 7] == rook
            && !self.is_attacked(home + 5, enemy_white)
            && !self.is_attacked(home + 6, enemy_white)
        {
            moves.push(Mv { from: king, to: home + 6, promo: 0, is_ep: false, castle: 1 });
        }
        if self.castling & q_bit != 0
            && self.board[home + 1] == 0
            && self.board[home + 2] == 0
            && self.board[home + 3] == 0
            && self.board[home] == rook
            && !self.is_attacked(home + 3, enemy_white)
            && !self.is_attacked(home + 2, enemy_white)
        {
            moves.push(Mv { from: king, to: home + 2, promo: 0, is_ep: false, castle: 2 });
        }
        moves
    }

    /// Apply without legality filtering or log/repetition bookkeeping.
    fn apply_raw(&self, mv: Mv) -> ChessState {
        let mut s = self.clone();
        let piece = s.board[mv.from];
        let mut captured = s.board[mv.to];
        s.board[mv.from] = 0;
        if mv.is_ep {
            let behind = if self.white_to_move { mv.to + 8 } else { mv.to - 8 };
            captured = s.board[behind];
            s.board[behind] = 0;
        }
        s.board[mv.to] = if mv.promo != 0 { self.own_sign() * mv.promo } else { piece };
        if mv.castle != 0 {
            let home = if self.white_to_move { 56 } else { 0 };
            if mv.castle == 1 {
                s.board[home + 7] = 0;
                s.board[home + 5] = self.own_sign() * WR;
            } else {
                s.board[home] = 0;
                s.board[home + 3] = self.own_sign() * WR;
            }
        }
        if captured != 0 {
            if captured < 0 {
                s.captured_black_points += piece_points(captured);
            } else {
                s.captured_white_points += piece_points(captured);
            }
        }
        // Castling rights decay when kings or rooks move, or rooks fall.
        let clear = |castling: &mut u8, sq: usize| match sq {
            60 => *castling &= !(CASTLE_WK | CASTLE_WQ),
            63 => *castling &= !CASTLE_WK,
            56 => *castling &= !CASTLE_WQ,
            4 => *castling &= !(CASTLE_BK | CASTLE_BQ),
            7 => *castling &= !CASTLE_BK,
            0 => *castling &= !CASTLE_BQ,
            _ => {}
        };
        clear(&mut s.castling, mv.from);
        clear(&mut s.castling, mv.to);
        s.ep_target = if piece.abs() == WP && mv.from.abs_diff(mv.to) == 16 {
            Some((mv.from + mv.to) / 2)
        } else {
            None
        };
        if piece.abs() == WP || captured != 0 {
            s.halfmove_clock = 0;
        } else {
            s.halfmove_clock += 1;
        }
        if !self.white_to_move {
            s.fullmove += 1;
        }
        s.white_to_move = !s.white_to_move;
        s
    }

    pub fn legal_mvs(&self) -> Vec<Mv> {
        let mut moves = self.pseudo_moves();
        moves.extend(self.castle_moves());
        moves
            .into_iter()
            .filter(|&mv| {
                let next = self.apply_raw(mv);
                !next.is_attacked(next.king_square(self.white_to_move), next.white_to_move)
            })
            .collect()
    }

    pub fn legal_moves_san(&self) -> Vec<MoveSpec> {
        let legal = self.legal_mvs();
        legal.iter().map(|&mv| MoveSpec::san(self.san_for(mv, &legal))).collect()
    }

    /// Canonical SAN for a legal move, disambiguated against `legal`.
    pub fn san_for(&self, mv: Mv, legal: &[Mv]) -> String {
        let mut san = String::new();
        if mv.castle == 1 {
            san.push_str("O-O");
        } else if mv.castle == 2 {
            san.push_str("O-O-O");
        } else {
            let piece = self.board[mv.from];
            let is_capture = self.board[mv.to] != 0 || mv.is_ep;
            if piece.abs() == WP {
                if is_capture {
                    san.push((b'a' + (mv.from % 8) as u8) as char);
                }
            } else {
                san.push(piece_letter(piece));
                let rivals: Vec<&Mv> = legal
                    .iter()
                    .filter(|m| {
                        m.to == mv.to
                            && m.from != mv.from
                            && self.board[m.from] == piece
                            && m.castle == 0
                    })
                    .collect();
                if !rivals.is_empty() {
                    let same_file = rivals.iter().any(|m| m.from % 8 == mv.from % 8);
                    let same_rank = rivals.iter().any(|m| m.from / 8 == mv.from / 8);
                    if !same_file {
                        san.push((b'a' + (mv.from % 8) as u8) as char);
                    } else if !same_rank {
                        san.push(char::from_digit(8 - (mv.from / 8) as u32, 10).unwrap());
                    } else {
                        san.push_str(&square_name(mv.from));
                    }
                }
            }
            if is_capture {
                san.push('x');
            }
            san.push_str(&square_name(mv.to));
            if mv.promo != 0 {
                san.push('=');
                san.push(piece_letter(mv.promo));
            }
        }
        let next = self.apply_raw(mv);
        if next.in_check() {
            san.push(if next.legal_mvs().is_empty() { '#' } else { '+' });
        }
        san
    }

    /// Resolve SAN text against this position. Tolerates missing capture
    /// marks, check/mate suffixes, `0-0` castling, and a missing promotion
    /// piece (queen assumed).
    pub fn parse_san(&self, text: &str) -> Result<Mv, String> {
        let cleaned: String = text
            .trim()
            .trim_end_matches(['+', '#', '!', '?', '.'])
            .chars()
            .filter(|c| !c.is_whitespace())
            .collect();
        if cleaned.is_empty() {
            return Err("empty move text".into());
        }
        let legal = self.legal_mvs();
        let upper = cleaned.to_ascii_uppercase().replace('0', "O");
        if upper == "O-O" || upper == "OO" {
            return legal
                .iter()
                .copied()
                .find(|m| m.castle == 1)
                .ok_or_else(|| "kingside castling is not legal here".into());
        }
        if upper == "O-O-O" || upper == "OOO" {
            return legal
                .iter()
                .copied()
                .find(|m| m.castle == 2)
                .ok_or_else(|| "queenside castling is not legal here".into());
        }

        let mut chars: Vec<char> = cleaned.chars().collect();
        // Optional promotion suffix.
        let mut promo = 0i8;
        if chars.len() >= 2 {
            let last = chars[chars.len() - 1].to_ascii_uppercase();
            if let Some(p) = letter_piece(last) {
                if p != WP && p != WK {
                    let before = chars[chars.len() - 2];
                    if before == '=' {
                        promo = p;
                        chars.truncate(chars.len() - 2);
                    } else if before.is_ascii_digit() {
                        promo = p;
                        chars.truncate(chars.len() - 1);
                    }
                }
            }
        }
        // Leading piece letter (uppercase only; a lowercase 'b' is a file).
        let mut piece = WP;
        let mut i = 0;
        if let Some(&first) = chars.first() {
            if first.is_ascii_uppercase() {
                piece = letter_piece(first).ok_or_else(|| format!("unknown piece {first:?}"))?;
                i = 1;
            }
        }
        let rest: String = chars[i..].iter().collect::<String>().replace('x', "");
        if rest.len() < 2 {
            return Err(format!("unparseable move {text:?}"));
        }
        let dest = parse_square(&rest[rest.len() - 2..])
            .ok_or_else(|| format!("bad destination in {text:?}"))?;
        let hint = &rest[..rest.len() - 2];
        let mut hint_file: Option<usize> = None;
        let mut hint_rank: Option<usize> = None;
        for ch in hint.chars() {
            if ('a'..='h').contains(&ch) {
                hint_file = Some((ch as u8 - b'a') as usize);
            } else if ('1'..='8').contains(&ch) {
                hint_rank = Some(8 - ch.to_digit(10).unwrap() as usize);
            } else {
                return Err(format!("unparseable move {text:?}"));
            }
        }
        let sign = self.own_sign();
        let matches: Vec<Mv> = legal
            .iter()
            .copied()
            .filter(|m| {
                m.castle == 0
                    && m.to == dest
                    && self.board[m.from] == sign * piece
                    && hint_file.map_or(true, |f| m.from % 8 == f)
                    && hint_rank.map_or(true, |r| m.from / 8 == r)
                    && if promo != 0 {
                        m.promo == promo
                    } else {
                        m.promo == 0 || m.promo == WQ
                    }
            })
            .collect();
        match matches.len() {
            0 => Err(format!("no legal move matches {text:?}")),
            1 => Ok(matches[0]),
            _ => Err(format!("ambiguous move {text:?}")),
        }
    }

    pub fn apply(&self, mv: &MoveSpec) -> Result<ChessState, EngineError> {
        let MovePayload::San(text) = &mv.payload else {
            return Err(EngineError::illegal(mv, "expected algebraic notation"));
        };
        let parsed = self.parse_san(text).map_err(|e| EngineError::illegal(mv, e))?;
        let canonical = self.san_for(parsed, &self.legal_mvs());
        let mut next = self.apply_raw(parsed);
        next.log.push(MoveSpec::san(canonical));
        next.history.push(next.position_key());
        Ok(next)
    }

    pub fn apply_mv(&self, mv: Mv) -> ChessState {
        let canonical = self.san_for(mv, &self.legal_mvs());
        let mut next = self.apply_raw(mv);
        next.log.push(MoveSpec::san(canonical));
        next.history.push(next.position_key());
        next
    }

    /// Repetition key: piece placement, side to move, castling rights, and
    /// the en-passant file but only when the capture is actually playable.
    fn position_key(&self) -> u64 {
        let mut h = 0u64;
        for (i, &p) in self.board.iter().enumerate() {
            if p != 0 {
                h ^= mix64(((i as u64) << 8) | (p as u8 as u64));
            }
        }
        if self.white_to_move {
            h ^= mix64(0x5157);
        }
        h ^= mix64(0x9000 | self.castling as u64);
        if let Some(t) = self.ep_target {
            let playable = self.legal_mvs().iter().any(|m| m.is_ep);
            if playable {
                h ^= mix64(0xA000 | t as u64);
            }
        }
        h
    }

    fn insufficient_material(&self) -> bool {
        let mut bishops = Vec::new();
        let mut knights = 0;
        for (i, &p) in self.board.iter().enumerate() {
            match p.abs() {
                0 | 6 => {}
                3 => bishops.push((i / 8 + i % 8) % 2),
                2 => knights += 1,
                _ => return false, // pawn, rook, or queen on the board
            }
        }
        match (knights, bishops.len()) {
            (0, 0) => true,
            (1, 0) => true,
            (0, _) => bishops.windows(2).all(|w| w[0] == w[1]),
            _ => false,
        }
    }

    pub fn outcome(&self) -> Outcome {
        if self.legal_mvs().is_empty() {
            return if self.in_check() {
                Outcome::Win(if self.white_to_move { Side::Second } else { Side::First })
            } else {
                Outcome::Tie
            };
        }
        if self.halfmove_clock >= 100 || self.insufficient_material() {
            return Outcome::Tie;
        }
        let last = *self.history.last().expect("history is never empty");
        if self.history.iter().filter(|&&k| k == last).count() >= 3 {
            return Outcome::Tie;
        }
        Outcome::Ongoing
    }

    pub fn board(&self) -> BoardMatrix {
        BoardMatrix::from_flat(GameKind::Chess, self.board.clone()).unwrap()
    }

    pub fn fen(&self) -> String {
        let mut fen = String::new();
        for r in 0..8 {
            let mut run = 0;
            for c in 0..8 {
                let p = self.board[r * 8 + c];
                if p == 0 {
                    run += 1;
                    continue;
                }
                if run > 0 {
                    fen.push(char::from_digit(run, 10).unwrap());
                    run = 0;
                }
                let ch = piece_letter(p);
                fen.push(if p > 0 { ch } else { ch.to_ascii_lowercase() });
            }
            if run > 0 {
                fen.push(char::from_digit(run, 10).unwrap());
            }
            if r != 7 {
                fen.push('/');
            }
        }
        fen.push(' ');
        fen.push(if self.white_to_move { 'w' } else { 'b' });
        fen.push(' ');
        if self.castling == 0 {
            fen.push('-');
        } else {
            for (bit, ch) in
                [(CASTLE_WK, 'K'), (CASTLE_WQ, 'Q'), (CASTLE_BK, 'k'), (CASTLE_BQ, 'q')]
            {
                if self.castling & bit != 0 {
                    fen.push(ch);
                }
            }
        }
        fen.push(' ');
        match self.ep_target {
            Some(t) => fen.push_str(&square_name(t)),
            None => fen.push('-'),
        }
        fen.push_str(&format!(" {} {}", self.halfmove_clock, self.fullmove));
        fen
    }

    pub fn from_fen(fen: &str, seed: Seed) -> Result<ChessState, String> {
        let fields: Vec<&str> = fen.split_whitespace().collect();
        if fields.len() < 4 {
            return Err(format!("FEN needs at least 4 fields: {fen:?}"));
        }
        let mut board = vec![0i8; 64];
        let ranks: Vec<&str> = fields[0].split('/').collect();
        if ranks.len() != 8 {
            return Err("FEN board must have 8 ranks".into());
        }
        for (r, rank) in ranks.iter().enumerate() {
            let mut c = 0usize;
            for ch in rank.chars() {
                if let Some(n) = ch.to_digit(10) {
                    c += n as usize;
                } else {
                    let p = letter_piece(ch.to_ascii_uppercase())
                        .ok_or_else(|| format!("bad FEN piece {ch:?}"))?;
                    if c > 7 {
                        return Err("FEN rank overflow".into());
                    }
                    board[r * 8 + c] = if ch.is_ascii_uppercase() { p } else { -p };
                    c += 1;
                }
            }
            if c != 8 {
                return Err("FEN rank underflow".into());
            }
        }
        let mut castling = 0;
        for ch in fields[2].chars() {
            match ch {
                'K' => castling |= CASTLE_WK,
                'Q' => castling |= CASTLE_WQ,
                'k' => castling |= CASTLE_BK,
                'q' => castling |= CASTLE_BQ,
                '-' => {}
                _ => return Err(format!("bad castling field {:?}", fields[2])),
            }
        }
        let ep_target = match fields[3] {
            "-" => None,
            sq => Some(parse_square(sq).ok_or_else(|| format!("bad ep square {sq:?}"))?),
        };
        let mut s = ChessState {
            board,
            white_to_move: fields[1] == "w",
            castling,
            ep_target,
            halfmove_clock: fields.get(4).and_then(|f| f.parse().ok()).unwrap_or(0),
            fullmove: fields.get(5).and_then(|f| f.parse().ok()).unwrap_or(1),
            history: Vec::new(),
            log: Vec::new(),
            seed,
            captured_black_points: 0,
            captured_white_points: 0,
        };
        s.history.push(s.position_key());
        Ok(s)
    }

    pub fn perft(&self, depth: u32) -> u64 {
        if depth == 0 {
            return 1;
        }
        let legal = self.legal_mvs();
        if depth == 1 {
            return legal.len() as u64;
        }
        legal.iter().map(|&m| self.apply_raw(m).perft(depth - 1)).sum()
    }
}
