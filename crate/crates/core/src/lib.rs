//! A deterministic benchmark harness that evaluates vision-language models
//! on six board games across four task types: board transcription
//! (perceiving), multiple-choice questions about a position, single-move
//! rule following, and full games against scripted opponents.
//!
//! Everything downstream of a `(seed, game, task)` triple — boards, images,
//! prompts, question options, opponent replies — is a pure function of that
//! triple, so datasets and built-in-agent results regenerate byte-for-byte.

pub mod board;
pub mod engines;
pub mod opponents;
pub mod render;
pub mod stategen;

pub use board::{
    coord_to_label, label_to_coord, matrix_to_text, BoardError, BoardMatrix, CellCoord, GameKind,
    Seed,
};
pub use engines::{EngineError, GameState, MovePayload, MoveSpec, Outcome, Side};
pub use opponents::{opponent_move, SearchConfig};
pub use render::{render_matrix, render_state, sha256_hex, Theme};
pub use stategen::{random_legal_state, random_perception_board, GenProfile};

pub mod tasks;
pub mod parse_eval;
pub mod ratings;
pub mod client;
