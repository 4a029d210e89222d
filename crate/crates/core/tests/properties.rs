//! Property tests over the text boundaries: anything the harness prints it
//! must re-read exactly, and nothing a model prints may crash a parser.

use boardbench::parse_eval::{extract_section, parse_answer, parse_matrix, parse_move};
use boardbench::ratings::star_map;
use boardbench::{
    coord_to_label, label_to_coord, matrix_to_text, BoardMatrix, CellCoord, GameKind, Seed,
};
use proptest::prelude::*;

fn any_game() -> impl Strategy<Value = GameKind> {
    prop::sample::select(GameKind::ALL.to_vec())
}

fn any_matrix() -> impl Strategy<Value = BoardMatrix> {
    any_game().prop_flat_map(|kind| {
        let alphabet: Vec<i8> = kind.alphabet().to_vec();
        prop::collection::vec(prop::sample::select(alphabet), kind.cell_count())
            .prop_map(move |cells| BoardMatrix::from_flat(kind, cells).unwrap())
    })
}

proptest! {
    #[test]
    fn parsers_never_panic_on_arbitrary_text(text in ".*", kind in any_game()) {
        let _ = parse_matrix(&text, kind);
        let _ = parse_answer(&text);
        let _ = parse_move(&text, kind);
        let _ = extract_section(&text, "Observation");
        let _ = extract_section(&text, "Movement");
    }

    #[test]
    fn matrix_text_round_trips(m in any_matrix()) {
        let text = matrix_to_text(&m);
        let parsed = parse_matrix(&format!("Game State: {text}"), m.kind());
        prop_assert_eq!(parsed.matrix(), Some(&m));
    }

    #[test]
    fn matrix_survives_surrounding_chatter(m in any_matrix(), prefix in "[a-zA-Z ,.]{0,60}", suffix in "[a-zA-Z ,.]{0,60}") {
        let wrapped = format!("{prefix}\nGame State: {}\n{suffix}", matrix_to_text(&m));
        prop_assert_eq!(parse_matrix(&wrapped, m.kind()).matrix(), Some(&m));
    }

    #[test]
    fn cell_labels_round_trip(kind in any_game(), row_f in 0.0f64..1.0, col_f in 0.0f64..1.0) {
        let coord = CellCoord {
            kind,
            row: (row_f * kind.rows() as f64) as usize,
            col: (col_f * kind.cols() as f64) as usize,
        };
        let label = coord_to_label(coord);
        prop_assert_eq!(label_to_coord(kind, &label), Ok(coord));
    }

    #[test]
    fn seed_children_are_deterministic_and_distinct(root in any::<u64>(), tag in "[a-z]{1,8}", index in 0u64..1000) {
        let a = Seed(root).child(&tag, index);
        let b = Seed(root).child(&tag, index);
        prop_assert_eq!(a, b);
        prop_assert_ne!(Seed(root).child(&tag, index), Seed(root).child(&tag, index + 1));
    }

    #[test]
    fn star_map_lands_on_half_steps(x in 0.5f64..=5.0) {
        let stars = star_map(x);
        prop_assert!((0.5..=5.0).contains(&stars));
        let doubled = stars * 2.0;
        prop_assert_eq!(doubled, doubled.round());
        prop_assert!((stars - x).abs() <= 0.25 + 1e-12);
    }
}
