mod common;

use proptest::prelude::*;

use common::arb_game;
use gameseries::arena::CompoundState;
use gameseries::parse::{parse_compound, parse_game, parse_move, parse_sequence};
use gameseries::Player;

fn arb_sequence() -> impl Strategy<Value = String> {
    let leaf = prop_oneof![
        prop::sample::select(vec!["stars", "ones", "geom_half", "pm_one", "canon_naturals"]).prop_map(String::from),
        arb_game(2, 2).prop_map(|g| format!("const({})", g.expanded())),
    ];
    leaf.prop_recursive(3, 12, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(|s| format!("neg({s})")),
            inner.clone().prop_map(|s| format!("nonzero({s})")),
            inner.clone().prop_map(|s| format!("limit({s})")),
            proptest::collection::vec(inner.clone(), 2..4).prop_map(|v| format!("interleave({})", v.join(","))),
            (proptest::collection::vec(arb_game(2, 2), 1..3), inner).prop_map(|(head, tail)| {
                let head: Vec<String> = head.iter().map(|g| g.expanded()).collect();
                format!("list([{}],tail={tail})", head.join(","))
            }),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn games_print_and_parse_back(g in arb_game(3, 3)) {
        prop_assert_eq!(parse_game(&g.to_string()).unwrap(), g);
        prop_assert_eq!(parse_game(&g.expanded()).unwrap(), g);
    }

    #[test]
    fn sequences_print_and_parse_back(text in arb_sequence()) {
        let spec = parse_sequence(&text).unwrap();
        let again = parse_sequence(spec.text()).unwrap();
        prop_assert_eq!(again.text(), spec.text());
        for i in 0..6 {
            prop_assert_eq!(again.get(i), spec.get(i));
        }
    }

    #[test]
    fn compounds_and_moves_print_and_parse_back(
        seq in arb_sequence(), g in arb_game(2, 2), variant in prop::sample::select(vec!["plain", "bullet", "subset"]),
    ) {
        let text = format!("{variant}({seq}) + game({g})");
        let comps = parse_compound(&text).unwrap();
        let shown: Vec<String> = comps.iter().map(|c| c.to_string()).collect();
        prop_assert_eq!(parse_compound(&shown.join(" + ")).unwrap(), comps.clone());
        for mover in [Player::Left, Player::Right] {
            for mv in CompoundState::new(comps.clone(), mover).legal_moves(2) {
                prop_assert_eq!(parse_move(&mv.to_string()).unwrap(), mv);
            }
        }
    }
}
