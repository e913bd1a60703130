mod common;

use proptest::prelude::*;

use common::Brute;
use gameseries::arena::{Action, Component, CompoundState, Phase, Variant};
use gameseries::kernel::mover_wins;
use gameseries::parse::parse_compound;
use gameseries::Player;

const BOUND: usize = 3;

const COMPOUNDS: [&str; 5] = [
    "plain(stars) + game(*)",
    "plain(ups) + game(v)",
    "bullet(pm_one)",
    "bullet(stars) + game(-1)",
    "subset(geom_half) + game(-1)",
];

fn start(k: usize, mover: Player) -> CompoundState {
    CompoundState::new(parse_compound(COMPOUNDS[k]).unwrap(), mover)
}

/// Checks the series protocol for every legal move of the mover.
fn check_protocol(state: &CompoundState) -> Result<(), TestCaseError> {
    let p = state.mover;
    for mv in state.legal_moves(BOUND) {
        prop_assert!(state.check_move(&mv).is_ok(), "{mv}");
        let Component::Series(s) = &state.components[mv.component] else { continue };
        if let Phase::HalfOpened { owner, .. } = &s.phase {
            let closes = matches!(mv.action, Action::Close { .. } | Action::SubsetClose { .. });
            // The player who fixed n never fixes the second index.
            prop_assert!(!(closes && *owner == p), "{mv}");
            // Under plain play the other player must close at once.
            if s.variant == Variant::Plain && *owner != p {
                prop_assert!(closes, "{mv}");
            }
        }
    }
    Ok(())
}

/// Once everything is settled, arena play is the disjunctive sum.
fn check_settled(state: &CompoundState, brute: &mut Brute) -> Result<(), TestCaseError> {
    let Some(games) = state.finite_games() else { return Ok(()) };
    prop_assert_eq!(mover_wins(&games, state.mover), brute.mover_wins(&games, state.mover));
    let arena_moves = state.legal_moves(BOUND).len();
    let sum_moves: usize = games.iter().map(|g| g.options(state.mover).len()).sum();
    prop_assert_eq!(arena_moves, sum_moves);
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_playouts_respect_the_protocol(
        k in 0..COMPOUNDS.len(),
        left_first in any::<bool>(),
        picks in proptest::collection::vec(any::<prop::sample::Index>(), 1..24),
    ) {
        let mut brute = Brute::new();
        let mut state = start(k, if left_first { Player::Left } else { Player::Right });
        for pick in picks {
            check_protocol(&state)?;
            check_settled(&state, &mut brute)?;
            let moves = state.legal_moves(BOUND);
            if moves.is_empty() {
                break;
            }
            let before = state.progress_measure();
            state = state.apply(&moves[pick.index(moves.len())]).unwrap();
            prop_assert!(state.progress_measure() < before);
        }
    }

    #[test]
    fn negation_swaps_the_players(k in 0..COMPOUNDS.len(), left_first in any::<bool>()) {
        let s = start(k, if left_first { Player::Left } else { Player::Right });
        let mut a: Vec<String> = s.legal_moves(BOUND).iter().map(|m| m.negated().to_string()).collect();
        let mut b: Vec<String> = s.negated().legal_moves(BOUND).iter().map(|m| m.to_string()).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}
