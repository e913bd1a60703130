mod common;

use proptest::prelude::*;

use common::{arb_game, Brute};
use gameseries::kernel::{
    canonical_form, conway_eq, disjunctive_sum, grundy, is_impartial, leq, negate, outcome, sum_value,
};
use gameseries::{Game, Outcome};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn game_minus_itself_is_second_win(g in arb_game(3, 3)) {
        prop_assert_eq!(outcome(disjunctive_sum(&[g, negate(g)])), Outcome::SecondWins);
    }

    #[test]
    fn leq_is_a_preorder(a in arb_game(3, 2), b in arb_game(3, 2), c in arb_game(3, 2)) {
        prop_assert!(leq(a, a));
        if leq(a, b) && leq(b, c) {
            prop_assert!(leq(a, c));
        }
    }

    #[test]
    fn canonical_form_is_idempotent_and_equal(g in arb_game(3, 3)) {
        let c = canonical_form(g);
        prop_assert_eq!(canonical_form(c), c);
        prop_assert!(Brute::new().equal(g, c));
    }

    #[test]
    fn outcome_follows_from_order(g in arb_game(3, 3)) {
        let z = Game::zero();
        let expected = match (leq(z, g), leq(g, z)) {
            (true, true) => Outcome::SecondWins,
            (true, false) => Outcome::LeftWins,
            (false, true) => Outcome::RightWins,
            (false, false) => Outcome::FirstWins,
        };
        prop_assert_eq!(outcome(g), expected);
        prop_assert_eq!(outcome(g), Brute::new().outcome(g));
    }

    #[test]
    fn impartial_zero_grundy_is_second_win(g in arb_game(3, 3)) {
        let imp = impartialize(g);
        prop_assert!(is_impartial(imp));
        let gr = grundy(imp).expect("impartial");
        prop_assert_eq!(gr == 0, outcome(imp) == Outcome::SecondWins);
    }

    #[test]
    fn sums_commute_and_associate(a in arb_game(2, 2), b in arb_game(2, 2), c in arb_game(2, 2)) {
        prop_assert!(conway_eq(disjunctive_sum(&[a, b]), disjunctive_sum(&[b, a])));
        let left = disjunctive_sum(&[disjunctive_sum(&[a, b]), c]);
        let right = disjunctive_sum(&[a, disjunctive_sum(&[b, c])]);
        prop_assert!(conway_eq(left, right));
        prop_assert!(conway_eq(sum_value(&[a, b, c]), left));
    }
}

/// Gives both players the union of the options, recursively.
fn impartialize(g: Game) -> Game {
    let opts: Vec<Game> = g.left().iter().chain(g.right().iter()).map(|&x| impartialize(x)).collect();
    Game::new(opts.clone(), opts)
}

#[test]
fn birthday_two_corpus_is_exhaustive() {
    // Exactly 22 values are born by day 2.
    let corpus = common::small_corpus();
    let mut brute = Brute::new();
    let values = corpus.iter().filter(|&&g| g.birthday() <= 2).fold(Vec::<Game>::new(), |mut acc, &g| {
        if !acc.iter().any(|&r| brute.equal(r, g)) {
            acc.push(g);
        }
        acc
    });
    assert_eq!(values.len(), 22);
}
