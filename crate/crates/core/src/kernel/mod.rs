//! Finite partizan game forms: construction, order, outcomes, canonical forms
//! and the finite-index compounds.

mod classify;
mod compound;
mod form;
mod ops;

pub use classify::{
    classify, grundy, is_dicotic, is_impartial, is_number, left_only_value, subpositions,
    Classification,
};
pub use compound::{alt_sum, SumKind};
pub use form::Game;
pub use ops::{
    canonical_form, conway_eq, disjunctive_sum, leq, lt, mover_wins, negate, outcome, sum_value,
    winning_move, Outcome,
};

/// Outcome by minimax-free lookup through the order: `g ≡ 0` is a second-player win, etc.
pub fn outcome_via_order(g: Game) -> Outcome {
    let z = Game::zero();
    match (leq(z, g), leq(g, z)) {
        (true, true) => Outcome::SecondWins,
        (true, false) => Outcome::LeftWins,
        (false, true) => Outcome::RightWins,
        (false, false) => Outcome::FirstWins,
    }
}
