use std::collections::BTreeMap;

use super::{kernel_or_fallback, series_components, sided, Closure, Strategy};
use crate::arena::{CompoundState, Move, Phase, Variant};
use crate::error::StrategyError;
use crate::kernel::{is_impartial, outcome, sum_value, Outcome};
use crate::Player;

/// Second-player play for `side` on a single series whose partial sums
/// reach the right sign beyond every index: close at such an index and play
/// the kernel strategy on the resulting finite sum.
pub fn partial_sum_sign(side: Player) -> Box<dyn Strategy> {
    sided(side, PartialSumSign { m: BTreeMap::new() })
}

#[derive(Clone)]
struct PartialSumSign {
    /// Closing index chosen for each series before it was closed.
    m: BTreeMap<usize, usize>,
}

impl Strategy for PartialSumSign {
    fn name(&self) -> String {
        "partial_sum_sign".into()
    }

    fn choose(&mut self, state: &CompoundState, _last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        let mut closures = BTreeMap::new();
        for k in series_components(state) {
            let s = state.components[k].as_series().expect("series");
            let from = match &s.phase {
                Phase::Closed { .. } => continue,
                Phase::HalfOpened { owner: Player::Left, .. } => {
                    closures.insert(k, Closure::Upto(s.n().expect("opened")));
                    continue;
                }
                Phase::HalfOpened { .. } => s.n().expect("opened"),
                Phase::Unopened => 0,
            };
            let m = match self.m.get(&k) {
                Some(&m) if m >= from => m,
                _ => s.spec.partial_sum_sign_witness(from, Player::Left).ok_or_else(|| {
                    StrategyError::Precondition(format!("no partial sum of {} beyond {from} is >= 0", s.spec))
                })?,
            };
            self.m.insert(k, m);
            closures.insert(k, Closure::Upto(m));
        }
        kernel_or_fallback(state, &closures)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }
}

/// Second-player play on a series of impartial games. Plain: close at `n`
/// if the head is a first-player win, else at the first later first-player
/// win. Bullet: answer inside the head until it is exhausted.
pub fn impartial_second() -> Box<dyn Strategy> {
    Box::new(ImpartialSecond)
}

#[derive(Clone)]
struct ImpartialSecond;

impl Strategy for ImpartialSecond {
    fn name(&self) -> String {
        "impartial_second".into()
    }

    fn choose(&mut self, state: &CompoundState, _last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        let mut closures = BTreeMap::new();
        for k in series_components(state) {
            let s = state.components[k].as_series().expect("series");
            if s.variant == Variant::Subset {
                return Err(StrategyError::Precondition("impartial play covers plain and bullet series".into()));
            }
            let n = match &s.phase {
                Phase::HalfOpened { owner, .. } if *owner != state.mover => s.n().expect("opened"),
                _ => continue,
            };
            let head = s.virtual_closure(n).ok_or_else(|| StrategyError::Precondition("head is not finite".into()))?;
            if head.iter().any(|&g| !is_impartial(g)) {
                return Err(StrategyError::Precondition(format!("{} has partizan entries", s.spec)));
            }
            let m = if outcome(sum_value(&head)) == Outcome::FirstWins {
                n
            } else {
                s.spec.first_winner_index_after(n).ok_or_else(|| {
                    StrategyError::Precondition(format!("no first-player win after index {n} in {}", s.spec))
                })?
            };
            closures.insert(k, Closure::Upto(m));
        }
        kernel_or_fallback(state, &closures)
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn is_positional(&self) -> bool {
        true
    }
}
