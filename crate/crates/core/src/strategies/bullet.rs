use std::collections::BTreeMap;

use super::{fallback_move, kernel_or_fallback, series_action, series_components, Closure, Strategy};
use crate::arena::{Action, CompoundState, Move, Phase, SeriesState, Summand, Variant};
use crate::error::StrategyError;
use crate::kernel::{lt, mover_wins, outcome, sum_value, Game, Outcome};
use crate::Player;

/// Second-player play on `Σ G_i − Σ H_i` with `G_i ≡ H_i`: every move is
/// answered inside the same index pair so that each pair stays a zero.
pub fn bullet_invariance() -> Box<dyn Strategy> {
    Box::new(Invariance { trace: Vec::new() })
}

#[derive(Clone)]
struct Invariance {
    trace: Vec<String>,
}

fn two_series(state: &CompoundState) -> Result<(usize, usize), StrategyError> {
    match series_components(state).as_slice() {
        &[a, b] if state.components.len() == 2 => Ok((a, b)),
        _ => Err(StrategyError::Precondition(format!("expected exactly two series, got {state}"))),
    }
}

fn series_index(action: &Action) -> Option<usize> {
    match action {
        Action::Open { index, .. } | Action::PlayWithin { index, .. } | Action::Close { index, .. } => Some(*index),
        _ => None,
    }
}

fn rank(a: &Action) -> u8 {
    match a {
        Action::PlayWithin { .. } => 0,
        Action::Open { .. } => 1,
        _ => 2,
    }
}

impl Strategy for Invariance {
    fn name(&self) -> String {
        "bullet_invariance".into()
    }

    fn prepare(&mut self, initial: &CompoundState) -> Result<(), StrategyError> {
        let (a, b) = two_series(initial)?;
        let sa = initial.components[a].as_series().expect("series");
        let sb = initial.components[b].as_series().expect("series");
        if sa.variant != sb.variant || sa.variant == Variant::Subset {
            return Err(StrategyError::Precondition("both series must share the plain or bullet variant".into()));
        }
        for i in 0..16 {
            let pair = [sa.entry(i).as_form(), sb.entry(i).as_form()];
            let [Some(x), Some(y)] = pair else {
                return Err(StrategyError::Precondition(format!("entry {i} is not finite")));
            };
            if outcome(sum_value(&[x, y])) != Outcome::SecondWins {
                return Err(StrategyError::Precondition(format!("entries {i} do not cancel")));
            }
        }
        Ok(())
    }

    fn choose(&mut self, state: &CompoundState, last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        let me = state.mover;
        let (a, b) = two_series(state)?;
        let Some(last) = last else {
            return Err(StrategyError::Precondition("pairwise answers need an opponent move".into()));
        };
        let i = series_index(&last.action)
            .ok_or_else(|| StrategyError::Precondition(format!("unexpected move {last}")))?;
        let sa = state.components[a].as_series().expect("series");
        let sb = state.components[b].as_series().expect("series");
        let m = [sa.n(), sb.n(), Some(i)].into_iter().flatten().max().expect("index present");
        let closure = Closure::Upto(m);
        let (Some(ga), Some(gb)) = (sa.entry(i).as_form(), sb.entry(i).as_form()) else {
            return Err(StrategyError::Precondition(format!("pair {i} is not finite")));
        };
        let mut candidates: Vec<Move> = Vec::new();
        for (k, s, g, other) in [(a, sa, ga, gb), (b, sb, gb, ga)] {
            for &t in g.options(me).iter() {
                if mover_wins(&[t, other], me.opposite()) {
                    continue;
                }
                if let Some(act) = series_action(s, me, Some(&closure), i, Summand::Form(t)) {
                    let mv = Move::new(k, act);
                    if state.check_move(&mv).is_ok() {
                        candidates.push(mv);
                    }
                }
            }
        }
        candidates.sort_by_key(|mv| rank(&mv.action));
        let Some(reply) = candidates.into_iter().next() else {
            self.trace.push("stuck".into());
            return Ok(fallback_move(state));
        };
        let opened = matches!(last.action, Action::Open { .. });
        let first_open = opened && [sa, sb].iter().filter(|s| s.phase == Phase::Unopened).count() == 1;
        let label = if opened && !first_open {
            "b2"
        } else if opened && reply.component != last.component {
            "a"
        } else if opened {
            "b"
        } else if matches!(reply.action, Action::Open { .. }) {
            "b1"
        } else {
            "pair"
        };
        self.trace.push(label.into());
        Ok(Some(reply))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn trace(&self) -> &[String] {
        &self.trace
    }

    fn is_positional(&self) -> bool {
        true
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoundDirection {
    /// Left, second, on `Σ G_i − 1` with every `G_i > 0`.
    AtLeastOne,
    /// Right, second, on `Σ G_i − 1` with every partial sum below 1.
    AtMostOne,
}

/// Comparison of a series with 1 by answering inside the head.
pub fn bullet_bound_one(direction: BoundDirection) -> Box<dyn Strategy> {
    Box::new(BoundOne { direction })
}

#[derive(Clone)]
struct BoundOne {
    direction: BoundDirection,
}

fn single_series(state: &CompoundState) -> Result<(usize, &SeriesState), StrategyError> {
    match series_components(state).as_slice() {
        &[k] => Ok((k, state.components[k].as_series().expect("series"))),
        _ => Err(StrategyError::Precondition("expected exactly one series".into())),
    }
}

impl BoundOne {
    fn at_least(&self, state: &CompoundState, last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        let (k, s) = single_series(state)?;
        let moved_outside = last.is_some_and(|m| m.component != k);
        let closures: BTreeMap<usize, Closure> = match &s.phase {
            Phase::Unopened => [(k, Closure::Upto(0))].into(),
            Phase::HalfOpened { owner: Player::Right, head } if !moved_outside => {
                // Keep the head a Left win with Right to move.
                let games: Vec<Game> = head.values().map(|x| x.as_form()).collect::<Option<_>>().ok_or_else(|| {
                    StrategyError::Precondition("head is not finite".into())
                })?;
                for (pos, (&i, _)) in head.iter().enumerate() {
                    for &t in games[pos].options(Player::Left).iter() {
                        let mut after = games.clone();
                        after[pos] = t;
                        if !mover_wins(&after, Player::Right) {
                            return Ok(Some(Move::new(k, Action::PlayWithin { index: i, to: Summand::Form(t) })));
                        }
                    }
                }
                return Ok(fallback_move(state));
            }
            Phase::HalfOpened { owner: Player::Right, .. } => [(k, Closure::Upto(s.n().expect("opened") + 1))].into(),
            _ => BTreeMap::new(),
        };
        kernel_or_fallback(state, &closures)
    }

    fn at_most(&self, state: &CompoundState) -> Result<Option<Move>, StrategyError> {
        let (k, s) = single_series(state)?;
        let closures: BTreeMap<usize, Closure> = match s.n() {
            Some(n) => [(k, Closure::Upto(n))].into(),
            None => BTreeMap::new(),
        };
        kernel_or_fallback(state, &closures)
    }
}

impl Strategy for BoundOne {
    fn name(&self) -> String {
        match self.direction {
            BoundDirection::AtLeastOne => "bullet_bound_one_geq".into(),
            BoundDirection::AtMostOne => "bullet_bound_one_leq".into(),
        }
    }

    fn prepare(&mut self, initial: &CompoundState) -> Result<(), StrategyError> {
        let (_, s) = single_series(initial)?;
        let forms: Vec<Game> = (0..16).map(|i| s.entry(i).as_form()).collect::<Option<_>>().ok_or_else(|| {
            StrategyError::Precondition("entries must be finite forms".into())
        })?;
        match self.direction {
            BoundDirection::AtLeastOne => {
                if s.variant != Variant::Bullet {
                    return Err(StrategyError::Precondition("requires the bullet variant".into()));
                }
                if let Some(i) = forms.iter().position(|&g| outcome(g) != Outcome::LeftWins) {
                    return Err(StrategyError::Precondition(format!("G_{i} is not positive")));
                }
            }
            BoundDirection::AtMostOne => {
                for m in 0..forms.len() {
                    if !lt(sum_value(&forms[..=m]), Game::integer(1)) {
                        return Err(StrategyError::Precondition(format!("partial sum up to {m} is not below 1")));
                    }
                }
            }
        }
        Ok(())
    }

    fn choose(&mut self, state: &CompoundState, last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        let want = match self.direction {
            BoundDirection::AtLeastOne => Player::Left,
            BoundDirection::AtMostOne => Player::Right,
        };
        if state.mover != want {
            return Err(StrategyError::Precondition(format!("this comparison is played by {}", want.name())));
        }
        match self.direction {
            BoundDirection::AtLeastOne => self.at_least(state, last),
            BoundDirection::AtMostOne => self.at_most(state),
        }
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn is_positional(&self) -> bool {
        true
    }
}
