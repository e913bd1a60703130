//! Strategies for series compounds. Each strategy proposes one move at a
//! time and is checked against a bounded adversary by the verifier.

mod bullet;
mod mirror;
mod oracle;
mod ordinal;
mod partial;
mod real;

use std::collections::BTreeMap;

pub use bullet::{bullet_bound_one, bullet_invariance, BoundDirection};
pub use mirror::mirror;
pub use oracle::oracle_strategy;
pub use ordinal::ordinal_series;
pub use partial::{impartial_second, partial_sum_sign};
pub use real::real_series_second;

use crate::arena::{Action, Component, CompoundState, Move, Phase, SeriesState, Summand, Variant};
use crate::error::StrategyError;
use crate::kernel::{grundy, left_only_value, mover_wins, negate, Game};
use crate::numbers::Ordinal;
use crate::Player;

pub trait Strategy: Send {
    fn name(&self) -> String;

    /// Move for `state.mover`, given the opponent's last move. `Ok(None)`
    /// means the strategy has nothing to play.
    fn choose(&mut self, state: &CompoundState, last: Option<&Move>) -> Result<Option<Move>, StrategyError>;

    fn box_clone(&self) -> Box<dyn Strategy>;

    /// Called once with the starting position before any move.
    fn prepare(&mut self, _initial: &CompoundState) -> Result<(), StrategyError> {
        Ok(())
    }

    /// Case labels logged so far.
    fn trace(&self) -> &[String] {
        &[]
    }

    /// Choices depend only on the state and the last move.
    fn is_positional(&self) -> bool {
        false
    }
}

impl Clone for Box<dyn Strategy> {
    fn clone(&self) -> Self {
        self.box_clone()
    }
}

/// Runs a Left strategy for Right on the conjugate position.
#[derive(Clone)]
pub(crate) struct Conjugate<S>(pub S);

impl<S: Strategy + Clone + 'static> Strategy for Conjugate<S> {
    fn name(&self) -> String {
        self.0.name()
    }

    fn choose(&mut self, state: &CompoundState, last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        let neg_last = last.map(Move::negated);
        Ok(self.0.choose(&state.negated(), neg_last.as_ref())?.map(|m| m.negated()))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn prepare(&mut self, initial: &CompoundState) -> Result<(), StrategyError> {
        self.0.prepare(&initial.negated())
    }

    fn trace(&self) -> &[String] {
        self.0.trace()
    }

    fn is_positional(&self) -> bool {
        self.0.is_positional()
    }
}

/// Boxes a Left strategy, conjugating it when it plays for Right.
pub(crate) fn sided<S: Strategy + Clone + 'static>(side: Player, s: S) -> Box<dyn Strategy> {
    match side {
        Player::Left => Box::new(s),
        Player::Right => Box::new(Conjugate(s)),
    }
}

/// How an unsettled series is completed for kernel play.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Closure {
    /// Indexes `0..=m`.
    Upto(usize),
    /// An explicit index set (subset variant).
    Set(Vec<usize>),
}

impl Closure {
    fn indexes(&self) -> Vec<usize> {
        match self {
            Closure::Upto(m) => (0..=*m).collect(),
            Closure::Set(s) => s.clone(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
enum Origin {
    Finite(usize),
    Ordinal(usize, Player),
    Nimber(usize),
    Entry(usize, usize),
}

/// Kernel play on the finite sum obtained by completing each unsettled
/// series as `closures` says (closed series use their heads). Returns
/// `None` when the position has no finite reading, `Some(None)` when no
/// winning move translates into a legal one.
pub(crate) fn closure_play(state: &CompoundState, closures: &BTreeMap<usize, Closure>) -> Option<Option<Move>> {
    let me = state.mover;
    let mut games = Vec::new();
    let mut origins = Vec::new();
    for (k, c) in state.components.iter().enumerate() {
        match c {
            Component::Finite(g) => {
                games.push(*g);
                origins.push(Origin::Finite(k));
            }
            Component::Ordinal(o) => {
                games.push(o.to_form()?);
                origins.push(Origin::Ordinal(k, o.owner));
            }
            Component::Nimber(a) => {
                games.push(Game::nimber(a.as_finite()?));
                origins.push(Origin::Nimber(k));
            }
            Component::Series(s) => {
                let idx: Vec<usize> = match (&s.phase, closures.get(&k)) {
                    (Phase::Closed { head }, _) => head.keys().copied().collect(),
                    (_, Some(cl)) => cl.indexes(),
                    (Phase::HalfOpened { head, .. }, None) => head.keys().copied().collect(),
                    (Phase::Unopened, None) => Vec::new(),
                };
                for i in idx {
                    games.push(s.entry(i).as_form()?);
                    origins.push(Origin::Entry(k, i));
                }
            }
            Component::Limit(_) => return None,
        }
    }
    for (pos, &g) in games.iter().enumerate() {
        for &to in g.options(me).iter() {
            let Some(mv) = translate(state, closures, origins[pos], to) else { continue };
            if state.check_move(&mv).is_err() {
                continue;
            }
            let mut after = games.clone();
            after[pos] = to;
            if !mover_wins(&after, me.opposite()) {
                return Some(Some(mv));
            }
        }
    }
    Some(None)
}

fn translate(state: &CompoundState, closures: &BTreeMap<usize, Closure>, origin: Origin, to: Game) -> Option<Move> {
    let me = state.mover;
    let action = match origin {
        Origin::Finite(_) => Action::Option(to),
        Origin::Ordinal(_, owner) => {
            let v = left_only_value(if owner == Player::Left { to } else { negate(to) })?;
            Action::Ordinal(Ordinal::finite(v))
        }
        Origin::Nimber(_) => Action::Ordinal(Ordinal::finite(grundy(to)?)),
        Origin::Entry(k, i) => {
            let s = state.components[k].as_series()?;
            let to = summand_target(&s.entry(i), to);
            series_action(s, me, closures.get(&k), i, to)?
        }
    };
    let component = match origin {
        Origin::Finite(k) | Origin::Ordinal(k, _) | Origin::Nimber(k) | Origin::Entry(k, _) => k,
    };
    Some(Move::new(component, action))
}

/// Keeps ordinal entries ordinal after a finite move.
fn summand_target(from: &Summand, to: Game) -> Summand {
    match from {
        Summand::Ordinal(o) => {
            let v = left_only_value(if o.owner == Player::Left { to } else { negate(to) });
            match v {
                Some(v) => Summand::Ordinal(crate::arena::OrdinalGame::new(Ordinal::finite(v), o.owner)),
                None => Summand::Form(to),
            }
        }
        Summand::Form(_) => Summand::Form(to),
    }
}

/// The action that moves entry `i` of `s` to `to` for `me`, settling the
/// series per `closure` where a choice is required.
pub(crate) fn series_action(s: &SeriesState, me: Player, closure: Option<&Closure>, i: usize, to: Summand) -> Option<Action> {
    let in_head = s.head().is_some_and(|h| h.contains_key(&i));
    match &s.phase {
        Phase::Closed { .. } => Some(Action::PlayWithin { index: i, to }),
        Phase::HalfOpened { owner, .. } if *owner == me => {
            in_head.then_some(Action::PlayWithin { index: i, to })
        }
        Phase::HalfOpened { head, .. } => {
            let beyond = match closure {
                Some(Closure::Upto(m)) => Some(*m) > s.n(),
                Some(Closure::Set(set)) => set.iter().any(|j| !head.contains_key(j)),
                None => false,
            };
            if in_head && s.variant == Variant::Bullet && !beyond {
                return Some(Action::PlayWithin { index: i, to });
            }
            match (s.variant, closure?) {
                (Variant::Subset, Closure::Set(set)) => Some(Action::SubsetClose {
                    set: set.iter().copied().filter(|j| !head.contains_key(j)).collect(),
                    index: i,
                    to,
                }),
                (Variant::Subset, Closure::Upto(m)) => Some(Action::SubsetClose {
                    set: (0..=*m).filter(|j| !head.contains_key(j)).collect(),
                    index: i,
                    to,
                }),
                (_, Closure::Upto(m)) => Some(Action::Close { m: *m, index: i, to }),
                (_, Closure::Set(_)) => None,
            }
        }
        Phase::Unopened => match (s.variant, closure?) {
            (Variant::Subset, Closure::Set(set)) => Some(Action::SubsetOpen { set: set.clone(), index: i, to }),
            (Variant::Subset, Closure::Upto(m)) => Some(Action::SubsetOpen { set: (0..=*m).collect(), index: i, to }),
            (_, Closure::Upto(m)) => Some(Action::Open { n: *m, index: i, to }),
            (_, Closure::Set(_)) => None,
        },
    }
}

/// Largest index fixed anywhere in the compound.
pub(crate) fn max_fixed_index(state: &CompoundState) -> usize {
    state
        .components
        .iter()
        .filter_map(|c| c.as_series().and_then(SeriesState::n))
        .max()
        .unwrap_or(0)
}

/// Some legal move, for when a strategy has no winning continuation.
pub(crate) fn fallback_move(state: &CompoundState) -> Option<Move> {
    state.legal_moves(max_fixed_index(state) + 1).into_iter().next()
}

/// Kernel play on a compound whose series are all closed or completed by
/// `closures`; falls back to any legal move when the kernel finds no win.
pub(crate) fn kernel_or_fallback(
    state: &CompoundState,
    closures: &BTreeMap<usize, Closure>,
) -> Result<Option<Move>, StrategyError> {
    match closure_play(state, closures) {
        Some(Some(mv)) => Ok(Some(mv)),
        Some(None) => Ok(fallback_move(state)),
        None => Err(StrategyError::Precondition(format!("position has no finite reading: {state}"))),
    }
}

/// Indexes of the series components.
pub(crate) fn series_components(state: &CompoundState) -> Vec<usize> {
    (0..state.components.len())
        .filter(|&k| state.components[k].as_series().is_some())
        .collect()
}

/// Builds a strategy by its catalogue name.
pub fn by_name(name: &str, side: Player) -> Result<Box<dyn Strategy>, StrategyError> {
    Ok(match name {
        "mirror" => mirror(),
        "partial_sum_sign" => partial_sum_sign(side),
        "impartial_second" => impartial_second(),
        "ordinal_series" => ordinal_series(),
        "real_series_second" => real_series_second(side),
        "bullet_invariance" => bullet_invariance(),
        "bullet_bound_one_geq" => bullet_bound_one(BoundDirection::AtLeastOne),
        "bullet_bound_one_leq" => bullet_bound_one(BoundDirection::AtMostOne),
        _ => {
            if let Some(b) = name.strip_prefix("oracle") {
                let own = b.trim_start_matches(['(', ':']).trim_end_matches(')');
                let own = if own.is_empty() { 6 } else {
                    own.parse().map_err(|_| StrategyError::Precondition(format!("bad oracle bound in {name}")))?
                };
                return Ok(oracle_strategy(own));
            }
            return Err(StrategyError::Precondition(format!("unknown strategy {name}")));
        }
    })
}

/// Catalogue names accepted by [`by_name`].
pub const CATALOGUE: &[&str] = &[
    "mirror",
    "partial_sum_sign",
    "impartial_second",
    "ordinal_series",
    "real_series_second",
    "bullet_invariance",
    "bullet_bound_one_geq",
    "bullet_bound_one_leq",
    "oracle",
];
