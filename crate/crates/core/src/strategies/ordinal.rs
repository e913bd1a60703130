use std::collections::BTreeSet;

use super::{fallback_move, Strategy};
use crate::arena::{Action, Component, CompoundState, Move, OrdinalGame, Phase, Summand, SCAN_HORIZON};
use crate::error::StrategyError;
use crate::kernel::{left_only_value, negate};
use crate::numbers::Ordinal;
use crate::Player;

/// Second-player play on `Σ α_i − β` for ordinal-valued series. Left keeps
/// the natural sum of the head at least `β`; Right answers every Left move
/// by lowering `β` to the head's natural sum.
pub fn ordinal_series() -> Box<dyn Strategy> {
    Box::new(OrdinalSeries)
}

#[derive(Clone)]
struct OrdinalSeries;

/// The series component and the opposing ordinal component.
fn layout(state: &CompoundState) -> Result<(usize, usize), StrategyError> {
    let mut series = None;
    let mut other = None;
    for (k, c) in state.components.iter().enumerate() {
        match c {
            Component::Series(_) if series.is_none() => series = Some(k),
            Component::Ordinal(o) if o.owner == Player::Right && other.is_none() => other = Some(k),
            Component::Finite(g) if other.is_none() && left_only_value(negate(*g)).is_some() => other = Some(k),
            _ => {
                return Err(StrategyError::Precondition(format!(
                    "expected one ordinal series against one negative ordinal, got {state}"
                )))
            }
        }
    }
    match (series, other) {
        (Some(s), Some(o)) => Ok((s, o)),
        _ => Err(StrategyError::Precondition(format!("no ordinal series and opposing ordinal in {state}"))),
    }
}

fn opposing_value(c: &Component) -> Ordinal {
    match c {
        Component::Ordinal(o) => o.value.clone(),
        Component::Finite(g) => Ordinal::finite(left_only_value(negate(*g)).expect("checked in layout")),
        _ => unreachable!("checked in layout"),
    }
}

fn value_of(s: &Summand) -> Result<Ordinal, StrategyError> {
    s.ordinal_value()
        .ok_or_else(|| StrategyError::Precondition(format!("entry {s:?} is not an ordinal")))
}

/// Whether the series holds Left ordinals (otherwise its conjugate does).
fn left_oriented(state: &CompoundState, s: usize) -> bool {
    let series = state.components[s].as_series().expect("series");
    (0..16).any(|i| {
        let e = series.entry(i);
        !e.is_zero() && e.ordinal_value().is_some()
    })
}

/// Highest exponent where `s` and `b` have different coefficients.
fn top_difference(s: &Ordinal, b: &Ordinal) -> Option<Ordinal> {
    let exps: BTreeSet<Ordinal> = s.terms().iter().chain(b.terms()).map(|t| t.0.clone()).collect();
    exps.into_iter().rev().find(|e| s.coefficient(e) != b.coefficient(e))
}

/// Lowers the entry `alpha` so that the natural sum `s` drops to at least `beta`.
fn attack_target(alpha: &Ordinal, d: &Ordinal, beta: &Ordinal) -> Ordinal {
    let mut terms: Vec<(Ordinal, u64)> = alpha.terms().iter().filter(|t| t.0 > *d).cloned().collect();
    let c = alpha.coefficient(d) - 1;
    if c > 0 {
        terms.push((d.clone(), c));
    }
    terms.extend(beta.below(d).terms().iter().cloned());
    Ordinal::from_terms(terms)
}

/// Summand reached from `from` with a value at least `gamma` and below it.
fn lowered(from: &Summand, gamma: &Ordinal) -> Option<Summand> {
    match from {
        Summand::Ordinal(o) => Some(Summand::Ordinal(OrdinalGame::new(gamma.clone(), o.owner))),
        Summand::Form(g) => {
            let target = gamma.as_finite()?;
            g.left()
                .iter()
                .filter_map(|&x| left_only_value(x).map(|v| (v, x)))
                .filter(|&(v, _)| v >= target)
                .min_by_key(|&(v, _)| v)
                .map(|(_, x)| Summand::Form(x))
        }
    }
}

impl OrdinalSeries {
    fn attack(&self, state: &CompoundState, s: usize, o: usize) -> Result<Option<Move>, StrategyError> {
        let series = state.components[s].as_series().expect("series");
        let beta = opposing_value(&state.components[o]);
        let (indexes, open_at): (Vec<usize>, Option<usize>) = match &series.phase {
            Phase::Unopened => {
                let mut acc = Ordinal::zero();
                let mut found = None;
                for m in 0..=SCAN_HORIZON {
                    acc = acc.natural_sum(&value_of(&series.entry(m))?);
                    if acc > beta {
                        found = Some(m);
                        break;
                    }
                }
                let m = found.ok_or_else(|| {
                    StrategyError::Precondition(format!("no partial natural sum exceeds {beta}"))
                })?;
                ((0..=m).collect(), Some(m))
            }
            Phase::HalfOpened { owner: Player::Left, head } | Phase::Closed { head } => {
                (head.keys().copied().collect(), None)
            }
            Phase::HalfOpened { .. } => return Ok(fallback_move(state)),
        };
        let values: Vec<Ordinal> = indexes.iter().map(|&i| value_of(&series.entry(i))).collect::<Result<_, _>>()?;
        let total = values.iter().fold(Ordinal::zero(), |a, v| a.natural_sum(v));
        if total <= beta {
            return Ok(fallback_move(state));
        }
        let d = top_difference(&total, &beta).expect("total exceeds beta");
        let (pos, alpha) = values
            .iter()
            .enumerate()
            .find(|(_, v)| v.coefficient(&d) > 0)
            .expect("some entry carries the leading difference");
        let i = indexes[pos];
        let gamma = attack_target(alpha, &d, &beta);
        let Some(to) = lowered(&series.entry(i), &gamma) else { return Ok(fallback_move(state)) };
        let action = match open_at {
            Some(n) => Action::Open { n, index: i, to },
            None => Action::PlayWithin { index: i, to },
        };
        Ok(Some(Move::new(s, action)))
    }

    fn defend(&self, state: &CompoundState, s: usize, o: usize) -> Result<Option<Move>, StrategyError> {
        let series = state.components[s].as_series().expect("series");
        let beta = opposing_value(&state.components[o]);
        let Some(head) = series.head() else { return Ok(fallback_move(state)) };
        let total = head
            .values()
            .map(value_of)
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .fold(Ordinal::zero(), |a, v| a.natural_sum(&v));
        if total >= beta {
            return Ok(fallback_move(state));
        }
        let action = match &state.components[o] {
            Component::Ordinal(_) => Action::Ordinal(total),
            Component::Finite(g) => {
                let k = total.as_finite().expect("below a finite ordinal");
                let x = g.right().iter().copied().find(|&x| left_only_value(negate(x)) == Some(k));
                match x {
                    Some(x) => Action::Option(x),
                    None => return Ok(fallback_move(state)),
                }
            }
            _ => unreachable!("checked in layout"),
        };
        Ok(Some(Move::new(o, action)))
    }

    fn play(&self, state: &CompoundState) -> Result<Option<Move>, StrategyError> {
        let (s, o) = layout(state)?;
        match state.mover {
            Player::Left => self.attack(state, s, o),
            Player::Right => self.defend(state, s, o),
        }
    }
}

impl Strategy for OrdinalSeries {
    fn name(&self) -> String {
        "ordinal_series".into()
    }

    fn choose(&mut self, state: &CompoundState, _last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        let (s, _) = match layout(state) {
            Ok(l) => l,
            Err(_) => {
                let neg = state.negated();
                layout(&neg)?;
                return Ok(self.play(&neg)?.map(|m| m.negated()));
            }
        };
        if left_oriented(state, s) {
            self.play(state)
        } else {
            Ok(self.play(&state.negated())?.map(|m| m.negated()))
        }
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn is_positional(&self) -> bool {
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Game;

    fn o(terms: &[(u64, u64)]) -> Ordinal {
        Ordinal::from_terms(terms.iter().map(|&(e, c)| (Ordinal::finite(e), c)).collect())
    }

    #[test]
    fn attack_keeps_the_sum_above_beta() {
        // S = ω^2 + ω·2 + 3, β = ω^2 + ω + 5: lower an ω-carrying entry.
        let alpha = o(&[(1, 2), (0, 1)]);
        let beta = o(&[(2, 1), (1, 1), (0, 5)]);
        let s = o(&[(2, 1), (1, 2), (0, 3)]);
        let d = top_difference(&s, &beta).unwrap();
        assert_eq!(d, Ordinal::finite(1));
        let g = attack_target(&alpha, &d, &beta);
        assert_eq!(g, o(&[(1, 1), (0, 5)]));
        let after = s.natural_sub(&alpha).unwrap().natural_sum(&g);
        assert!(after >= beta && g < alpha);
    }

    #[test]
    fn lowered_integer_forms() {
        let three = Summand::Form(Game::integer(3));
        assert_eq!(lowered(&three, &Ordinal::finite(1)), Some(Summand::Form(Game::integer(2))));
        assert_eq!(lowered(&three, &Ordinal::finite(3)), None);
    }
}
