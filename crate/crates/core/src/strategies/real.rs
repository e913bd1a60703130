use std::collections::{BTreeMap, BTreeSet};

use super::{kernel_or_fallback, sided, Closure, Strategy};
use crate::arena::{Action, Component, CompoundState, Move, Phase, SeriesState, Summand, Variant, SCAN_HORIZON};
use crate::error::StrategyError;
use crate::kernel::Game;
use crate::numbers::{number_value, Dyadic, Rational, Sign, SignSeq};
use crate::Player;

/// How many indexes past a witness the exact inequalities are re-checked.
const RECHECK: usize = 32;

/// Second-player play for `side` on `Σ r_i − r` where `Σ r_i` is an
/// absolutely convergent dyadic series with classical sum `r`.
pub fn real_series_second(side: Player) -> Box<dyn Strategy> {
    sided(side, RealSeries::default())
}

/// The choices fixed when Right first moves on `−r`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Commit {
    p: u32,
    n: usize,
    ells: Vec<usize>,
}

#[derive(Clone, Default)]
struct RealSeries {
    r: Option<Dyadic>,
    close: Option<Closure>,
    commit: Option<Commit>,
    used: usize,
    trace: Vec<String>,
}

fn layout(state: &CompoundState) -> Result<(usize, usize), StrategyError> {
    let mut series = None;
    let mut finite = None;
    for (k, c) in state.components.iter().enumerate() {
        match c {
            Component::Series(_) if series.is_none() => series = Some(k),
            Component::Finite(_) if finite.is_none() => finite = Some(k),
            _ => return Err(StrategyError::Precondition(format!("expected a series against a number, got {state}"))),
        }
    }
    series
        .zip(finite)
        .ok_or_else(|| StrategyError::Precondition(format!("expected a series against a number, got {state}")))
}

fn finite_value(state: &CompoundState, f: usize) -> Result<(Dyadic, Game), StrategyError> {
    let Component::Finite(g) = state.components[f] else { unreachable!("checked in layout") };
    number_value(g)
        .map(|v| (v, g))
        .ok_or_else(|| StrategyError::Precondition(format!("{g} is not a number")))
}

fn entry_value(s: &SeriesState, i: usize) -> Result<Dyadic, StrategyError> {
    s.entry(i)
        .as_form()
        .and_then(number_value)
        .ok_or_else(|| StrategyError::Precondition(format!("entry {i} of {} is not a number", s.spec)))
}

fn pow2_inv(p: u32) -> Rational {
    Rational::new(1, 1i128 << p)
}

/// Left option of the number `x` that costs Left less than `2^-p`: zero for
/// a positive entry, otherwise the prefix before the `(p+1)`-th plus sign.
fn cheap_target(x: Dyadic, p: u32) -> Option<SignSeq> {
    if x > Dyadic::ZERO {
        return Some(SignSeq::empty());
    }
    let signs = SignSeq::from_dyadic(x).symbols()?;
    let cut = signs
        .iter()
        .enumerate()
        .filter(|(_, &s)| s == Sign::Plus)
        .nth(p as usize)
        .map(|(k, _)| k)?;
    Some(SignSeq::from_symbols(&signs[..cut]))
}

impl RealSeries {
    fn commit(&mut self, s: &SeriesState, r: Dyadic, f_now: (Dyadic, Game)) -> Result<Commit, StrategyError> {
        let spec = &s.spec;
        let s_val = -f_now.0;
        let h = f_now.1.birthday();
        let gap = (r - s_val).to_rational() / Rational::from_integer(2 * (h as i128 + 1));
        let p = (0..120u32)
            .find(|&p| pow2_inv(p) < gap)
            .ok_or_else(|| StrategyError::Precondition("gap below 2^-120".into()))?;
        let n2 = (0..=SCAN_HORIZON)
            .find(|&n| spec.tail_sup(n).is_some_and(|t| t.to_rational() < pow2_inv(p)))
            .ok_or_else(|| StrategyError::Precondition(format!("no tail of {spec} stays below 2^-{p}")))?;
        let factor = if s.variant == Variant::Subset { 2 } else { 1 };
        let mid = (r + s_val).to_rational() / Rational::from_integer(2);
        let n1 = (0..=SCAN_HORIZON)
            .find(|&n| {
                spec.tail_abs_sum(n + 1)
                    .is_some_and(|t| r.to_rational() - t.to_rational() * Rational::from_integer(factor) > mid)
            })
            .ok_or_else(|| StrategyError::Precondition(format!("partial sums of {spec} never clear the midpoint")))?;
        let ells = spec.nonzero_indices_from(n2, h as usize + 1);
        if ells.len() != h as usize + 1 {
            return Err(StrategyError::Precondition(format!("{spec} has fewer than {} nonzero entries", h + 1)));
        }
        // Re-check the tail bounds on actual entries.
        let mut partial: Dyadic = (0..n1).map(|i| entry_value(s, i)).sum::<Result<Dyadic, _>>()?;
        for m in n1..n1 + RECHECK {
            partial = partial + entry_value(s, m)?;
            if partial.to_rational() <= mid {
                return Err(StrategyError::Precondition(format!("partial sum at {m} is not above {mid}")));
            }
        }
        for i in n2..n2 + RECHECK {
            if entry_value(s, i)?.abs().to_rational() >= pow2_inv(p) {
                return Err(StrategyError::Precondition(format!("entry {i} is not below 2^-{p}")));
            }
        }
        let n = n1.max(n2).max(*ells.last().expect("h+1 >= 1 entries"));
        self.trace.push(format!("b: p={p} h={h} n'={n1} n''={n2} n={n} l={ells:?}"));
        Ok(Commit { p, n, ells })
    }

    fn next_ell(&mut self, s: &SeriesState) -> Result<Option<(usize, Summand)>, StrategyError> {
        let c = self.commit.as_ref().expect("committed");
        let Some(&ell) = c.ells.get(self.used) else { return Ok(None) };
        let x = entry_value(s, ell)?;
        let target = cheap_target(x, c.p)
            .ok_or_else(|| StrategyError::Precondition(format!("entry {ell} has too few plus signs")))?
            .realize()
            .map_err(|e| StrategyError::Precondition(e.to_string()))?;
        let entry = s.entry(ell).as_form().expect("numbers are forms");
        if !entry.left().contains(&target) {
            return Err(StrategyError::Precondition(format!("{target} is not a Left option of entry {ell}")));
        }
        self.used += 1;
        Ok(Some((ell, Summand::Form(target))))
    }

    /// Least closure past the head whose value exceeds `r`.
    fn closing(&self, s: &SeriesState, r: Dyadic) -> Result<Closure, StrategyError> {
        let head: BTreeSet<usize> = s.head().expect("opened").keys().copied().collect();
        let start = *head.iter().next_back().expect("nonempty head");
        for m in start..=start + SCAN_HORIZON {
            let set: BTreeSet<usize> = head.iter().copied().chain(0..=m).collect();
            let total: Dyadic = set.iter().map(|&i| entry_value(s, i)).sum::<Result<Dyadic, _>>()?;
            if total > r {
                return Ok(match s.variant {
                    Variant::Subset => Closure::Set(set.into_iter().collect()),
                    _ => Closure::Upto(m),
                });
            }
        }
        Err(StrategyError::Precondition(format!("no closure of {} exceeds {r}", s.spec)))
    }
}

impl Strategy for RealSeries {
    fn name(&self) -> String {
        "real_series_second".into()
    }

    fn prepare(&mut self, initial: &CompoundState) -> Result<(), StrategyError> {
        let (s, f) = layout(initial)?;
        let series = initial.components[s].as_series().expect("series");
        if series.spec.eventually_zero() == Some(true) {
            return Err(StrategyError::Precondition(format!(
                "{} is eventually zero; compare by mirroring instead",
                series.spec
            )));
        }
        let r = -finite_value(initial, f)?.0;
        let sum = series
            .spec
            .dyadic_sum()
            .ok_or_else(|| StrategyError::Precondition(format!("no exact classical sum for {}", series.spec)))?;
        if sum != r {
            return Err(StrategyError::Precondition(format!("classical sum {sum} differs from {r}")));
        }
        self.r = Some(r);
        Ok(())
    }

    fn choose(&mut self, state: &CompoundState, _last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        let (k, f) = layout(state)?;
        let r = match self.r {
            Some(r) => r,
            None => {
                self.prepare(state)?;
                self.r.expect("prepared")
            }
        };
        let s = state.components[k].as_series().expect("series");
        match &s.phase {
            Phase::Closed { .. } => {
                self.trace.push("b1".into());
                kernel_or_fallback(state, &BTreeMap::new())
            }
            Phase::HalfOpened { owner: Player::Right, .. } => {
                let close = match &self.close {
                    Some(c) => c.clone(),
                    None => {
                        self.trace.push("a".into());
                        self.closing(s, r)?
                    }
                };
                self.close = Some(close.clone());
                kernel_or_fallback(state, &[(k, close)].into())
            }
            Phase::Unopened => {
                let now = finite_value(state, f)?;
                if now.0 == -r {
                    return Err(StrategyError::Precondition("this strategy moves second".into()));
                }
                let commit = self.commit(s, r, now)?;
                let n = commit.n;
                self.commit = Some(commit);
                let (i, to) = self.next_ell(s)?.expect("at least one index reserved");
                let action = match s.variant {
                    Variant::Subset => Action::SubsetOpen { set: (0..=n).collect(), index: i, to },
                    _ => Action::Open { n, index: i, to },
                };
                Ok(Some(Move::new(k, action)))
            }
            Phase::HalfOpened { .. } => {
                self.trace.push("b2".into());
                match self.next_ell(s)? {
                    Some((i, to)) => Ok(Some(Move::new(k, Action::PlayWithin { index: i, to }))),
                    None => kernel_or_fallback(state, &BTreeMap::new()),
                }
            }
        }
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn trace(&self) -> &[String] {
        &self.trace
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{Builtin, SequenceSpec};

    fn geom(v: Variant) -> CompoundState {
        CompoundState::new(
            vec![
                Component::Finite(Game::integer(-1)),
                Component::Series(SeriesState::new(v, SequenceSpec::builtin(Builtin::GeomHalf))),
            ],
            Player::Right,
        )
    }

    #[test]
    fn commitment_for_geometric_halves() {
        let st = geom(Variant::Plain);
        let mut strat = RealSeries::default();
        strat.prepare(&st).unwrap();
        let mv = Move::new(0, Action::Option(Game::zero()));
        let after = st.apply(&mv).unwrap();
        let reply = strat.choose(&after, Some(&mv)).unwrap().unwrap();
        assert_eq!(strat.commit, Some(Commit { p: 2, n: 2, ells: vec![2] }));
        assert!(matches!(reply.action, Action::Open { n: 2, index: 2, .. }));
        assert!(after.apply(&reply).is_ok());
    }

    #[test]
    fn cheap_targets() {
        let d = |s: &str| s.parse::<Dyadic>().unwrap();
        assert_eq!(cheap_target(d("1/8"), 2), Some(SignSeq::empty()));
        let t = cheap_target(d("-1/8"), 2).unwrap();
        assert_eq!(t.value(), Some(d("-1/4")));
    }

    #[test]
    fn eventually_zero_is_rejected() {
        let z = CompoundState::new(
            vec![
                Component::Series(SeriesState::new(
                    Variant::Plain,
                    SequenceSpec::new(crate::arena::SeqExpr::Const(Game::zero())),
                )),
                Component::Finite(Game::zero()),
            ],
            Player::Right,
        );
        assert!(RealSeries::default().prepare(&z).is_err());
    }
}
