use std::collections::{BTreeMap, BTreeSet};

use super::{closure_play, kernel_or_fallback, max_fixed_index, series_action, series_components, Closure, Strategy};
use crate::arena::{Action, Component, CompoundState, Move, SeqExpr, SeriesState, Summand, Variant};
use crate::error::StrategyError;
use crate::kernel::{mover_wins, outcome, Game, Outcome};

/// Second-player mirroring: answers each move in the partner component, or
/// in the same slot for components equal to zero. Compounds whose series
/// are all eventually zero are played by the kernel on a closure past the
/// last nonzero entry.
pub fn mirror() -> Box<dyn Strategy> {
    Box::new(Mirror { plan: None })
}

#[derive(Clone)]
struct Mirror {
    plan: Option<Plan>,
}

#[derive(Clone, Debug)]
enum Plan {
    Pairs {
        partner: BTreeMap<usize, usize>,
        /// Series pairs `(a, b)` with `b` the negated nonzero entries of `a`.
        compressed: BTreeSet<(usize, usize)>,
        zero: BTreeSet<usize>,
    },
    EventuallyZero,
}

/// Entrywise negation over a window, exact for periodic sequences.
fn negation_pair(a: &SeriesState, b: &SeriesState) -> bool {
    if a.variant != b.variant {
        return false;
    }
    if b.spec.text() == a.spec.negated().text() {
        return true;
    }
    let window = match (a.spec.periodic(), b.spec.periodic()) {
        (Some((sa, pa)), Some((sb, pb))) => sa.max(sb) + pa.len() * pb.len(),
        _ => return false,
    };
    (0..=window).all(|i| b.spec.get(i) == a.spec.get(i).negated())
}

fn compressed_pair(a: &SeriesState, b: &SeriesState) -> bool {
    a.variant == b.variant
        && matches!(b.spec.expr(), SeqExpr::Neg(inner)
            if matches!(inner.as_ref(), SeqExpr::Nonzero(x) if **x == *a.spec.expr()))
}

fn plan(state: &CompoundState) -> Result<Plan, StrategyError> {
    let comps = &state.components;
    let mut partner = BTreeMap::new();
    let mut compressed = BTreeSet::new();
    let mut zero = BTreeSet::new();
    for a in 0..comps.len() {
        if partner.contains_key(&a) {
            continue;
        }
        let found = (a + 1..comps.len()).filter(|b| !partner.contains_key(b)).find_map(|b| {
            match (&comps[a], &comps[b]) {
                (Component::Series(x), Component::Series(y)) => {
                    if negation_pair(x, y) {
                        Some((b, None))
                    } else if compressed_pair(x, y) {
                        Some((b, Some((a, b))))
                    } else if compressed_pair(y, x) {
                        Some((b, Some((b, a))))
                    } else {
                        None
                    }
                }
                (x, y) if x.as_series().is_none() && *y == x.negated() && !matches!(x, Component::Limit(_)) => {
                    Some((b, None))
                }
                _ => None,
            }
        });
        if let Some((b, comp)) = found {
            partner.insert(a, b);
            partner.insert(b, a);
            if let Some(p) = comp {
                compressed.insert(p);
            }
            continue;
        }
        match &comps[a] {
            Component::Finite(g) if outcome(*g) == Outcome::SecondWins => {
                zero.insert(a);
            }
            _ => {}
        }
    }
    let unmatched: Vec<usize> = (0..comps.len())
        .filter(|k| !partner.contains_key(k) && !zero.contains(k))
        .collect();
    if unmatched.is_empty() {
        return Ok(Plan::Pairs { partner, compressed, zero });
    }
    let series = series_components(state);
    let all_eventually_zero = !series.is_empty()
        && series.iter().all(|&k| {
            comps[k].as_series().is_some_and(|s| s.spec.last_nonzero().is_some() && s.variant != Variant::Subset)
        });
    if all_eventually_zero {
        return Ok(Plan::EventuallyZero);
    }
    Err(StrategyError::Precondition(format!(
        "components {unmatched:?} have no mirror partner and are not zero"
    )))
}

/// Index bookkeeping for a compressed pair `(a, b)`: entry `i` of `a`
/// faces entry `phi(i)` of `b` when `G_i` is not zero.
struct Reindex<'a> {
    a: &'a SeriesState,
}

impl Reindex<'_> {
    fn nonzero(&self, i: usize) -> bool {
        !self.a.spec.get(i).is_zero()
    }

    /// Number of nonzero entries among `G_0 … G_m`.
    fn count(&self, m: usize) -> usize {
        (0..=m).filter(|&i| self.nonzero(i)).count()
    }

    fn phi(&self, i: usize) -> Option<usize> {
        self.nonzero(i).then(|| if i == 0 { 0 } else { self.count(i - 1) })
    }

    fn phi_inv(&self, k: usize) -> Option<usize> {
        let v = self.a.spec.nonzero_indices_from(0, k + 1);
        (v.len() == k + 1).then(|| v[k])
    }
}

fn moved_entry(action: &Action) -> Option<(usize, &Summand)> {
    match action {
        Action::Open { index, to, .. }
        | Action::PlayWithin { index, to }
        | Action::Close { index, to, .. }
        | Action::SubsetOpen { index, to, .. }
        | Action::SubsetClose { index, to, .. } => Some((*index, to)),
        _ => None,
    }
}

/// Second-player reply inside one zero entry.
fn zero_reply(g: Game, me: crate::Player) -> Option<Game> {
    g.options(me).iter().copied().find(|&t| !mover_wins(&[t], me.opposite()))
}

impl Mirror {
    fn pairs_reply(
        &self,
        state: &CompoundState,
        last: &Move,
        partner: &BTreeMap<usize, usize>,
        compressed: &BTreeSet<(usize, usize)>,
        zero: &BTreeSet<usize>,
    ) -> Result<Option<Move>, StrategyError> {
        let me = state.mover;
        let x = last.component;
        let comps = &state.components;
        if zero.contains(&x) {
            let Component::Finite(g) = comps[x] else { unreachable!("zero slots are finite") };
            return Ok(zero_reply(g, me).map(|t| Move::new(x, Action::Option(t))));
        }
        let y = *partner
            .get(&x)
            .ok_or_else(|| StrategyError::Precondition(format!("component {x} is unpaired")))?;
        let (Component::Series(sx), Component::Series(sy)) = (&comps[x], &comps[y]) else {
            let action = match &last.action {
                Action::Option(g) => Action::Option(crate::kernel::negate(*g)),
                Action::Ordinal(v) => Action::Ordinal(v.clone()),
                other => return Err(StrategyError::Precondition(format!("cannot mirror {other:?}"))),
            };
            return Ok(Some(Move::new(y, action)));
        };
        let (i, to) = moved_entry(&last.action)
            .ok_or_else(|| StrategyError::Precondition("series move without an entry".into()))?;
        let target = to.negated();
        let pair = compressed.iter().find(|&&(a, b)| (a, b) == (x, y) || (a, b) == (y, x)).copied();
        let Some((a, _)) = pair else {
            let closure = match sx.variant {
                Variant::Subset => Closure::Set(sx.head().map(|h| h.keys().copied().collect()).unwrap_or_default()),
                _ => Closure::Upto(sx.n().unwrap_or(i).max(sy.n().unwrap_or(0)).max(i)),
            };
            return Ok(series_action(sy, me, Some(&closure), i, target).map(|act| Move::new(y, act)));
        };
        let sa = comps[a].as_series().expect("paired series");
        let r = Reindex { a: sa };
        let x_is_a = x == a;
        let mapped = if x_is_a { r.phi(i) } else { r.phi_inv(i) };
        let Some(k) = mapped else {
            // Zero slot: answer in the same entry.
            let Some(g) = sx.entry(i).as_form() else {
                return Err(StrategyError::Precondition(format!("entry {i} is not finite")));
            };
            let Some(t) = zero_reply(g, me) else { return Ok(None) };
            let m = extent_for(&r, sy, sx, !x_is_a).max(i);
            return Ok(series_action(sx, me, Some(&Closure::Upto(m)), i, Summand::Form(t)).map(|act| Move::new(x, act)));
        };
        let m = extent_for(&r, sx, sy, x_is_a).max(k);
        Ok(series_action(sy, me, Some(&Closure::Upto(m)), k, target).map(|act| Move::new(y, act)))
    }
}

/// The index at which to settle `target` so that it matches `source`;
/// `target_is_b` says which side of the compressed pair `target` is.
fn extent_for(r: &Reindex<'_>, source: &SeriesState, target: &SeriesState, target_is_b: bool) -> usize {
    let src = source.n().unwrap_or(0);
    let own = target.n().unwrap_or(0);
    if target_is_b {
        r.count(src).saturating_sub(1).max(own)
    } else {
        r.phi_inv(src).unwrap_or(src).max(own)
    }
}

impl Strategy for Mirror {
    fn name(&self) -> String {
        "mirror".into()
    }

    fn choose(&mut self, state: &CompoundState, last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        if self.plan.is_none() {
            self.plan = Some(plan(state)?);
        }
        match self.plan.as_ref().expect("plan set") {
            Plan::EventuallyZero => {
                let mut m = max_fixed_index(state);
                for k in series_components(state) {
                    let s = state.components[k].as_series().expect("series");
                    m = m.max(s.spec.last_nonzero().flatten().unwrap_or(0));
                }
                let closures = series_components(state).into_iter().map(|k| (k, Closure::Upto(m))).collect();
                kernel_or_fallback(state, &closures)
            }
            Plan::Pairs { partner, compressed, zero } => {
                let Some(last) = last else {
                    if state.finite_games().is_some() {
                        return Ok(closure_play(state, &BTreeMap::new()).flatten());
                    }
                    return Err(StrategyError::Precondition("mirroring needs an opponent move to answer".into()));
                };
                self.pairs_reply(state, last, partner, compressed, zero)
            }
        }
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn prepare(&mut self, initial: &CompoundState) -> Result<(), StrategyError> {
        self.plan = Some(plan(initial)?);
        Ok(())
    }

    fn is_positional(&self) -> bool {
        true
    }
}
