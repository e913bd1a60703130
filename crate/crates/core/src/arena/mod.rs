//! Playable infinite-sum arenas: series components in the plain, bullet and
//! subset variants, ordinal and nimber components, and disjunctive compounds
//! of them.

mod moves;
mod sequence;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use moves::{Action, Move};
pub use sequence::{Builtin, SeqExpr, SequenceSpec, SCAN_HORIZON};

use crate::kernel::{left_only_value, negate, outcome, Game, Outcome};
use crate::limits::LimitArena;
use crate::numbers::Ordinal;
use crate::Player;

/// A transfinite ordinal game: only `owner` moves, to any smaller ordinal.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrdinalGame {
    pub value: Ordinal,
    pub owner: Player,
}

impl OrdinalGame {
    pub fn new(value: Ordinal, owner: Player) -> Self {
        OrdinalGame { value, owner }
    }

    pub fn negated(&self) -> Self {
        OrdinalGame::new(self.value.clone(), self.owner.opposite())
    }

    /// Finite form with the same value, when the ordinal is finite.
    pub fn to_form(&self) -> Option<Game> {
        let k = self.value.as_finite()? as i64;
        Some(Game::integer(if self.owner == Player::Left { k } else { -k }))
    }
}

impl fmt::Display for OrdinalGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.owner {
            Player::Left => write!(f, "ord({})", self.value),
            Player::Right => write!(f, "neg(ord({}))", self.value),
        }
    }
}

/// One term of a series: a finite form, or an ordinal for ordinal-valued sequences.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Summand {
    Form(Game),
    Ordinal(OrdinalGame),
}

impl Summand {
    pub fn negated(&self) -> Summand {
        match self {
            Summand::Form(g) => Summand::Form(negate(*g)),
            Summand::Ordinal(o) => Summand::Ordinal(o.negated()),
        }
    }

    pub fn as_form(&self) -> Option<Game> {
        match self {
            Summand::Form(g) => Some(*g),
            Summand::Ordinal(o) => o.to_form(),
        }
    }

    /// Ordinal value when the summand is a (Left) ordinal.
    pub fn ordinal_value(&self) -> Option<Ordinal> {
        match self {
            Summand::Form(g) => left_only_value(*g).map(Ordinal::finite),
            Summand::Ordinal(o) if o.owner == Player::Left || o.value.is_zero() => {
                Some(o.value.clone())
            }
            Summand::Ordinal(_) => None,
        }
    }

    /// Second-player win (Conway zero).
    pub fn is_zero(&self) -> bool {
        match self {
            Summand::Form(g) => outcome(*g) == Outcome::SecondWins,
            Summand::Ordinal(o) => o.value.is_zero(),
        }
    }

    pub fn has_options(&self, p: Player) -> bool {
        match self {
            Summand::Form(g) => !g.options(p).is_empty(),
            Summand::Ordinal(o) => o.owner == p && !o.value.is_zero(),
        }
    }

    /// Options for `p`; ordinal descents are sampled up to `bound`.
    pub fn options(&self, p: Player, bound: usize) -> Vec<Summand> {
        match self {
            Summand::Form(g) => g.options(p).iter().map(|&x| Summand::Form(x)).collect(),
            Summand::Ordinal(o) if o.owner == p => o
                .value
                .descent_samples(bound as u64)
                .into_iter()
                .map(|v| Summand::Ordinal(OrdinalGame::new(v, p)))
                .collect(),
            Summand::Ordinal(_) => Vec::new(),
        }
    }

    /// Exact option test, not limited by any sampling bound.
    pub fn has_option(&self, p: Player, to: &Summand) -> bool {
        match (self, to) {
            (Summand::Form(g), Summand::Form(x)) => g.options(p).contains(x),
            (Summand::Ordinal(o), Summand::Ordinal(t)) => {
                o.owner == p && t.owner == p && t.value < o.value
            }
            (Summand::Ordinal(o), Summand::Form(x)) => {
                // A finite ordinal target may be written as its integer form.
                o.owner == p && {
                    let k = left_only_value(if p == Player::Left { *x } else { negate(*x) });
                    k.is_some_and(|k| Ordinal::finite(k) < o.value)
                }
            }
            _ => false,
        }
    }

    /// Rank used by the termination measure.
    pub fn birthday(&self) -> Ordinal {
        match self {
            Summand::Form(g) => Ordinal::finite(g.birthday() as u64),
            Summand::Ordinal(o) => o.value.clone(),
        }
    }
}

impl fmt::Display for Summand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Summand::Form(g) => write!(f, "{g}"),
            Summand::Ordinal(o) => write!(f, "{o}"),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Plain,
    Bullet,
    Subset,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Plain => "plain",
            Variant::Bullet => "bullet",
            Variant::Subset => "subset",
        }
    }
}

/// Progress of one series. Heads map indexes to current positions; for the
/// plain and bullet variants the keys are exactly `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Phase {
    Unopened,
    HalfOpened {
        owner: Player,
        head: BTreeMap<usize, Summand>,
    },
    Closed {
        head: BTreeMap<usize, Summand>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeriesState {
    pub variant: Variant,
    pub spec: Arc<SequenceSpec>,
    pub phase: Phase,
}

impl SeriesState {
    pub fn new(variant: Variant, spec: Arc<SequenceSpec>) -> Self {
        SeriesState {
            variant,
            spec,
            phase: Phase::Unopened,
        }
    }

    pub fn head(&self) -> Option<&BTreeMap<usize, Summand>> {
        match &self.phase {
            Phase::Unopened => None,
            Phase::HalfOpened { head, .. } | Phase::Closed { head } => Some(head),
        }
    }

    /// The index fixed by the opener (largest head key).
    pub fn n(&self) -> Option<usize> {
        self.head().and_then(|h| h.keys().next_back().copied())
    }

    pub fn owner(&self) -> Option<Player> {
        match &self.phase {
            Phase::HalfOpened { owner, .. } => Some(*owner),
            _ => None,
        }
    }

    /// Current position of `G_i`: the head entry if present, else the generator value.
    pub fn entry(&self, i: usize) -> Summand {
        self.head()
            .and_then(|h| h.get(&i).cloned())
            .unwrap_or_else(|| self.spec.get(i))
    }

    /// Forms of `G_0 … G_m` as they would stand if the series closed at `m`.
    pub fn virtual_closure(&self, m: usize) -> Option<Vec<Game>> {
        (0..=m).map(|i| self.entry(i).as_form()).collect()
    }

    /// Forms of the entries indexed by `set` (subset variant closure).
    pub fn virtual_subset_closure(&self, set: &[usize]) -> Option<Vec<Game>> {
        set.iter().map(|&i| self.entry(i).as_form()).collect()
    }

    pub fn negated(&self) -> Self {
        let neg_head = |h: &BTreeMap<usize, Summand>| -> BTreeMap<usize, Summand> {
            h.iter().map(|(k, v)| (*k, v.negated())).collect()
        };
        SeriesState {
            variant: self.variant,
            spec: self.spec.negated(),
            phase: match &self.phase {
                Phase::Unopened => Phase::Unopened,
                Phase::HalfOpened { owner, head } => Phase::HalfOpened {
                    owner: owner.opposite(),
                    head: neg_head(head),
                },
                Phase::Closed { head } => Phase::Closed { head: neg_head(head) },
            },
        }
    }
}

impl fmt::Display for SeriesState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.variant.name(), self.spec)?;
        let write_head = |f: &mut fmt::Formatter<'_>, head: &BTreeMap<usize, Summand>| {
            write!(f, "[")?;
            for (k, (i, s)) in head.iter().enumerate() {
                if k > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{i}:{s}")?;
            }
            write!(f, "]")
        };
        match &self.phase {
            Phase::Unopened => Ok(()),
            Phase::HalfOpened { owner, head } => {
                let tag = if *owner == Player::Left { "L" } else { "R" };
                match self.variant {
                    Variant::Subset => write!(f, "/{tag}")?,
                    _ => write!(f, "/{tag},n={}", self.n().unwrap_or(0))?,
                }
                write_head(f, head)
            }
            Phase::Closed { head } => {
                write!(f, "/closed")?;
                write_head(f, head)
            }
        }
    }
}

/// One component of a disjunctive compound.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Component {
    Finite(Game),
    Ordinal(OrdinalGame),
    /// Nimber `*α`: either player moves to any smaller `*β`.
    Nimber(Ordinal),
    Series(SeriesState),
    Limit(LimitArena),
}

impl Component {
    pub fn negated(&self) -> Component {
        match self {
            Component::Finite(g) => Component::Finite(negate(*g)),
            Component::Ordinal(o) => Component::Ordinal(o.negated()),
            Component::Nimber(a) => Component::Nimber(a.clone()),
            Component::Series(s) => Component::Series(s.negated()),
            Component::Limit(l) => Component::Limit(l.negated()),
        }
    }

    /// The equivalent finite form, when the component is already finite.
    pub fn as_finite(&self) -> Option<Vec<Game>> {
        match self {
            Component::Finite(g) => Some(vec![*g]),
            Component::Ordinal(o) => o.to_form().map(|g| vec![g]),
            Component::Nimber(a) => a.as_finite().map(|k| vec![Game::nimber(k)]),
            Component::Series(s) => match &s.phase {
                Phase::Closed { head } => head.values().map(Summand::as_form).collect(),
                _ => None,
            },
            Component::Limit(_) => None,
        }
    }

    pub fn as_series(&self) -> Option<&SeriesState> {
        match self {
            Component::Series(s) => Some(s),
            _ => None,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Finite(g) => write!(f, "game({g})"),
            Component::Ordinal(o) => write!(f, "{o}"),
            Component::Nimber(a) => write!(f, "nim({a})"),
            Component::Series(s) => write!(f, "{s}"),
            Component::Limit(l) => write!(f, "{l}"),
        }
    }
}

/// A disjunctive compound together with the player to move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CompoundState {
    pub components: Vec<Component>,
    pub mover: Player,
}

impl CompoundState {
    pub fn new(components: Vec<Component>, mover: Player) -> Self {
        CompoundState { components, mover }
    }

    pub fn with_mover(&self, mover: Player) -> Self {
        CompoundState {
            components: self.components.clone(),
            mover,
        }
    }

    /// The conjugate position: every component negated, colors swapped.
    pub fn negated(&self) -> Self {
        CompoundState {
            components: self.components.iter().map(Component::negated).collect(),
            mover: self.mover.opposite(),
        }
    }

    /// All components as finite forms, when every index choice is settled.
    pub fn finite_games(&self) -> Option<Vec<Game>> {
        let mut out = Vec::new();
        for c in &self.components {
            out.extend(c.as_finite()?);
        }
        Some(out)
    }

    /// Lexicographic termination measure: pending index choices, then the
    /// natural sum of the birthdays of everything already fixed.
    pub fn progress_measure(&self) -> (usize, Ordinal) {
        let mut pending = 0;
        let mut total = Ordinal::zero();
        for c in &self.components {
            match c {
                Component::Finite(g) => {
                    total = total.natural_sum(&Ordinal::finite(g.birthday() as u64))
                }
                Component::Ordinal(o) => total = total.natural_sum(&o.value),
                Component::Nimber(a) => total = total.natural_sum(a),
                Component::Limit(_) => pending += 1,
                Component::Series(s) => {
                    pending += match s.phase {
                        Phase::Unopened => 2,
                        Phase::HalfOpened { .. } => 1,
                        Phase::Closed { .. } => 0,
                    };
                    for v in s.head().into_iter().flat_map(|h| h.values()) {
                        total = total.natural_sum(&v.birthday());
                    }
                }
            }
        }
        (pending, total)
    }

    /// Natural sum of birthdays; undefined while a series is unopened.
    pub fn birthday_measure(&self) -> Result<Ordinal, crate::ArenaError> {
        if self.components.iter().any(|c| {
            matches!(c, Component::Series(SeriesState { phase: Phase::Unopened, .. }))
                || matches!(c, Component::Limit(_))
        }) {
            return Err(crate::ArenaError::Unopened);
        }
        Ok(self.progress_measure().1)
    }
}

impl fmt::Display for CompoundState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.components.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{c}")?;
        }
        if self.components.is_empty() {
            write!(f, "game(0)")?;
        }
        Ok(())
    }
}
