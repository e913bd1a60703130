use std::collections::BTreeMap;
use std::fmt;

use super::{Component, CompoundState, OrdinalGame, Phase, SeriesState, Summand, Variant};
use crate::error::ArenaError;
use crate::kernel::{negate, Game};
use crate::numbers::Ordinal;
use crate::Player;

/// Component-local move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Action {
    /// Move on a finite component.
    Option(Game),
    /// New value of an ordinal or nimber component.
    Ordinal(Ordinal),
    /// Fix `n` and move on `G_index`, `index ≤ n`.
    Open { n: usize, index: usize, to: Summand },
    /// Move inside the head without fixing an index.
    PlayWithin { index: usize, to: Summand },
    /// Fix `m ≥ n` and move on `G_index`, `index ≤ m`.
    Close { m: usize, index: usize, to: Summand },
    SubsetOpen { set: Vec<usize>, index: usize, to: Summand },
    SubsetClose { set: Vec<usize>, index: usize, to: Summand },
    /// First move on a limit arena: an index and an option of `G_n`.
    LimitPick { n: usize, option: Game },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub component: usize,
    pub action: Action,
}

impl Move {
    pub fn new(component: usize, action: Action) -> Self {
        Move { component, action }
    }

    /// The same move in the conjugate position.
    pub fn negated(&self) -> Move {
        let a = match &self.action {
            Action::Option(g) => Action::Option(negate(*g)),
            Action::Ordinal(o) => Action::Ordinal(o.clone()),
            Action::Open { n, index, to } => Action::Open {
                n: *n,
                index: *index,
                to: to.negated(),
            },
            Action::PlayWithin { index, to } => Action::PlayWithin {
                index: *index,
                to: to.negated(),
            },
            Action::Close { m, index, to } => Action::Close {
                m: *m,
                index: *index,
                to: to.negated(),
            },
            Action::SubsetOpen { set, index, to } => Action::SubsetOpen {
                set: set.clone(),
                index: *index,
                to: to.negated(),
            },
            Action::SubsetClose { set, index, to } => Action::SubsetClose {
                set: set.clone(),
                index: *index,
                to: to.negated(),
            },
            Action::LimitPick { n, option } => Action::LimitPick {
                n: *n,
                option: negate(*option),
            },
        };
        Move::new(self.component, a)
    }
}

fn write_set(f: &mut fmt::Formatter<'_>, set: &[usize]) -> fmt::Result {
    write!(f, "{{")?;
    for (k, i) in set.iter().enumerate() {
        if k > 0 {
            write!(f, ",")?;
        }
        write!(f, "{i}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c{}:", self.component)?;
        match &self.action {
            Action::Option(g) => write!(f, "opt({g})"),
            Action::Ordinal(o) => write!(f, "ord({o})"),
            Action::Open { n, index, to } => write!(f, "open(n={n},i={index},{to})"),
            Action::PlayWithin { index, to } => write!(f, "within(i={index},{to})"),
            Action::Close { m, index, to } => write!(f, "close(m={m},j={index},{to})"),
            Action::SubsetOpen { set, index, to } => {
                write!(f, "sopen(")?;
                write_set(f, set)?;
                write!(f, ",i={index},{to})")
            }
            Action::SubsetClose { set, index, to } => {
                write!(f, "sclose(")?;
                write_set(f, set)?;
                write!(f, ",j={index},{to})")
            }
            Action::LimitPick { n, option } => write!(f, "pick(n={n},{option})"),
        }
    }
}

/// All subsets of `pool` in increasing binary order, as sorted vectors.
fn subsets(pool: &[usize]) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0u64..1 << pool.len()).map(move |mask| {
        pool.iter()
            .enumerate()
            .filter(|(b, _)| mask >> b & 1 == 1)
            .map(|(_, &i)| i)
            .collect()
    })
}

impl SeriesState {
    fn moves(&self, p: Player, bound: usize, out: &mut Vec<Action>) {
        match &self.phase {
            Phase::Unopened => match self.variant {
                Variant::Plain | Variant::Bullet => {
                    for n in 0..=bound {
                        for index in 0..=n {
                            for to in self.spec.get(index).options(p, bound) {
                                out.push(Action::Open { n, index, to });
                            }
                        }
                    }
                }
                Variant::Subset => {
                    for index in 0..=bound {
                        let others: Vec<usize> = (0..=bound).filter(|&x| x != index).collect();
                        for to in self.spec.get(index).options(p, bound) {
                            for mut set in subsets(&others) {
                                set.push(index);
                                set.sort_unstable();
                                out.push(Action::SubsetOpen {
                                    set,
                                    index,
                                    to: to.clone(),
                                });
                            }
                        }
                    }
                }
            },
            Phase::HalfOpened { owner, head } => {
                let within = *owner == p || self.variant == Variant::Bullet;
                if within {
                    for (&index, s) in head {
                        for to in s.options(p, bound) {
                            out.push(Action::PlayWithin { index, to });
                        }
                    }
                }
                if *owner != p {
                    self.closing_moves(p, bound, head, out);
                }
            }
            Phase::Closed { head } => {
                for (&index, s) in head {
                    for to in s.options(p, bound) {
                        out.push(Action::PlayWithin { index, to });
                    }
                }
            }
        }
    }

    fn closing_moves(
        &self,
        p: Player,
        bound: usize,
        head: &BTreeMap<usize, Summand>,
        out: &mut Vec<Action>,
    ) {
        match self.variant {
            Variant::Plain | Variant::Bullet => {
                let n = self.n().unwrap_or(0);
                for m in n..=bound.max(n) {
                    for index in 0..=m {
                        for to in self.entry(index).options(p, bound) {
                            out.push(Action::Close { m, index, to });
                        }
                    }
                }
            }
            Variant::Subset => {
                let pool: Vec<usize> = (0..=bound).filter(|i| !head.contains_key(i)).collect();
                for set in subsets(&pool) {
                    let mut targets: Vec<usize> = head.keys().copied().chain(set.iter().copied()).collect();
                    targets.sort_unstable();
                    for index in targets {
                        for to in self.entry(index).options(p, bound) {
                            out.push(Action::SubsetClose {
                                set: set.clone(),
                                index,
                                to,
                            });
                        }
                    }
                }
            }
        }
    }

    /// Checks a move against the protocol without any index bound.
    fn check(&self, p: Player, a: &Action) -> Result<(), String> {
        let v = self.variant.name();
        let option_ok = |index: usize, to: &Summand| -> Result<(), String> {
            if self.entry(index).has_option(p, to) {
                Ok(())
            } else {
                Err(format!("{to} is not a {} option of G_{index} = {}", p.name(), self.entry(index)))
            }
        };
        match (&self.phase, a) {
            (Phase::Unopened, Action::Open { n, index, to }) if self.variant != Variant::Subset => {
                if index > n {
                    return Err(format!("{v} series: the first move must be on some G_i with i <= n (i={index}, n={n})"));
                }
                option_ok(*index, to)
            }
            (Phase::Unopened, Action::SubsetOpen { set, index, to }) if self.variant == Variant::Subset => {
                if !set.contains(index) {
                    return Err(format!("subset series: the first move must be on an index of the chosen set I (i={index})"));
                }
                if !is_sorted_set(set) {
                    return Err("subset series: index sets are written sorted without repeats".into());
                }
                option_ok(*index, to)
            }
            (Phase::Unopened, _) => Err(format!("{v} series: the first move must choose an index and move below it")),
            (Phase::HalfOpened { owner, head }, Action::PlayWithin { index, to }) => {
                if *owner != p && self.variant != Variant::Bullet {
                    return Err(format!(
                        "{v} series: the second player's first move here must fix an index (choose m >= n)"
                    ));
                }
                if !head.contains_key(index) {
                    return Err(format!("{v} series: moves before closing stay on indexes already fixed (i={index})"));
                }
                option_ok(*index, to)
            }
            (Phase::HalfOpened { owner, .. }, Action::Close { m, index, to })
                if self.variant != Variant::Subset =>
            {
                if *owner == p {
                    return Err(format!("{v} series: the player who fixed n cannot change it"));
                }
                let n = self.n().unwrap_or(0);
                if m < &n {
                    return Err(format!("{v} series: the second index must satisfy m >= n (m={m}, n={n})"));
                }
                if index > m {
                    return Err(format!("{v} series: the move must be on some G_j with j <= m (j={index}, m={m})"));
                }
                option_ok(*index, to)
            }
            (Phase::HalfOpened { owner, head }, Action::SubsetClose { set, index, to })
                if self.variant == Variant::Subset =>
            {
                if *owner == p {
                    return Err("subset series: the player who chose I cannot choose again".into());
                }
                if !is_sorted_set(set) {
                    return Err("subset series: index sets are written sorted without repeats".into());
                }
                if !head.contains_key(index) && !set.contains(index) {
                    return Err(format!("subset series: the move must be on an index of I or J (j={index})"));
                }
                option_ok(*index, to)
            }
            (Phase::HalfOpened { .. }, _) => Err(format!("{v} series: this kind of move is not available after the first index choice")),
            (Phase::Closed { head }, Action::PlayWithin { index, to }) => {
                if !head.contains_key(index) {
                    return Err(format!("{v} series: play continues on the finite sum of fixed indexes only (i={index})"));
                }
                option_ok(*index, to)
            }
            (Phase::Closed { .. }, _) => Err(format!("{v} series: both indexes are fixed; only moves inside the finite sum remain")),
        }
    }

    fn apply(&self, p: Player, a: &Action) -> SeriesState {
        let mut next = self.clone();
        next.phase = match (&self.phase, a) {
            (Phase::Unopened, Action::Open { n, index, to }) => {
                let mut head: BTreeMap<usize, Summand> = (0..=*n).map(|i| (i, self.spec.get(i))).collect();
                head.insert(*index, to.clone());
                Phase::HalfOpened { owner: p, head }
            }
            (Phase::Unopened, Action::SubsetOpen { set, index, to }) => {
                let mut head: BTreeMap<usize, Summand> = set.iter().map(|&i| (i, self.spec.get(i))).collect();
                head.insert(*index, to.clone());
                Phase::HalfOpened { owner: p, head }
            }
            (Phase::HalfOpened { owner, head }, Action::PlayWithin { index, to }) => {
                let mut head = head.clone();
                head.insert(*index, to.clone());
                Phase::HalfOpened { owner: *owner, head }
            }
            (Phase::HalfOpened { head, .. }, Action::Close { m, index, to }) => {
                let mut head = head.clone();
                for i in 0..=*m {
                    head.entry(i).or_insert_with(|| self.spec.get(i));
                }
                head.insert(*index, to.clone());
                Phase::Closed { head }
            }
            (Phase::HalfOpened { head, .. }, Action::SubsetClose { set, index, to }) => {
                let mut head = head.clone();
                for &i in set {
                    head.entry(i).or_insert_with(|| self.spec.get(i));
                }
                head.insert(*index, to.clone());
                Phase::Closed { head }
            }
            (Phase::Closed { head }, Action::PlayWithin { index, to }) => {
                let mut head = head.clone();
                head.insert(*index, to.clone());
                Phase::Closed { head }
            }
            _ => unreachable!("checked before applying"),
        };
        next
    }

    /// `Some(true)` when `p` provably has no move here at any index beyond `bound`.
    fn no_moves_beyond(&self, p: Player, bound: usize) -> Option<bool> {
        let beyond = match &self.phase {
            Phase::Unopened => bound + 1,
            Phase::HalfOpened { owner, .. } if *owner != p => bound.max(self.n().unwrap_or(0)) + 1,
            _ => return Some(true),
        };
        self.spec.has_options_beyond(p, beyond).map(|has| !has)
    }
}

fn is_sorted_set(set: &[usize]) -> bool {
    set.windows(2).all(|w| w[0] < w[1])
}

impl CompoundState {
    /// Legal moves for the mover with every infinite choice truncated at `bound`.
    pub fn legal_moves(&self, bound: usize) -> Vec<Move> {
        let p = self.mover;
        let mut out = Vec::new();
        for (k, c) in self.components.iter().enumerate() {
            let mut acts = Vec::new();
            match c {
                Component::Finite(g) => acts.extend(g.options(p).iter().map(|&x| Action::Option(x))),
                Component::Ordinal(o) => {
                    if o.owner == p {
                        acts.extend(o.value.descent_samples(bound as u64).into_iter().map(Action::Ordinal));
                    }
                }
                Component::Nimber(a) => {
                    acts.extend(a.descent_samples(bound as u64).into_iter().map(Action::Ordinal))
                }
                Component::Series(s) => s.moves(p, bound, &mut acts),
                Component::Limit(l) => acts.extend(
                    l.picks(p, bound)
                        .into_iter()
                        .map(|(n, option)| Action::LimitPick { n, option }),
                ),
            }
            out.extend(acts.into_iter().map(|a| Move::new(k, a)));
        }
        out
    }

    /// Checks a move against the rules with no index bound.
    pub fn check_move(&self, mv: &Move) -> Result<(), ArenaError> {
        let p = self.mover;
        let c = self
            .components
            .get(mv.component)
            .ok_or(ArenaError::NoComponent(mv.component))?;
        let res = match (c, &mv.action) {
            (Component::Finite(g), Action::Option(x)) => {
                if g.options(p).contains(x) {
                    Ok(())
                } else {
                    Err(format!("{x} is not a {} option of {g}", p.name()))
                }
            }
            (Component::Ordinal(o), Action::Ordinal(b)) => {
                if o.owner != p {
                    Err(format!("only {} moves on {o}", o.owner.name()))
                } else if b >= &o.value {
                    Err(format!("an ordinal can only decrease ({b} >= {})", o.value))
                } else {
                    Ok(())
                }
            }
            (Component::Nimber(a), Action::Ordinal(b)) => {
                if b < a {
                    Ok(())
                } else {
                    Err(format!("a nimber can only decrease ({b} >= {a})"))
                }
            }
            (Component::Series(s), a) => s.check(p, a),
            (Component::Limit(l), Action::LimitPick { n, option }) => l.check_pick(p, *n, *option),
            (c, a) => Err(format!(
                "move kind {} does not apply to component {c}",
                Move::new(mv.component, a.clone())
            )),
        };
        res.map_err(ArenaError::Illegal)
    }

    /// Applies a move after checking it; the mover flips.
    pub fn apply(&self, mv: &Move) -> Result<CompoundState, ArenaError> {
        self.check_move(mv)?;
        let p = self.mover;
        let mut next = self.clone();
        next.mover = p.opposite();
        let slot = &mut next.components[mv.component];
        *slot = match (&self.components[mv.component], &mv.action) {
            (Component::Finite(_), Action::Option(x)) => Component::Finite(*x),
            (Component::Ordinal(o), Action::Ordinal(b)) => {
                Component::Ordinal(OrdinalGame::new(b.clone(), o.owner))
            }
            (Component::Nimber(_), Action::Ordinal(b)) => Component::Nimber(b.clone()),
            (Component::Series(s), a) => Component::Series(s.apply(p, a)),
            (Component::Limit(_), Action::LimitPick { option, .. }) => Component::Finite(*option),
            _ => unreachable!("checked before applying"),
        };
        Ok(next)
    }

    /// The mover, when it has no move and that is independent of the bound.
    pub fn terminal_loser(&self, bound: usize) -> Result<Option<Player>, ArenaError> {
        if !self.legal_moves(bound).is_empty() {
            return Ok(None);
        }
        let p = self.mover;
        for c in &self.components {
            let certain = match c {
                Component::Series(s) => s.no_moves_beyond(p, bound),
                Component::Limit(l) => l.has_picks_beyond(p, bound + 1).map(|b| !b),
                _ => Some(true),
            };
            if certain != Some(true) {
                return Err(ArenaError::BoundDependent(format!(
                    "{} has no move within bound {bound} on {c}, but moves beyond it are not ruled out",
                    p.name()
                )));
            }
        }
        Ok(Some(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{Builtin, SequenceSpec};

    fn series(v: Variant, b: Builtin) -> Component {
        Component::Series(SeriesState::new(v, SequenceSpec::builtin(b)))
    }

    fn one() -> Summand {
        Summand::Form(Game::integer(1))
    }

    fn zero() -> Summand {
        Summand::Form(Game::zero())
    }

    #[test]
    fn right_cannot_move_on_ones() {
        let s = CompoundState::new(vec![series(Variant::Plain, Builtin::Ones)], Player::Right);
        assert!(s.legal_moves(6).is_empty());
        assert_eq!(s.terminal_loser(6), Ok(Some(Player::Right)));
    }

    #[test]
    fn left_openings_on_ones() {
        let s = CompoundState::new(vec![series(Variant::Plain, Builtin::Ones)], Player::Left);
        let moves = s.legal_moves(2);
        assert_eq!(moves.len(), 6);
        assert!(moves.iter().all(|m| matches!(m.action, Action::Open { index, n, .. } if index <= n)));
        assert_eq!(s.terminal_loser(2), Ok(None));
    }

    #[test]
    fn open_then_close() {
        let s = CompoundState::new(vec![series(Variant::Plain, Builtin::Ones)], Player::Left);
        let s = s
            .apply(&Move::new(0, Action::Open { n: 2, index: 1, to: zero() }))
            .unwrap();
        let Component::Series(ser) = &s.components[0] else { panic!() };
        assert_eq!(ser.owner(), Some(Player::Left));
        assert_eq!(ser.head().unwrap().values().cloned().collect::<Vec<_>>(), vec![one(), zero(), one()]);
        assert_eq!(s.birthday_measure().unwrap(), Ordinal::finite(2));
        assert!(s.legal_moves(4).is_empty());
        assert_eq!(s.terminal_loser(4), Ok(Some(Player::Right)));
        let s = s.with_mover(Player::Left);
        let err = s.apply(&Move::new(0, Action::Close { m: 3, index: 3, to: zero() }));
        assert!(matches!(err, Err(ArenaError::Illegal(msg)) if msg.contains("cannot change")));
    }

    #[test]
    fn plain_rules() {
        let s = CompoundState::new(vec![series(Variant::Plain, Builtin::PmOne)], Player::Left);
        let s = s
            .apply(&Move::new(0, Action::Open { n: 1, index: 0, to: zero() }))
            .unwrap();
        // Right must close; no play within.
        let moves = s.legal_moves(3);
        assert!(!moves.is_empty());
        assert!(moves.iter().all(|m| matches!(m.action, Action::Close { m, .. } if m >= 1)));
        let bad = s.apply(&Move::new(0, Action::PlayWithin { index: 1, to: zero() }));
        assert!(matches!(bad, Err(ArenaError::Illegal(msg)) if msg.contains("must fix an index")));
        let bad = s.apply(&Move::new(0, Action::Close { m: 0, index: 0, to: zero() }));
        assert!(bad.is_err());
        let closed = s
            .apply(&Move::new(0, Action::Close { m: 3, index: 3, to: zero() }))
            .unwrap();
        let games = closed.finite_games().unwrap();
        assert_eq!(games, vec![Game::zero(), Game::integer(-1), Game::integer(1), Game::zero()]);
        assert_eq!(closed.birthday_measure().unwrap(), Ordinal::finite(2));
    }

    #[test]
    fn bullet_rules() {
        let s = CompoundState::new(vec![series(Variant::Bullet, Builtin::PmOne)], Player::Right);
        // Right opens n=1 on G_1 = -1, moving it to 0.
        let s = s
            .apply(&Move::new(0, Action::Open { n: 1, index: 1, to: zero() }))
            .unwrap();
        let moves = s.legal_moves(2);
        let within: Vec<_> = moves.iter().filter(|m| matches!(m.action, Action::PlayWithin { .. })).collect();
        let closes: Vec<_> = moves.iter().filter(|m| matches!(m.action, Action::Close { .. })).collect();
        assert_eq!(within.len(), 1);
        assert!(closes.iter().all(|m| matches!(m.action, Action::Close { m, .. } if (1..=2).contains(&m))));
        assert!(!closes.is_empty());
        // After Left plays within, Right (owner) still cannot close.
        let s = s.apply(within[0]).unwrap();
        assert!(s.legal_moves(3).iter().all(|m| matches!(m.action, Action::PlayWithin { .. })));
    }

    #[test]
    fn ordinal_component() {
        let s = CompoundState::new(
            vec![Component::Ordinal(OrdinalGame::new(Ordinal::omega(), Player::Right))],
            Player::Right,
        );
        let t = s.apply(&Move::new(0, Action::Ordinal(Ordinal::finite(5)))).unwrap();
        assert_eq!(t.components[0], Component::Ordinal(OrdinalGame::new(Ordinal::finite(5), Player::Right)));
        assert!(s.with_mover(Player::Left).legal_moves(4).is_empty());
    }

    #[test]
    fn subset_rules() {
        let s = CompoundState::new(vec![series(Variant::Subset, Builtin::PmOne)], Player::Left);
        let moves = s.legal_moves(2);
        // Left options exist on G_0 and G_2 (both 1); each sits in 4 sets.
        assert_eq!(moves.len(), 8);
        let s = s
            .apply(&Move::new(0, Action::SubsetOpen { set: vec![0, 2], index: 2, to: zero() }))
            .unwrap();
        let closes = s.legal_moves(2);
        assert!(closes.iter().all(|m| matches!(m.action, Action::SubsetClose { .. })));
        let t = s
            .apply(&Move::new(0, Action::SubsetClose { set: vec![1], index: 1, to: zero() }))
            .unwrap();
        let games = t.finite_games().unwrap();
        assert_eq!(games, vec![Game::integer(1), Game::zero(), Game::zero()]);
    }
}
