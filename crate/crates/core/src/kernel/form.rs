//! Hash-consed game forms.
//!
//! Every distinct form is stored once in a process-wide interner and named by
//! a small copyable handle. Option lists are kept sorted under a structural
//! order (birthday first, then option lists lexicographically), so iteration
//! order does not depend on the order in which forms happened to be created.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use parking_lot::RwLock;

/// Handle to an interned game form. Equal handles mean structurally equal forms.
#[derive(Copy, Clone, PartialEq, Eq, Hash)]
pub struct Game(u32);

#[derive(Clone, PartialEq, Eq, Hash)]
struct Key {
    left: Arc<[Game]>,
    right: Arc<[Game]>,
}

struct Entry {
    key: Key,
    birthday: u32,
}

#[derive(Default)]
struct Interner {
    entries: Vec<Entry>,
    index: HashMap<Key, Game>,
}

fn interner() -> &'static RwLock<Interner> {
    static INTERNER: OnceLock<RwLock<Interner>> = OnceLock::new();
    INTERNER.get_or_init(|| RwLock::new(Interner::default()))
}

impl Game {
    /// Builds `{ left | right }`. Duplicate options are merged.
    pub fn new(left: impl IntoIterator<Item = Game>, right: impl IntoIterator<Item = Game>) -> Game {
        let left = normalize(left.into_iter().collect());
        let right = normalize(right.into_iter().collect());
        let key = Key {
            left: left.into(),
            right: right.into(),
        };
        if let Some(g) = interner().read().index.get(&key) {
            return *g;
        }
        let birthday = key
            .left
            .iter()
            .chain(key.right.iter())
            .map(|g| g.birthday() + 1)
            .max()
            .unwrap_or(0);
        let mut table = interner().write();
        if let Some(g) = table.index.get(&key) {
            return *g;
        }
        let id = Game(u32::try_from(table.entries.len()).expect("interner overflow"));
        table.entries.push(Entry {
            key: key.clone(),
            birthday,
        });
        table.index.insert(key, id);
        id
    }

    /// The empty game `{|}`.
    pub fn zero() -> Game {
        Game::new([], [])
    }

    pub fn star() -> Game {
        let z = Game::zero();
        Game::new([z], [z])
    }

    pub fn up() -> Game {
        Game::new([Game::zero()], [Game::star()])
    }

    pub fn down() -> Game {
        Game::new([Game::star()], [Game::zero()])
    }

    /// Nimber `*k` in its standard form `{0,*,…,*(k-1) | 0,*,…,*(k-1)}`.
    pub fn nimber(k: u64) -> Game {
        let mut opts = Vec::new();
        let mut cur = Game::zero();
        for _ in 0..k {
            opts.push(cur);
            cur = Game::new(opts.clone(), opts.clone());
        }
        cur
    }

    /// Canonical integer: `n = {n-1|}` and `-n = {|-(n-1)}`.
    pub fn integer(n: i64) -> Game {
        let mut g = Game::zero();
        for _ in 0..n.unsigned_abs() {
            g = if n > 0 { Game::new([g], []) } else { Game::new([], [g]) };
        }
        g
    }

    pub fn left(self) -> Arc<[Game]> {
        interner().read().entries[self.0 as usize].key.left.clone()
    }

    pub fn right(self) -> Arc<[Game]> {
        interner().read().entries[self.0 as usize].key.right.clone()
    }

    pub fn options(self, side: crate::Player) -> Arc<[Game]> {
        match side {
            crate::Player::Left => self.left(),
            crate::Player::Right => self.right(),
        }
    }

    /// Formal birthday: 0 for `{|}`, otherwise one more than the largest option birthday.
    pub fn birthday(self) -> u32 {
        interner().read().entries[self.0 as usize].birthday
    }

    pub fn is_empty_form(self) -> bool {
        self == Game::zero()
    }

    /// Total structural order used to sort option lists.
    pub fn structural_cmp(self, other: Game) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        self.birthday()
            .cmp(&other.birthday())
            .then_with(|| cmp_lists(&self.left(), &other.left()))
            .then_with(|| cmp_lists(&self.right(), &other.right()))
    }

    /// Number of interned forms so far.
    pub fn interned_count() -> usize {
        interner().read().entries.len()
    }
}

fn cmp_lists(a: &[Game], b: &[Game]) -> Ordering {
    for (x, y) in a.iter().zip(b.iter()) {
        match x.structural_cmp(*y) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

fn normalize(mut v: Vec<Game>) -> Vec<Game> {
    v.sort_by(|a, b| a.structural_cmp(*b));
    v.dedup();
    v
}

impl fmt::Debug for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Prints the literal form with `{L|R}` braces, using `0`, `*` and `^`/`v`
/// shorthands for the smallest forms so output stays readable.
impl Game {
    /// Shorthand used by `Display`, if any.
    pub fn short_name(self) -> Option<&'static str> {
        [(Game::zero(), "0"), (Game::star(), "*"), (Game::up(), "^"), (Game::down(), "v")]
            .into_iter()
            .find(|&(g, _)| g == self)
            .map(|(_, n)| n)
    }

    /// `{L|R}` at the top level even when a shorthand exists; `0` stays `0`.
    pub fn expanded(self) -> String {
        if self == Game::zero() {
            return "0".into();
        }
        let join = |gs: Arc<[Game]>| gs.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(",");
        format!("{{{}|{}}}", join(self.left()), join(self.right()))
    }
}

impl fmt::Display for Game {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.short_name() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}", self.expanded()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interning_deduplicates() {
        let a = Game::new([Game::zero()], []);
        let b = Game::new([Game::zero(), Game::zero()], []);
        assert_eq!(a, b);
        assert_eq!(a.left().len(), 1);
        assert_ne!(a, Game::zero());
    }

    #[test]
    fn birthdays() {
        assert_eq!(Game::zero().birthday(), 0);
        assert_eq!(Game::star().birthday(), 1);
        assert_eq!(Game::up().birthday(), 2);
        assert_eq!(Game::nimber(3).birthday(), 3);
    }

    #[test]
    fn option_order_is_structural() {
        let z = Game::zero();
        let one = Game::new([z], []);
        let g1 = Game::new([one, z], []);
        let g2 = Game::new([z, one], []);
        assert_eq!(g1, g2);
        assert_eq!(&*g1.left(), &[z, one]);
    }

    #[test]
    fn display_shorthands() {
        assert_eq!(Game::up().to_string(), "^");
        assert_eq!(Game::new([Game::zero()], []).to_string(), "{0|}");
        assert_eq!(Game::new([Game::star()], [Game::star()]).to_string(), "{*|*}");
    }
}
