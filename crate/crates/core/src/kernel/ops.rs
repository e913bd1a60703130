//! Order, outcome, negation, disjunctive sum and canonical form.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::OnceLock;

use parking_lot::Mutex;

use super::form::Game;
use crate::Player;

/// Normal-play outcome class.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Outcome {
    LeftWins,
    RightWins,
    FirstWins,
    SecondWins,
}

impl Outcome {
    pub fn from_first_mover_wins(left_first: bool, right_first: bool) -> Outcome {
        match (left_first, right_first) {
            (true, true) => Outcome::FirstWins,
            (true, false) => Outcome::LeftWins,
            (false, true) => Outcome::RightWins,
            (false, false) => Outcome::SecondWins,
        }
    }

    /// Whether `player` wins when `mover` starts.
    pub fn wins(self, player: Player, mover: Player) -> bool {
        match self {
            Outcome::LeftWins => player == Player::Left,
            Outcome::RightWins => player == Player::Right,
            Outcome::FirstWins => player == mover,
            Outcome::SecondWins => player != mover,
        }
    }
}

struct Memo<K, V>(OnceLock<Mutex<HashMap<K, V>>>);

impl<K: Eq + Hash, V: Copy> Memo<K, V> {
    const fn new() -> Self {
        Memo(OnceLock::new())
    }

    fn map(&self) -> &Mutex<HashMap<K, V>> {
        self.0.get_or_init(|| Mutex::new(HashMap::new()))
    }

    fn get(&self, k: &K) -> Option<V> {
        self.map().lock().get(k).copied()
    }

    fn put(&self, k: K, v: V) {
        self.map().lock().insert(k, v);
    }
}

static LEQ: Memo<(Game, Game), bool> = Memo::new();
static NEG: Memo<Game, Game> = Memo::new();
static SUM: Memo<(Game, Game), Game> = Memo::new();
static CANON: Memo<Game, Game> = Memo::new();

/// `g ≤ h` in the Conway order: no `g^L ≥ h` and no `h^R ≤ g`.
pub fn leq(g: Game, h: Game) -> bool {
    if g == h {
        return true;
    }
    if let Some(v) = LEQ.get(&(g, h)) {
        return v;
    }
    let v = !g.left().iter().any(|&gl| leq(h, gl)) && !h.right().iter().any(|&hr| leq(hr, g));
    LEQ.put((g, h), v);
    v
}

pub fn conway_eq(g: Game, h: Game) -> bool {
    leq(g, h) && leq(h, g)
}

/// Strict order `g < h`.
pub fn lt(g: Game, h: Game) -> bool {
    leq(g, h) && !leq(h, g)
}

pub fn outcome(g: Game) -> Outcome {
    let z = Game::zero();
    let left_first = g.left().iter().any(|&gl| leq(z, gl));
    let right_first = g.right().iter().any(|&gr| leq(gr, z));
    Outcome::from_first_mover_wins(left_first, right_first)
}

pub fn negate(g: Game) -> Game {
    if let Some(v) = NEG.get(&g) {
        return v;
    }
    let v = Game::new(
        g.right().iter().map(|&x| negate(x)),
        g.left().iter().map(|&x| negate(x)),
    );
    NEG.put(g, v);
    v
}

fn sum2(a: Game, b: Game) -> Game {
    if a.is_empty_form() {
        return b;
    }
    if b.is_empty_form() {
        return a;
    }
    let key = if a.structural_cmp(b).is_le() { (a, b) } else { (b, a) };
    if let Some(v) = SUM.get(&key) {
        return v;
    }
    let left: Vec<Game> = a
        .left()
        .iter()
        .map(|&x| sum2(x, b))
        .chain(b.left().iter().map(|&y| sum2(a, y)))
        .collect();
    let right: Vec<Game> = a
        .right()
        .iter()
        .map(|&x| sum2(x, b))
        .chain(b.right().iter().map(|&y| sum2(a, y)))
        .collect();
    let v = Game::new(left, right);
    SUM.put(key, v);
    v
}

/// Disjunctive sum of a finite list of forms; the empty sum is `{|}`.
pub fn disjunctive_sum(gs: &[Game]) -> Game {
    gs.iter().fold(Game::zero(), |acc, &g| sum2(acc, g))
}

/// Canonical form: dominated options removed and reversible options bypassed.
pub fn canonical_form(g: Game) -> Game {
    if let Some(v) = CANON.get(&g) {
        return v;
    }
    let mut left: Vec<Game> = g.left().iter().map(|&x| canonical_form(x)).collect();
    let mut right: Vec<Game> = g.right().iter().map(|&x| canonical_form(x)).collect();
    loop {
        let cur = Game::new(left.clone(), right.clone());
        let mut changed = false;

        // Bypass reversible Left options: G^L with some G^{LR} ≤ G.
        let mut new_left = Vec::new();
        for &gl in &left {
            match gl.right().iter().copied().find(|&glr| leq(glr, cur)) {
                Some(glr) => {
                    new_left.extend(glr.left().iter().copied());
                    changed = true;
                }
                None => new_left.push(gl),
            }
        }
        let mut new_right = Vec::new();
        for &gr in &right {
            match gr.left().iter().copied().find(|&grl| leq(cur, grl)) {
                Some(grl) => {
                    new_right.extend(grl.right().iter().copied());
                    changed = true;
                }
                None => new_right.push(gr),
            }
        }

        let new_left = undominated(new_left, leq);
        let new_right = undominated(new_right, |a, b| leq(b, a));
        if new_left.len() != left.len() || new_right.len() != right.len() {
            changed = true;
        }
        left = new_left;
        right = new_right;
        if !changed {
            break;
        }
    }
    let v = Game::new(left, right);
    CANON.put(g, v);
    CANON.put(v, v);
    v
}

/// Keeps the maximal elements under `worse(a, b)` ("a is no better than b"),
/// keeping one representative of each equivalence class.
fn undominated(mut opts: Vec<Game>, worse: impl Fn(Game, Game) -> bool) -> Vec<Game> {
    opts.sort_by(|a, b| a.structural_cmp(*b));
    opts.dedup();
    let mut keep = Vec::new();
    for (i, &a) in opts.iter().enumerate() {
        let dominated = opts.iter().enumerate().any(|(j, &b)| {
            i != j && worse(a, b) && (!worse(b, a) || j < i)
        });
        if !dominated {
            keep.push(a);
        }
    }
    keep
}

/// Outcome of a finite disjunctive sum, evaluated by folding canonical forms
/// so long sums of small components stay cheap.
pub fn sum_value(gs: &[Game]) -> Game {
    gs.iter()
        .fold(Game::zero(), |acc, &g| canonical_form(sum2(acc, canonical_form(g))))
}

/// Finds a move for `player` in the finite sum `gs` after which the opponent,
/// moving next, loses. Returns the component index and the chosen option.
pub fn winning_move(gs: &[Game], player: Player) -> Option<(usize, Game)> {
    let canon: Vec<Game> = gs.iter().map(|&g| canonical_form(g)).collect();
    let z = Game::zero();
    for (k, &g) in gs.iter().enumerate() {
        let others: Vec<Game> = canon
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != k)
            .map(|(_, &c)| c)
            .collect();
        let rest = sum_value(&others);
        for &opt in g.options(player).iter() {
            let total = canonical_form(sum2(rest, canonical_form(opt)));
            let ok = match player {
                Player::Left => leq(z, total),
                Player::Right => leq(total, z),
            };
            if ok {
                return Some((k, opt));
            }
        }
    }
    None
}

/// Whether `player`, about to move in the finite sum `gs`, wins.
pub fn mover_wins(gs: &[Game], player: Player) -> bool {
    outcome(sum_value(gs)).wins(player, player)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one() -> Game {
        Game::new([Game::zero()], [])
    }

    fn minus_one() -> Game {
        Game::new([], [Game::zero()])
    }

    #[test]
    fn outcomes_of_small_forms() {
        assert_eq!(outcome(Game::zero()), Outcome::SecondWins);
        assert_eq!(outcome(Game::star()), Outcome::FirstWins);
        assert_eq!(outcome(Game::up()), Outcome::LeftWins);
        assert_eq!(outcome(minus_one()), Outcome::RightWins);
    }

    #[test]
    fn order_examples() {
        assert!(leq(Game::zero(), Game::up()));
        assert!(leq(Game::star(), Game::star()));
        let s = Game::new([Game::star()], [Game::star()]);
        assert!(leq(s, Game::zero()) && leq(Game::zero(), s));
        assert!(!leq(one(), Game::zero()));
    }

    #[test]
    fn negation() {
        assert_eq!(negate(Game::zero()), Game::zero());
        assert_eq!(negate(one()), minus_one());
        assert_eq!(negate(Game::up()), Game::down());
    }

    #[test]
    fn sums() {
        assert_eq!(disjunctive_sum(&[]), Game::zero());
        let s = disjunctive_sum(&[one(), minus_one()]);
        assert_ne!(s, Game::zero());
        assert!(conway_eq(s, Game::zero()));
        assert!(conway_eq(disjunctive_sum(&[Game::star(), Game::star()]), Game::zero()));
    }

    #[test]
    fn canonical_examples() {
        let g = Game::new([minus_one(), Game::zero()], [one()]);
        assert_eq!(canonical_form(g), Game::new([Game::zero()], [one()]));
        assert_eq!(canonical_form(Game::zero()), Game::zero());
        assert_eq!(canonical_form(disjunctive_sum(&[one(), minus_one()])), Game::zero());
        // {0,*|} is 1 up to equivalence but not canonical: * reverses through 0.
        let g = Game::new([Game::zero(), Game::star()], []);
        assert_eq!(canonical_form(g), one());
    }

    #[test]
    fn winning_moves_in_sums() {
        // * + * + * : first player wins by zeroing one star.
        let gs = [Game::star(); 3];
        let (k, opt) = winning_move(&gs, Player::Left).unwrap();
        assert_eq!(opt, Game::zero());
        assert!(k < 3);
        assert!(winning_move(&[Game::star(), Game::star()], Player::Left).is_none());
    }
}
