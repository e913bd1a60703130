//! Independent oracles shared by the integration tests. Nothing here calls
//! the kernel's comparison or outcome code; games are only taken apart
//! through their option lists.

#![allow(dead_code)]

use std::collections::HashMap;

use gameseries::{Game, Outcome, Player};

/// Plain minimax over the sum `gs`, memoized on the sorted multiset.
pub struct Brute {
    memo: HashMap<(Vec<Game>, Player), bool>,
}

impl Brute {
    pub fn new() -> Self {
        Brute { memo: HashMap::new() }
    }

    pub fn mover_wins(&mut self, gs: &[Game], mover: Player) -> bool {
        let mut key: Vec<Game> = gs.iter().copied().filter(|&g| g != Game::zero()).collect();
        key.sort_by(|a, b| a.structural_cmp(*b));
        if let Some(&v) = self.memo.get(&(key.clone(), mover)) {
            return v;
        }
        let mut wins = false;
        'outer: for k in 0..key.len() {
            for &o in key[k].options(mover).iter() {
                let mut next = key.clone();
                next[k] = o;
                if !self.mover_wins(&next, mover.opposite()) {
                    wins = true;
                    break 'outer;
                }
            }
        }
        self.memo.insert((key, mover), wins);
        wins
    }

    pub fn outcome(&mut self, g: Game) -> Outcome {
        match (self.mover_wins(&[g], Player::Left), self.mover_wins(&[g], Player::Right)) {
            (true, true) => Outcome::FirstWins,
            (false, false) => Outcome::SecondWins,
            (true, false) => Outcome::LeftWins,
            (false, true) => Outcome::RightWins,
        }
    }

    /// `g ≤ h`: Left moving first on `g − h` loses.
    pub fn leq(&mut self, g: Game, h: Game) -> bool {
        !self.mover_wins(&[g, negate(h)], Player::Left)
    }

    pub fn equal(&mut self, g: Game, h: Game) -> bool {
        self.leq(g, h) && self.leq(h, g)
    }
}

pub fn negate(g: Game) -> Game {
    let r: Vec<Game> = g.left().iter().map(|&x| negate(x)).collect();
    let l: Vec<Game> = g.right().iter().map(|&x| negate(x)).collect();
    Game::new(l, r)
}

fn subsets(items: &[Game], max: usize) -> Vec<Vec<Game>> {
    let mut out = vec![vec![]];
    for &x in items {
        let grown: Vec<Vec<Game>> = out
            .iter()
            .filter(|s| s.len() < max)
            .map(|s| {
                let mut t = s.clone();
                t.push(x);
                t
            })
            .collect();
        out.extend(grown);
    }
    out
}

fn forms_over(opts: &[Game], max: usize) -> Vec<Game> {
    let sets = subsets(opts, max);
    let mut out = Vec::new();
    for l in &sets {
        for r in &sets {
            out.push(Game::new(l.clone(), r.clone()));
        }
    }
    out.sort_by(|a, b| a.structural_cmp(*b));
    out.dedup();
    out
}

/// Every form born by day 2, plus the day-3 forms with at most one option
/// per side drawn from a representative of each day-2 value.
pub fn small_corpus() -> Vec<Game> {
    let day1 = forms_over(&[Game::zero()], 1);
    let day2 = forms_over(&day1, day1.len());
    let mut brute = Brute::new();
    let mut reps: Vec<Game> = Vec::new();
    for &g in &day2 {
        if !reps.iter().any(|&r| brute.equal(r, g)) {
            reps.push(g);
        }
    }
    let mut all = day2.clone();
    all.extend(forms_over(&reps, 1));
    all.sort_by(|a, b| a.structural_cmp(*b));
    all.dedup();
    all
}

/// Random forms of birthday at most `depth`, at most `width` options a side.
pub fn arb_game(depth: u32, width: usize) -> impl proptest::strategy::Strategy<Value = Game> {
    use proptest::prelude::*;
    Just(Game::zero()).prop_recursive(depth, 64, width as u32 * 2, move |inner| {
        (
            proptest::collection::vec(inner.clone(), 0..=width),
            proptest::collection::vec(inner, 0..=width),
        )
            .prop_map(|(l, r)| Game::new(l, r))
    })
}
