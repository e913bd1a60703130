//! Finite-index compounds other than the disjunctive sum.

use std::collections::HashMap;

use super::form::Game;
use crate::error::KernelError;
use crate::Player;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SumKind {
    /// Every move is a move on every component.
    Conjunctive,
    /// A move on a component removes all components after it.
    Ordinal,
    /// Play the highest-indexed component until it is `{|}`, then the next one down.
    Sequential,
    /// Finite window of a side sum: a Left move removes all higher indices,
    /// a Right move removes all lower indices.
    Side,
}

pub fn alt_sum(kind: SumKind, gs: &[Game]) -> Result<Game, KernelError> {
    let mut memo = HashMap::new();
    match kind {
        SumKind::Conjunctive => Ok(conjunctive(gs.to_vec(), &mut memo)),
        SumKind::Ordinal => Ok(ordinal(gs.to_vec(), &mut memo)),
        SumKind::Sequential => {
            if gs.is_empty() {
                return Err(KernelError::EmptySequential);
            }
            Ok(sequential(gs.to_vec(), &mut memo))
        }
        SumKind::Side => Ok(side(gs.to_vec(), &mut memo)),
    }
}

type Memo = HashMap<Vec<Game>, Game>;

fn conjunctive(gs: Vec<Game>, memo: &mut Memo) -> Game {
    if gs.is_empty() {
        return Game::zero();
    }
    if let Some(&g) = memo.get(&gs) {
        return g;
    }
    let mut sides = [Vec::new(), Vec::new()];
    for (slot, player) in [Player::Left, Player::Right].into_iter().enumerate() {
        let choices: Vec<Vec<Game>> = gs.iter().map(|g| g.options(player).to_vec()).collect();
        if choices.iter().any(|c| c.is_empty()) {
            continue;
        }
        let mut idx = vec![0usize; gs.len()];
        loop {
            let pick: Vec<Game> = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
            sides[slot].push(conjunctive(pick, memo));
            let mut k = 0;
            while k < idx.len() {
                idx[k] += 1;
                if idx[k] < choices[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == idx.len() {
                break;
            }
        }
    }
    let [l, r] = sides;
    let g = Game::new(l, r);
    memo.insert(gs, g);
    g
}

fn ordinal(gs: Vec<Game>, memo: &mut Memo) -> Game {
    if let Some(&g) = memo.get(&gs) {
        return g;
    }
    let mut sides = [Vec::new(), Vec::new()];
    for (slot, player) in [Player::Left, Player::Right].into_iter().enumerate() {
        for j in 0..gs.len() {
            for &opt in gs[j].options(player).iter() {
                let mut next = gs[..j].to_vec();
                next.push(opt);
                sides[slot].push(ordinal(next, memo));
            }
        }
    }
    let [l, r] = sides;
    let g = Game::new(l, r);
    memo.insert(gs, g);
    g
}

fn sequential(mut gs: Vec<Game>, memo: &mut Memo) -> Game {
    while gs.last().is_some_and(|g| g.is_empty_form()) {
        gs.pop();
    }
    if gs.is_empty() {
        return Game::zero();
    }
    if let Some(&g) = memo.get(&gs) {
        return g;
    }
    let top = *gs.last().unwrap();
    let mut sides = [Vec::new(), Vec::new()];
    for (slot, player) in [Player::Left, Player::Right].into_iter().enumerate() {
        for &opt in top.options(player).iter() {
            let mut next = gs[..gs.len() - 1].to_vec();
            next.push(opt);
            sides[slot].push(sequential(next, memo));
        }
    }
    let [l, r] = sides;
    let g = Game::new(l, r);
    memo.insert(gs, g);
    g
}

fn side(gs: Vec<Game>, memo: &mut Memo) -> Game {
    if let Some(&g) = memo.get(&gs) {
        return g;
    }
    let mut left = Vec::new();
    let mut right = Vec::new();
    for j in 0..gs.len() {
        for &opt in gs[j].left().iter() {
            let mut next = gs[..j].to_vec();
            next.push(opt);
            left.push(side(next, memo));
        }
        for &opt in gs[j].right().iter() {
            let mut next = vec![opt];
            next.extend_from_slice(&gs[j + 1..]);
            right.push(side(next, memo));
        }
    }
    let g = Game::new(left, right);
    memo.insert(gs, g);
    g
}
