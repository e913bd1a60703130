use std::collections::{HashMap, HashSet};

use super::form::Game;
use super::ops::lt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub is_number: bool,
    pub is_impartial: bool,
    pub is_dicotic: bool,
    pub birthday: u32,
    /// Grundy value, present exactly when the form is impartial.
    pub grundy: Option<u64>,
}

/// All subpositions of `g`, including `g` itself.
pub fn subpositions(g: Game) -> Vec<Game> {
    let mut seen = HashSet::new();
    let mut stack = vec![g];
    let mut out = Vec::new();
    while let Some(x) = stack.pop() {
        if !seen.insert(x) {
            continue;
        }
        out.push(x);
        stack.extend(x.left().iter().copied());
        stack.extend(x.right().iter().copied());
    }
    out
}

pub fn is_number(g: Game) -> bool {
    subpositions(g).into_iter().all(|h| {
        let (l, r) = (h.left(), h.right());
        l.iter().all(|&hl| r.iter().all(|&hr| lt(hl, hr)))
    })
}

pub fn is_impartial(g: Game) -> bool {
    subpositions(g).into_iter().all(|h| h.left() == h.right())
}

pub fn is_dicotic(g: Game) -> bool {
    subpositions(g)
        .into_iter()
        .all(|h| h.is_empty_form() || (!h.left().is_empty() && !h.right().is_empty()))
}

/// Grundy value by mex recursion; `None` unless the form is impartial.
pub fn grundy(g: Game) -> Option<u64> {
    if !is_impartial(g) {
        return None;
    }
    let mut memo = HashMap::new();
    Some(grundy_rec(g, &mut memo))
}

fn grundy_rec(g: Game, memo: &mut HashMap<Game, u64>) -> u64 {
    if let Some(&v) = memo.get(&g) {
        return v;
    }
    let vals: HashSet<u64> = g.left().iter().map(|&x| grundy_rec(x, memo)).collect();
    let v = (0..).find(|k| !vals.contains(k)).unwrap();
    memo.insert(g, v);
    v
}

pub fn classify(g: Game) -> Classification {
    let is_impartial = is_impartial(g);
    Classification {
        is_number: is_number(g),
        is_impartial,
        is_dicotic: is_dicotic(g),
        birthday: g.birthday(),
        grundy: if is_impartial { grundy(g) } else { None },
    }
}

/// If no subposition offers Right a move, the form is an ordinal; returns it
/// when it is finite (it always is for a finite form).
pub fn left_only_value(g: Game) -> Option<u64> {
    if !g.right().is_empty() {
        return None;
    }
    let mut best = 0u64;
    for &gl in g.left().iter() {
        best = best.max(left_only_value(gl)? + 1);
    }
    Some(best)
}
