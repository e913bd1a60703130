use std::collections::HashMap;

use parking_lot::Mutex;
use std::sync::OnceLock;

use super::dyadic::Dyadic;
use crate::kernel::{is_number, Game};

/// Simplest dyadic strictly between the bounds (`None` = unbounded).
pub fn simplest_between(lo: Option<Dyadic>, hi: Option<Dyadic>) -> Option<Dyadic> {
    if let (Some(a), Some(b)) = (lo, hi) {
        if a >= b {
            return None;
        }
    }
    let above = |x: Dyadic| lo.is_none_or(|a| x > a);
    let below = |x: Dyadic| hi.is_none_or(|b| x < b);
    if above(Dyadic::ZERO) && below(Dyadic::ZERO) {
        return Some(Dyadic::ZERO);
    }
    if let Some(a) = lo.filter(|a| *a >= Dyadic::ZERO) {
        let n = Dyadic::integer(a.floor() + 1);
        if below(n) {
            return Some(n);
        }
    }
    if let Some(b) = hi.filter(|b| *b <= Dyadic::ZERO) {
        let n = Dyadic::integer(-((-b).floor() + 1));
        if above(n) {
            return Some(n);
        }
    }
    let (a, b) = (lo?, hi?);
    for k in 1..=120u32 {
        let scaled = Dyadic::new(a.numerator(), a.exponent());
        // Least multiple of 2^-k strictly above a.
        let units = floor_scaled(scaled, k) + 1;
        let x = Dyadic::new(units, k);
        if x < b {
            return Some(x);
        }
    }
    None
}

/// `floor(d * 2^k)`.
fn floor_scaled(d: Dyadic, k: u32) -> i128 {
    if d.exponent() <= k {
        d.numerator() << (k - d.exponent())
    } else {
        d.numerator() >> (d.exponent() - k)
    }
}

static VALUES: OnceLock<Mutex<HashMap<Game, Option<Dyadic>>>> = OnceLock::new();

/// Exact value of a number form, `None` when the form is not a number.
pub fn number_value(g: Game) -> Option<Dyadic> {
    if let Some(v) = VALUES.get_or_init(Default::default).lock().get(&g) {
        return *v;
    }
    let v = if is_number(g) { value_rec(g) } else { None };
    VALUES.get_or_init(Default::default).lock().insert(g, v);
    v
}

fn value_rec(g: Game) -> Option<Dyadic> {
    let lo = g.left().iter().map(|&x| number_value(x)).collect::<Option<Vec<_>>>()?;
    let hi = g.right().iter().map(|&x| number_value(x)).collect::<Option<Vec<_>>>()?;
    simplest_between(lo.into_iter().max(), hi.into_iter().min())
}
