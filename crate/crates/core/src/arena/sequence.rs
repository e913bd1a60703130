use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use parking_lot::Mutex;

use super::{OrdinalGame, Summand};
use crate::kernel::{disjunctive_sum, negate, outcome, sum_value, Game, Outcome};
use crate::numbers::{number_value, Dyadic, Ordinal, SignSeq};
use crate::Player;

/// Named sequences.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Builtin {
    Ones,
    Twos,
    Stars,
    Ups,
    PmOne,
    GeomHalf,
    QuarterGeom,
    OrdPowers,
    MinusOneThenOnes,
    ZeroZeroThenOnes,
    SumformZeroThenOnes,
    ZeroformThenOnes,
    CanonNaturals,
    SignNaturals,
}

impl Builtin {
    pub const ALL: [Builtin; 14] = [
        Builtin::Ones,
        Builtin::Twos,
        Builtin::Stars,
        Builtin::Ups,
        Builtin::PmOne,
        Builtin::GeomHalf,
        Builtin::QuarterGeom,
        Builtin::OrdPowers,
        Builtin::MinusOneThenOnes,
        Builtin::ZeroZeroThenOnes,
        Builtin::SumformZeroThenOnes,
        Builtin::ZeroformThenOnes,
        Builtin::CanonNaturals,
        Builtin::SignNaturals,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::Ones => "ones",
            Builtin::Twos => "twos",
            Builtin::Stars => "stars",
            Builtin::Ups => "ups",
            Builtin::PmOne => "pm_one",
            Builtin::GeomHalf => "geom_half",
            Builtin::QuarterGeom => "quarter_geom",
            Builtin::OrdPowers => "ordpowers",
            Builtin::MinusOneThenOnes => "minusone_then_ones",
            Builtin::ZeroZeroThenOnes => "zerozero_then_ones",
            Builtin::SumformZeroThenOnes => "sumform_zero_then_ones",
            Builtin::ZeroformThenOnes => "zeroform_then_ones",
            Builtin::CanonNaturals => "canon_naturals",
            Builtin::SignNaturals => "sign_naturals",
        }
    }

    pub fn from_name(name: &str) -> Option<Builtin> {
        Builtin::ALL.into_iter().find(|b| b.name() == name)
    }
}

/// Symbolic description of a sequence `i ↦ G_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SeqExpr {
    Named(Builtin),
    Const(Game),
    /// Finite head followed by a tail sequence.
    List(Vec<Game>, Box<SeqExpr>),
    Neg(Box<SeqExpr>),
    /// Round-robin merge: index `i` reads sequence `i mod k` at `i div k`.
    Interleave(Vec<SeqExpr>),
    /// Subsequence of the entries that are not second-player wins, padded
    /// with `{|}` if there are only finitely many.
    Nonzero(Box<SeqExpr>),
    /// Differences `H_i - H_{i-1}` with `H_{-1} = {|}`.
    Limit(Box<SeqExpr>),
}

/// How far scans for oracle witnesses look before giving up.
pub const SCAN_HORIZON: usize = 256;

/// A sequence specification with cached generator values.
pub struct SequenceSpec {
    expr: SeqExpr,
    text: String,
    cache: Mutex<HashMap<usize, Summand>>,
}

impl SequenceSpec {
    pub fn new(expr: SeqExpr) -> Arc<SequenceSpec> {
        let text = expr.to_string();
        Arc::new(SequenceSpec {
            expr,
            text,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn builtin(b: Builtin) -> Arc<SequenceSpec> {
        SequenceSpec::new(SeqExpr::Named(b))
    }

    pub fn expr(&self) -> &SeqExpr {
        &self.expr
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    /// `i ↦ -G_i`, with double negation removed.
    pub fn negated(&self) -> Arc<SequenceSpec> {
        match &self.expr {
            SeqExpr::Neg(inner) => SequenceSpec::new((**inner).clone()),
            e => SequenceSpec::new(SeqExpr::Neg(Box::new(e.clone()))),
        }
    }

    pub fn get(&self, i: usize) -> Summand {
        if let Some(s) = self.cache.lock().get(&i) {
            return s.clone();
        }
        let s = self.expr.get(i);
        self.cache.lock().insert(i, s.clone());
        s
    }

    /// Whether some `G_i` with `i ≥ k` offers `player` a move; `None` if unknown.
    pub fn has_options_beyond(&self, player: Player, k: usize) -> Option<bool> {
        self.expr.has_options_beyond(player, k)
    }

    /// Exact value of `G_i` when it is a number.
    pub fn dyadic(&self, i: usize) -> Option<Dyadic> {
        match self.get(i) {
            Summand::Form(g) => number_value(g),
            Summand::Ordinal(o) => o.value.as_finite().map(|k| {
                let k = Dyadic::integer(k as i128);
                if o.owner == Player::Left {
                    k
                } else {
                    -k
                }
            }),
        }
    }

    /// Classical sum `Σ r_i` for convergent dyadic series.
    pub fn dyadic_sum(&self) -> Option<Dyadic> {
        self.expr.dyadic_sum()
    }

    /// Upper bound on `Σ_{i ≥ k} |r_i|`.
    pub fn tail_abs_sum(&self, k: usize) -> Option<Dyadic> {
        self.expr.tail_abs_sum(k)
    }

    /// An upper bound on `|r_i|` for `i ≥ k` that is attained or exceeded by no term.
    pub fn tail_sup(&self, k: usize) -> Option<Dyadic> {
        self.expr.tail_sup(k)
    }

    /// Ordinal value of `G_i` when it is an ordinal (a Left-only form or ordinal summand).
    pub fn ordinal(&self, i: usize) -> Option<Ordinal> {
        self.get(i).ordinal_value()
    }

    /// Least `m ≥ n` with `G_0 + ⋯ + G_m ≥ 0` (Left) or `≤ 0` (Right), by kernel scan.
    pub fn partial_sum_sign_witness(&self, n: usize, side: Player) -> Option<usize> {
        let mut acc = Vec::new();
        for m in 0..=n + SCAN_HORIZON {
            acc.push(self.get(m).as_form()?);
            if m >= n {
                let s = sum_value(&acc);
                let ok = match side {
                    Player::Left => crate::kernel::leq(Game::zero(), s),
                    Player::Right => crate::kernel::leq(s, Game::zero()),
                };
                if ok {
                    return Some(m);
                }
                acc = vec![s];
            }
        }
        None
    }

    /// Least `m > n` with `G_m` a first-player win.
    pub fn first_winner_index_after(&self, n: usize) -> Option<usize> {
        (n + 1..=n + SCAN_HORIZON)
            .find(|&m| self.get(m).as_form().is_some_and(|g| outcome(g) == Outcome::FirstWins))
    }

    /// The first `count` indices `≥ from` whose entries are not second-player wins.
    pub fn nonzero_indices_from(&self, from: usize, count: usize) -> Vec<usize> {
        (from..from + SCAN_HORIZON * (count + 1))
            .filter(|&i| !self.get(i).is_zero())
            .take(count)
            .collect()
    }

    /// Whether every entry from some index on is a second-player win, when known.
    pub fn eventually_zero(&self) -> Option<bool> {
        match self.expr.periodic() {
            Some((_, period)) => Some(period.iter().all(Summand::is_zero)),
            None => self.expr.never_zero().then_some(false),
        }
    }

    /// Last index whose entry is not a second-player win, for eventually-zero sequences.
    pub fn last_nonzero(&self) -> Option<Option<usize>> {
        let (start, period) = self.expr.periodic()?;
        if !period.iter().all(Summand::is_zero) {
            return None;
        }
        Some((0..start).rev().find(|&i| !self.get(i).is_zero()))
    }

    /// Eventually periodic structure `(start, period)`, when known.
    pub fn periodic(&self) -> Option<(usize, Vec<Summand>)> {
        self.expr.periodic()
    }
}

impl fmt::Debug for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SequenceSpec({})", self.text)
    }
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl PartialEq for SequenceSpec {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for SequenceSpec {}

impl Hash for SequenceSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.text.hash(state);
    }
}

fn sign_form(d: Dyadic) -> Game {
    SignSeq::from_dyadic(d).realize().expect("dyadics have finite sign sequences")
}

fn sign_integer(n: i64) -> Game {
    sign_form(Dyadic::integer(n as i128))
}

impl SeqExpr {
    fn get(&self, i: usize) -> Summand {
        use Builtin::*;
        let form = |g: Game| Summand::Form(g);
        match self {
            SeqExpr::Named(b) => match b {
                Ones => form(Game::integer(1)),
                Twos => form(sign_integer(2)),
                Stars => form(Game::star()),
                Ups => form(Game::up()),
                PmOne => form(Game::integer(if i.is_multiple_of(2) { 1 } else { -1 })),
                GeomHalf => form(sign_form(Dyadic::pow2_inv(i as u32 + 1))),
                QuarterGeom => form(sign_form(Dyadic::pow2_inv(i as u32 + 2))),
                OrdPowers => Summand::Ordinal(OrdinalGame::new(
                    Ordinal::omega_pow(Ordinal::finite(i as u64)),
                    Player::Left,
                )),
                MinusOneThenOnes => form(Game::integer(if i == 0 { -1 } else { 1 })),
                ZeroZeroThenOnes => form(Game::integer(if i < 2 { 0 } else { 1 })),
                SumformZeroThenOnes => form(if i == 0 {
                    disjunctive_sum(&[Game::integer(-1), Game::integer(1)])
                } else {
                    Game::integer(1)
                }),
                ZeroformThenOnes => form(Game::integer(if i == 0 { 0 } else { 1 })),
                CanonNaturals => form(Game::integer(i as i64)),
                SignNaturals => form(sign_integer(i as i64)),
            },
            SeqExpr::Const(g) => form(*g),
            SeqExpr::List(items, tail) => match items.get(i) {
                Some(g) => form(*g),
                None => tail.get(i - items.len()),
            },
            SeqExpr::Neg(e) => e.get(i).negated(),
            SeqExpr::Interleave(es) => es[i % es.len()].get(i / es.len()),
            SeqExpr::Nonzero(e) => nonzero_entry(e, i),
            SeqExpr::Limit(e) => {
                let cur = e.get(i).as_form();
                let prev = if i == 0 { Some(Game::zero()) } else { e.get(i - 1).as_form() };
                match (cur, prev) {
                    (Some(c), Some(p)) => form(disjunctive_sum(&[c, negate(p)])),
                    _ => panic!("limit differences need finite forms"),
                }
            }
        }
    }

    /// `(start, period)` such that entry `start + k` equals `period[k mod len]`.
    fn periodic(&self) -> Option<(usize, Vec<Summand>)> {
        use Builtin::*;
        let unit = |start: usize, g: Game| Some((start, vec![Summand::Form(g)]));
        match self {
            SeqExpr::Named(b) => match b {
                Ones | MinusOneThenOnes | SumformZeroThenOnes | ZeroformThenOnes => {
                    unit(if *b == Ones { 0 } else { 1 }, Game::integer(1))
                }
                ZeroZeroThenOnes => unit(2, Game::integer(1)),
                Twos => unit(0, sign_integer(2)),
                Stars => unit(0, Game::star()),
                Ups => unit(0, Game::up()),
                PmOne => Some((
                    0,
                    vec![Summand::Form(Game::integer(1)), Summand::Form(Game::integer(-1))],
                )),
                GeomHalf | QuarterGeom | OrdPowers | CanonNaturals | SignNaturals => None,
            },
            SeqExpr::Const(g) => unit(0, *g),
            SeqExpr::List(items, tail) => {
                let (s, p) = tail.periodic()?;
                Some((items.len() + s, p))
            }
            SeqExpr::Neg(e) => {
                let (s, p) = e.periodic()?;
                Some((s, p.iter().map(Summand::negated).collect()))
            }
            SeqExpr::Interleave(es) => {
                let k = es.len();
                let mut start = 0;
                let mut len = 1;
                for e in es {
                    let (s, p) = e.periodic()?;
                    start = start.max(s);
                    len = lcm(len, p.len());
                }
                let start = start * k;
                let period = (start..start + len * k).map(|i| self.get(i)).collect();
                Some((start, period))
            }
            SeqExpr::Nonzero(e) => {
                let (s, p) = e.periodic()?;
                let nz: Vec<Summand> = p.iter().filter(|x| !x.is_zero()).cloned().collect();
                let head = (0..s).filter(|&i| !e.get(i).is_zero()).count();
                if nz.is_empty() {
                    Some((head, vec![Summand::Form(Game::zero())]))
                } else {
                    Some((head, nz))
                }
            }
            SeqExpr::Limit(e) => {
                let (s, p) = e.periodic()?;
                let period = (s + 1..s + 1 + p.len()).map(|i| self.get(i)).collect();
                Some((s + 1, period))
            }
        }
    }

    /// True when no entry is a second-player win, known structurally.
    fn never_zero(&self) -> bool {
        match self {
            SeqExpr::Named(b) => matches!(b, Builtin::GeomHalf | Builtin::QuarterGeom | Builtin::OrdPowers),
            SeqExpr::Neg(e) => e.never_zero(),
            SeqExpr::List(items, tail) => {
                items.iter().all(|g| outcome(*g) != Outcome::SecondWins) && tail.never_zero()
            }
            SeqExpr::Interleave(es) => es.iter().all(SeqExpr::never_zero),
            _ => false,
        }
    }

    fn has_options_beyond(&self, p: Player, k: usize) -> Option<bool> {
        if let Some((start, period)) = self.periodic() {
            let end = k.max(start) + period.len();
            return Some((k..end).any(|i| self.get(i).has_options(p)));
        }
        match self {
            SeqExpr::Named(b) => match b {
                Builtin::GeomHalf | Builtin::QuarterGeom => Some(true),
                Builtin::OrdPowers | Builtin::CanonNaturals | Builtin::SignNaturals => {
                    Some(p == Player::Left)
                }
                _ => None,
            },
            SeqExpr::List(items, tail) => {
                if items.iter().skip(k).any(|g| !g.options(p).is_empty()) {
                    return Some(true);
                }
                tail.has_options_beyond(p, k.saturating_sub(items.len()))
            }
            SeqExpr::Neg(e) => e.has_options_beyond(p.opposite(), k),
            SeqExpr::Interleave(es) => {
                let n = es.len();
                let mut unknown = false;
                for (r, e) in es.iter().enumerate() {
                    let from = if k > r { (k - r).div_ceil(n) } else { 0 };
                    match e.has_options_beyond(p, from) {
                        Some(true) => return Some(true),
                        Some(false) => {}
                        None => unknown = true,
                    }
                }
                (!unknown).then_some(false)
            }
            SeqExpr::Limit(e) => {
                let own = e.has_options_beyond(p, k)?;
                let prev = e.has_options_beyond(p.opposite(), k.saturating_sub(1))?;
                Some(own || prev)
            }
            SeqExpr::Nonzero(e) if e.never_zero() => e.has_options_beyond(p, k),
            _ => None,
        }
    }

    fn dyadic_sum(&self) -> Option<Dyadic> {
        match self {
            SeqExpr::Named(Builtin::GeomHalf) => Some(Dyadic::ONE),
            SeqExpr::Named(Builtin::QuarterGeom) => Some(Dyadic::ONE.half()),
            SeqExpr::Const(g) if number_value(*g) == Some(Dyadic::ZERO) => Some(Dyadic::ZERO),
            SeqExpr::List(items, tail) => {
                let head: Option<Vec<Dyadic>> = items.iter().map(|g| number_value(*g)).collect();
                Some(head?.into_iter().sum::<Dyadic>() + tail.dyadic_sum()?)
            }
            SeqExpr::Neg(e) => e.dyadic_sum().map(|d| -d),
            SeqExpr::Interleave(es) => es.iter().map(SeqExpr::dyadic_sum).sum(),
            _ => None,
        }
    }

    fn tail_abs_sum(&self, k: usize) -> Option<Dyadic> {
        match self {
            SeqExpr::Named(Builtin::GeomHalf) => Some(Dyadic::pow2_inv(k as u32)),
            SeqExpr::Named(Builtin::QuarterGeom) => Some(Dyadic::pow2_inv(k as u32 + 1)),
            SeqExpr::Const(g) if number_value(*g) == Some(Dyadic::ZERO) => Some(Dyadic::ZERO),
            SeqExpr::List(items, tail) => {
                let head: Option<Vec<Dyadic>> =
                    items.iter().skip(k).map(|g| number_value(*g).map(Dyadic::abs)).collect();
                Some(head?.into_iter().sum::<Dyadic>() + tail.tail_abs_sum(k.saturating_sub(items.len()))?)
            }
            SeqExpr::Neg(e) => e.tail_abs_sum(k),
            SeqExpr::Interleave(es) => {
                let n = es.len();
                es.iter()
                    .enumerate()
                    .map(|(r, e)| e.tail_abs_sum(if k > r { (k - r).div_ceil(n) } else { 0 }))
                    .sum()
            }
            _ => None,
        }
    }

    fn tail_sup(&self, k: usize) -> Option<Dyadic> {
        match self {
            SeqExpr::Named(Builtin::GeomHalf) => Some(Dyadic::pow2_inv(k as u32 + 1)),
            SeqExpr::Named(Builtin::QuarterGeom) => Some(Dyadic::pow2_inv(k as u32 + 2)),
            SeqExpr::Const(g) if number_value(*g) == Some(Dyadic::ZERO) => Some(Dyadic::ZERO),
            SeqExpr::List(items, tail) => {
                let mut best = tail.tail_sup(k.saturating_sub(items.len()))?;
                for g in items.iter().skip(k) {
                    best = best.max(number_value(*g)?.abs());
                }
                Some(best)
            }
            SeqExpr::Neg(e) => e.tail_sup(k),
            SeqExpr::Interleave(es) => {
                let n = es.len();
                let mut best = Dyadic::ZERO;
                for (r, e) in es.iter().enumerate() {
                    best = best.max(e.tail_sup(if k > r { (k - r).div_ceil(n) } else { 0 })?);
                }
                Some(best)
            }
            _ => None,
        }
    }
}

fn nonzero_entry(e: &SeqExpr, i: usize) -> Summand {
    if let Some((start, period)) = e.periodic() {
        if period.iter().all(Summand::is_zero) {
            let nz: Vec<usize> = (0..start).filter(|&j| !e.get(j).is_zero()).collect();
            return match nz.get(i) {
                Some(&j) => e.get(j),
                None => Summand::Form(Game::zero()),
            };
        }
    }
    let mut seen = 0;
    let mut j = 0;
    loop {
        let s = e.get(j);
        if !s.is_zero() {
            if seen == i {
                return s;
            }
            seen += 1;
        }
        j += 1;
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

impl fmt::Display for SeqExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeqExpr::Named(b) => f.write_str(b.name()),
            SeqExpr::Const(g) => write!(f, "const({g})"),
            SeqExpr::List(items, tail) => {
                write!(f, "list([")?;
                for (k, g) in items.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, "],tail={tail})")
            }
            SeqExpr::Neg(e) => write!(f, "neg({e})"),
            SeqExpr::Interleave(es) => {
                write!(f, "interleave(")?;
                for (k, e) in es.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{e}")?;
                }
                write!(f, ")")
            }
            SeqExpr::Nonzero(e) => write!(f, "nonzero({e})"),
            SeqExpr::Limit(e) => write!(f, "limit({e})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::conway_eq;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn builtin_values() {
        let ones = SequenceSpec::builtin(Builtin::Ones);
        assert_eq!(ones.get(7), Summand::Form(Game::integer(1)));
        let g = SequenceSpec::builtin(Builtin::GeomHalf);
        assert_eq!(g.dyadic(0), Some(d("1/2")));
        assert_eq!(g.dyadic(2), Some(d("1/8")));
        assert_eq!(g.dyadic_sum(), Some(Dyadic::ONE));
        let q = SequenceSpec::builtin(Builtin::QuarterGeom);
        assert_eq!(q.dyadic(0), Some(d("1/4")));
        assert_eq!(q.dyadic_sum(), Some(d("1/2")));
        let m = SequenceSpec::builtin(Builtin::MinusOneThenOnes);
        let partial: Vec<Dyadic> = (0..4)
            .scan(Dyadic::ZERO, |acc, i| {
                *acc = *acc + m.dyadic(i).unwrap();
                Some(*acc)
            })
            .collect();
        assert_eq!(partial, vec![d("-1"), d("0"), d("1"), d("2")]);
        let o = SequenceSpec::builtin(Builtin::OrdPowers);
        assert_eq!(o.ordinal(2), Some("w^2".parse().unwrap()));
        assert_eq!(SequenceSpec::builtin(Builtin::Twos).ordinal(3), Some(Ordinal::finite(2)));
    }

    #[test]
    fn negation_is_involutive() {
        let g = SequenceSpec::builtin(Builtin::GeomHalf);
        let n = g.negated();
        assert_eq!(n.dyadic_sum(), Some(-Dyadic::ONE));
        assert_eq!(n.negated().text(), g.text());
        let ones = SequenceSpec::builtin(Builtin::Ones);
        for i in 0..50 {
            assert_eq!(ones.negated().get(i), Summand::Form(Game::integer(-1)));
            assert_eq!(ones.negated().negated().get(i), ones.get(i));
        }
    }

    #[test]
    fn option_certificates() {
        let ones = SequenceSpec::builtin(Builtin::Ones);
        assert_eq!(ones.has_options_beyond(Player::Right, 0), Some(false));
        assert_eq!(ones.has_options_beyond(Player::Left, 9), Some(true));
        let m = SequenceSpec::builtin(Builtin::MinusOneThenOnes);
        assert_eq!(m.has_options_beyond(Player::Right, 0), Some(true));
        assert_eq!(m.has_options_beyond(Player::Right, 1), Some(false));
        let g = SequenceSpec::builtin(Builtin::GeomHalf);
        assert_eq!(g.negated().has_options_beyond(Player::Left, 40), Some(true));
        let o = SequenceSpec::builtin(Builtin::OrdPowers);
        assert_eq!(o.has_options_beyond(Player::Right, 0), Some(false));
    }

    #[test]
    fn oracles() {
        let pm = SequenceSpec::builtin(Builtin::PmOne);
        assert_eq!(pm.partial_sum_sign_witness(0, Player::Left), Some(0));
        assert_eq!(pm.partial_sum_sign_witness(2, Player::Right), Some(3));
        let stars = SequenceSpec::builtin(Builtin::Stars);
        assert_eq!(stars.first_winner_index_after(4), Some(5));
        let g = SequenceSpec::builtin(Builtin::GeomHalf);
        assert_eq!(g.tail_abs_sum(1), Some(d("1/2")));
        assert_eq!(g.tail_sup(2), Some(d("1/8")));
    }

    #[test]
    fn combinators() {
        let zs = Game::new([Game::star()], [Game::star()]);
        let e = SeqExpr::List(
            vec![Game::star(), zs, Game::star()],
            Box::new(SeqExpr::Interleave(vec![
                SeqExpr::Named(Builtin::Stars),
                SeqExpr::Const(zs),
            ])),
        );
        let s = SequenceSpec::new(e.clone());
        assert_eq!(s.get(1), Summand::Form(zs));
        assert_eq!(s.get(3), Summand::Form(Game::star()));
        assert_eq!(s.get(4), Summand::Form(zs));
        let nz = SequenceSpec::new(SeqExpr::Nonzero(Box::new(e)));
        for i in 0..10 {
            assert_eq!(nz.get(i), Summand::Form(Game::star()));
        }
        assert_eq!(nz.periodic().map(|p| p.1.len()), Some(1));

        let lim = SequenceSpec::new(SeqExpr::Limit(Box::new(SeqExpr::List(
            vec![Game::integer(1), Game::star()],
            Box::new(SeqExpr::Const(Game::up())),
        ))));
        let Summand::Form(g2) = lim.get(2) else { panic!() };
        assert!(conway_eq(g2, disjunctive_sum(&[Game::up(), Game::star()])));
        let Summand::Form(g5) = lim.get(5) else { panic!() };
        assert!(conway_eq(g5, Game::zero()));
        assert_eq!(lim.eventually_zero(), Some(true));
        assert_eq!(lim.last_nonzero(), Some(Some(2)));
    }

}
