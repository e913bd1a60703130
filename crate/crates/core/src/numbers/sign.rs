use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::dyadic::Dyadic;
use super::ordinal::Ordinal;
use crate::error::NumberError;
use crate::kernel::Game;

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Sign {
    Minus,
    Plus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Symbols that can appear in a transfinite string.
pub trait Symbol: Copy + Eq + std::hash::Hash + fmt::Debug {
    fn to_char(self) -> char;
    fn from_char(c: char) -> Option<Self>;
}

impl Symbol for Sign {
    fn to_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        match c {
            '+' => Some(Sign::Plus),
            '-' => Some(Sign::Minus),
            _ => None,
        }
    }
}

/// A transfinite string: runs of symbols with ordinal lengths, optionally
/// followed by a finite cycle repeated ω times.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word<S> {
    runs: Vec<(S, Ordinal)>,
    cycle: Option<Vec<S>>,
}

/// Sign sequence of a surreal number.
pub type SignSeq = Word<Sign>;

impl<S: Symbol> Word<S> {
    pub fn empty() -> Self {
        Word {
            runs: Vec::new(),
            cycle: None,
        }
    }

    /// Builds from runs, merging adjacent equal symbols and dropping empty runs.
    pub fn from_runs(runs: impl IntoIterator<Item = (S, Ordinal)>) -> Self {
        let mut w = Word::empty();
        for (s, len) in runs {
            w.push_run(s, len);
        }
        w
    }

    pub fn from_symbols(symbols: &[S]) -> Self {
        Word::from_runs(symbols.iter().map(|&s| (s, Ordinal::finite(1))))
    }

    /// `runs` followed by `cycle` repeated ω times.
    pub fn with_cycle(mut self, mut cycle: Vec<S>) -> Self {
        assert!(self.cycle.is_none());
        if cycle.is_empty() {
            return self;
        }
        let n = cycle.len();
        let period = (1..=n)
            .find(|&p| n.is_multiple_of(p) && (p..n).all(|k| cycle[k] == cycle[k - p]))
            .unwrap_or(n);
        cycle.truncate(period);
        if period == 1 {
            self.push_run(cycle[0], Ordinal::omega());
            return self;
        }
        // Absorb trailing symbols that already continue the cycle.
        while let Some((s, l)) = self.runs.last_mut() {
            if *s != cycle[cycle.len() - 1] {
                break;
            }
            let Some(p) = l.predecessor() else { break };
            if p.is_zero() {
                self.runs.pop();
            } else {
                *l = p;
            }
            cycle.rotate_right(1);
        }
        self.cycle = Some(cycle);
        self
    }

    pub fn push_run(&mut self, s: S, len: Ordinal) {
        assert!(self.cycle.is_none(), "cannot extend a word past its ω-cycle");
        if len.is_zero() {
            return;
        }
        match self.runs.last_mut() {
            Some((t, l)) if *t == s => *l = l.add(&len),
            _ => self.runs.push((s, len)),
        }
    }

    pub fn runs(&self) -> &[(S, Ordinal)] {
        &self.runs
    }

    pub fn cycle(&self) -> Option<&[S]> {
        self.cycle.as_deref()
    }

    pub fn len(&self) -> Ordinal {
        let base = self
            .runs
            .iter()
            .fold(Ordinal::zero(), |acc, (_, l)| acc.add(l));
        match self.cycle {
            Some(_) => base.add(&Ordinal::omega()),
            None => base,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty() && self.cycle.is_none()
    }

    pub fn is_finite(&self) -> bool {
        self.cycle.is_none() && self.runs.iter().all(|(_, l)| l.is_finite())
    }

    /// Symbols of a finite word.
    pub fn symbols(&self) -> Option<Vec<S>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = Vec::new();
        for (s, l) in &self.runs {
            out.extend(std::iter::repeat_n(*s, l.as_finite()? as usize));
        }
        Some(out)
    }

    /// Symbol at an ordinal position, or `None` past the end.
    pub fn at(&self, pos: &Ordinal) -> Option<S> {
        let mut start = Ordinal::zero();
        for (s, l) in &self.runs {
            let end = start.add(l);
            if *pos < end {
                return Some(*s);
            }
            start = end;
        }
        let cycle = self.cycle.as_ref()?;
        let k = left_sub(pos, &start).as_finite()?;
        Some(cycle[(k as usize) % cycle.len()])
    }

    /// Prefix of finite length `n` (clipped to the word).
    pub fn finite_prefix(&self, n: u64) -> Vec<S> {
        let mut out = Vec::new();
        for (s, l) in &self.runs {
            if out.len() as u64 >= n {
                return out;
            }
            let take = match l.as_finite() {
                Some(k) => k.min(n - out.len() as u64),
                None => n - out.len() as u64,
            };
            out.extend(std::iter::repeat_n(*s, take as usize));
            if l.as_finite().is_none() {
                return out;
            }
        }
        if let Some(c) = &self.cycle {
            let mut k = 0;
            while (out.len() as u64) < n {
                out.push(c[k % c.len()]);
                k += 1;
            }
        }
        out
    }

    /// Initial segment of length `len` (the whole word if shorter).
    pub fn truncate(&self, len: &Ordinal) -> Word<S> {
        let mut out = Word::empty();
        let mut start = Ordinal::zero();
        for (s, l) in &self.runs {
            let end = start.add(l);
            if end >= *len {
                out.push_run(*s, left_sub(len, &start));
                return out;
            }
            out.push_run(*s, l.clone());
            start = end;
        }
        let Some(c) = &self.cycle else { return out };
        match left_sub(len, &start).as_finite() {
            Some(k) => {
                for j in 0..k as usize {
                    out.push_run(c[j % c.len()], Ordinal::finite(1));
                }
                out
            }
            None => out.with_cycle(c.clone()),
        }
    }

    pub fn map<T: Symbol>(&self, f: impl Fn(S) -> T) -> Word<T> {
        Word {
            runs: self.runs.iter().map(|(s, l)| (f(*s), l.clone())).collect(),
            cycle: self.cycle.as_ref().map(|c| c.iter().map(|&s| f(s)).collect()),
        }
    }

    /// Longest common initial segment.
    pub fn common_prefix(&self, other: &Word<S>) -> Word<S> {
        let (a, cyc_a) = self.normalized();
        let (b, cyc_b) = other.normalized();
        let mut out = Word::empty();
        let (mut i, mut j) = (0usize, 0usize);
        let mut ra: Option<(S, Ordinal)> = None;
        let mut rb: Option<(S, Ordinal)> = None;
        let (mut ca, mut cb) = (0usize, 0usize);
        // Snapshot taken when both words are inside their cycles.
        let mut periodic: Option<(Word<S>, usize, usize)> = None;
        loop {
            if ra.is_none() && rb.is_none() && i == a.len() && j == b.len() {
                if let (Some(x), Some(y)) = (&cyc_a, &cyc_b) {
                    match &periodic {
                        None => periodic = Some((out.clone(), ca, x.len() * y.len())),
                        Some((snap, phase, period)) if ca - phase >= *period => {
                            let mut rot = x.clone();
                            rot.rotate_left(phase % x.len());
                            return snap.clone().with_cycle(rot);
                        }
                        Some(_) => {}
                    }
                }
            }
            if ra.is_none() {
                ra = next_segment(&a, &mut i, cyc_a.as_deref(), &mut ca);
            }
            if rb.is_none() {
                rb = next_segment(&b, &mut j, cyc_b.as_deref(), &mut cb);
            }
            let (Some((sa, la)), Some((sb, lb))) = (ra.clone(), rb.clone()) else {
                return out;
            };
            if sa != sb {
                return out;
            }
            match la.cmp(&lb) {
                Ordering::Equal => {
                    out.push_run(sa, la);
                    ra = None;
                    rb = None;
                }
                Ordering::Less => {
                    out.push_run(sa, la.clone());
                    rb = Some((sb, left_sub(&lb, &la)));
                    ra = None;
                }
                Ordering::Greater => {
                    out.push_run(sa, lb.clone());
                    ra = Some((sa, left_sub(&la, &lb)));
                    rb = None;
                }
            }
        }
    }

    /// Runs and cycle, with a constant cycle folded into an ω-run.
    fn normalized(&self) -> (Vec<(S, Ordinal)>, Option<Vec<S>>) {
        let mut runs = self.runs.clone();
        match &self.cycle {
            Some(c) if c.iter().all(|&s| s == c[0]) => {
                runs.push((c[0], Ordinal::omega()));
                (runs, None)
            }
            c => (runs, c.clone()),
        }
    }
}

fn next_segment<S: Copy>(
    runs: &[(S, Ordinal)],
    i: &mut usize,
    cycle: Option<&[S]>,
    phase: &mut usize,
) -> Option<(S, Ordinal)> {
    if *i < runs.len() {
        *i += 1;
        return Some(runs[*i - 1].clone());
    }
    let c = cycle?;
    *phase += 1;
    Some((c[(*phase - 1) % c.len()], Ordinal::finite(1)))
}

/// The unique `δ` with `a + δ = b` for `a ≤ b`.
fn left_sub(b: &Ordinal, a: &Ordinal) -> Ordinal {
    debug_assert!(a <= b);
    let bt = b.terms();
    let at = a.terms();
    // Skip the common leading terms, then b's tail from the first difference.
    let mut k = 0;
    while k < at.len() && k < bt.len() && at[k] == bt[k] {
        k += 1;
    }
    if k == at.len() {
        return Ordinal::from_terms(bt[k..].to_vec());
    }
    // a's term at k is smaller than b's: either a smaller exponent (absorbed)
    // or the same exponent with a smaller coefficient.
    let mut rest = bt[k..].to_vec();
    if at[k].0 == bt[k].0 {
        rest[0].1 -= at[k].1;
    }
    Ordinal::from_terms(rest)
}

impl SignSeq {
    /// Sign expansion of a dyadic under the simplicity rule.
    pub fn from_dyadic(d: Dyadic) -> SignSeq {
        let mut signs = Vec::new();
        let mut v = Dyadic::ZERO;
        let up = d > Dyadic::ZERO;
        while v != d && ((up && v < d) || (!up && v > d)) {
            if up {
                v = v + Dyadic::ONE;
                signs.push(Sign::Plus);
            } else {
                v = v - Dyadic::ONE;
                signs.push(Sign::Minus);
            }
        }
        let mut step = Dyadic::ONE;
        while v != d {
            step = step.half();
            if d < v {
                v = v - step;
                signs.push(Sign::Minus);
            } else {
                v = v + step;
                signs.push(Sign::Plus);
            }
        }
        SignSeq::from_symbols(&signs)
    }

    /// Value of a finite sign sequence.
    pub fn value(&self) -> Option<Dyadic> {
        let signs = self.symbols()?;
        let mut v = Dyadic::ZERO;
        let Some(&first) = signs.first() else {
            return Some(v);
        };
        let run = signs.iter().take_while(|&&s| s == first).count();
        let unit = if first == Sign::Plus { Dyadic::ONE } else { -Dyadic::ONE };
        for _ in 0..run {
            v = v + unit;
        }
        let mut step = Dyadic::ONE;
        for &s in &signs[run..] {
            step = step.half();
            v = match s {
                Sign::Plus => v + step,
                Sign::Minus => v - step,
            };
        }
        Some(v)
    }

    /// The form of the stack: a position is a prefix; Left may cut at any
    /// `+`, Right at any `-`, removing everything from that point up.
    pub fn realize(&self) -> Result<Game, NumberError> {
        let signs = self
            .symbols()
            .ok_or_else(|| NumberError::Transfinite(self.to_string()))?;
        let mut prefixes = vec![Game::zero()];
        for k in 1..=signs.len() {
            let left = (0..k).filter(|&j| signs[j] == Sign::Plus).map(|j| prefixes[j]);
            let right = (0..k).filter(|&j| signs[j] == Sign::Minus).map(|j| prefixes[j]);
            prefixes.push(Game::new(left, right));
        }
        Ok(prefixes[signs.len()])
    }

    pub fn negate(&self) -> SignSeq {
        self.map(Sign::flip)
    }
}

/// Lexicographic order on finite sign sequences with `- < end < +`.
pub fn compare_signs(a: &[Sign], b: &[Sign]) -> Ordering {
    let rank = |s: Option<&Sign>| match s {
        Some(Sign::Minus) => 0,
        None => 1,
        Some(Sign::Plus) => 2,
    };
    for k in 0..a.len().max(b.len()) {
        let (x, y) = (rank(a.get(k)), rank(b.get(k)));
        if x != y {
            return x.cmp(&y);
        }
    }
    Ordering::Equal
}

impl<S: Symbol> fmt::Display for Word<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "()");
        }
        for (s, l) in &self.runs {
            match l.as_finite() {
                Some(k) => {
                    for _ in 0..k {
                        write!(f, "{}", s.to_char())?;
                    }
                }
                None => write!(f, "({})^{}", s.to_char(), paren_if_sum(l))?,
            }
        }
        if let Some(c) = &self.cycle {
            write!(f, "(")?;
            for s in c {
                write!(f, "{}", s.to_char())?;
            }
            write!(f, ")^w")?;
        }
        Ok(())
    }
}

fn paren_if_sum(o: &Ordinal) -> String {
    let s = o.to_string();
    if s.contains('+') || s.contains('*') {
        format!("({s})")
    } else {
        s
    }
}

/// Parses symbols with run syntax: `+-+`, `(+)^w`, `(+)^(w+1)`, `(+-)^w` for
/// an ω-cycle (only as the final item), and `()` for the empty word.
impl<S: Symbol> FromStr for Word<S> {
    type Err = NumberError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = || NumberError::Parse {
            what: "string",
            text: text.to_string(),
        };
        let t: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
        if t == ['(', ')'] || t.is_empty() {
            return Ok(Word::empty());
        }
        let mut w = Word::empty();
        let mut i = 0;
        while i < t.len() {
            if t[i] == '(' {
                let close = t[i..].iter().position(|&c| c == ')').ok_or_else(err)? + i;
                let body: Vec<S> = t[i + 1..close]
                    .iter()
                    .map(|&c| S::from_char(c).ok_or_else(err))
                    .collect::<Result<_, _>>()?;
                if t.get(close + 1) != Some(&'^') || body.is_empty() {
                    return Err(err());
                }
                let (len, next) = parse_exponent(&t, close + 2).ok_or_else(err)?;
                let len: Ordinal = len.parse().map_err(|_| err())?;
                if body.len() == 1 {
                    w.push_run(body[0], len);
                } else if len == Ordinal::omega() && next == t.len() {
                    w = w.with_cycle(body);
                } else if let Some(k) = len.as_finite() {
                    for _ in 0..k {
                        for &s in &body {
                            w.push_run(s, Ordinal::finite(1));
                        }
                    }
                } else {
                    return Err(err());
                }
                i = next;
            } else {
                let s = S::from_char(t[i]).ok_or_else(err)?;
                w.push_run(s, Ordinal::finite(1));
                i += 1;
            }
        }
        Ok(w)
    }
}

fn parse_exponent(t: &[char], start: usize) -> Option<(String, usize)> {
    if t.get(start) == Some(&'(') {
        let mut depth = 0;
        for (k, &c) in t.iter().enumerate().skip(start) {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        return Some((t[start + 1..k].iter().collect(), k + 1));
                    }
                }
                _ => {}
            }
        }
        None
    } else {
        let mut k = start;
        while k < t.len() && (t[k].is_ascii_alphanumeric() || t[k] == '^') {
            k += 1;
        }
        (k > start).then(|| (t[start..k].iter().collect(), k))
    }
}
