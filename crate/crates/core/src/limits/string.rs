//! String limits of `ℕ`-indexed sequences of transfinite words.
//!
//! The limit of `(s_i)` is the union of all initial segments that are an
//! initial segment of every `s_m` from some index on. Symbolic families
//! compute it exactly; [`empirical_limit`] only approximates it from a finite
//! sample and says so.
//!
//! Family syntax, over any symbol alphabet:
//!
//! ```text
//! family := "const(" word ")"
//!         | "prefixes(" word ")"                s_i = first i+1 symbols
//!         | "template(" item* ")"               items separated by spaces
//!         | "interleave(" family ("," family)* ")"
//!         | "with_prefix(" word* "," family ")" finitely many leading words
//! item   := sym | sym "^" k | sym "^i" | sym "^(" a "i+" b ")" | sym "^" ordinal | "@w"
//! ```
//!
//! `@w` asserts that the next item starts at position ω for every `i`.

use std::fmt;
use std::str::FromStr;

use crate::error::NumberError;
use crate::numbers::{Ordinal, Symbol, Word};

/// A run whose length may depend on the sequence index `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Item<S> {
    Run(S, Ordinal),
    /// `sym` repeated `a·i + b` times.
    PerIndex { sym: S, a: u64, b: u64 },
    /// Position-ω marker; carries no symbols.
    AtOmega,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StringFamily<S> {
    Const(Word<S>),
    /// `s_i` is the prefix of length `i + 1`.
    Prefixes(Word<S>),
    Template(Vec<Item<S>>),
    /// `s_i = fams[i mod k]` at index `i div k`.
    Interleave(Vec<StringFamily<S>>),
    WithPrefix { head: Vec<Word<S>>, rest: Box<StringFamily<S>> },
    /// `s_i = rest_{i + by}`.
    Shift { by: usize, rest: Box<StringFamily<S>> },
}

impl<S: Symbol> StringFamily<S> {
    /// The `i`-th word.
    pub fn get(&self, i: usize) -> Word<S> {
        match self {
            StringFamily::Const(w) => w.clone(),
            StringFamily::Prefixes(w) => w.truncate(&Ordinal::finite(i as u64 + 1)),
            StringFamily::Template(items) => {
                let mut w = Word::empty();
                for it in items {
                    match it {
                        Item::Run(s, l) => w.push_run(*s, l.clone()),
                        Item::PerIndex { sym, a, b } => w.push_run(*sym, Ordinal::finite(a * i as u64 + b)),
                        Item::AtOmega => {}
                    }
                }
                w
            }
            StringFamily::Interleave(fams) => fams[i % fams.len()].get(i / fams.len()),
            StringFamily::WithPrefix { head, rest } => match head.get(i) {
                Some(w) => w.clone(),
                None => rest.get(i - head.len()),
            },
            StringFamily::Shift { by, rest } => rest.get(i + by),
        }
    }

    /// Replaces the first `k` words by `junk` cycled, keeping the tail.
    pub fn altered(&self, k: usize, junk: &[Word<S>]) -> StringFamily<S> {
        let head = (0..k).map(|j| junk[j % junk.len()].clone()).collect();
        StringFamily::WithPrefix {
            head,
            rest: Box::new(StringFamily::Shift { by: k, rest: Box::new(self.clone()) }),
        }
    }

    /// Checks that every `@w` marker sits at position ω.
    fn validate(&self) -> Result<(), String> {
        match self {
            StringFamily::Template(items) => {
                for i in 0..4 {
                    let mut w = Word::empty();
                    for it in items {
                        match it {
                            Item::Run(s, l) => w.push_run(*s, l.clone()),
                            Item::PerIndex { sym, a, b } => w.push_run(*sym, Ordinal::finite(a * i + b)),
                            Item::AtOmega if w.len() != Ordinal::omega() => {
                                return Err(format!("@w reached at position {} for i={i}", w.len()));
                            }
                            Item::AtOmega => {}
                        }
                    }
                }
                Ok(())
            }
            StringFamily::Interleave(fams) if fams.is_empty() => Err("interleave of nothing".into()),
            StringFamily::Interleave(fams) => fams.iter().try_for_each(|f| f.validate()),
            StringFamily::WithPrefix { rest, .. } | StringFamily::Shift { rest, .. } => rest.validate(),
            _ => Ok(()),
        }
    }
}

/// Where a template walk stands: everything emitted so far is settled, or a
/// run of `sym` grows without bound (`broken` once other symbols follow it).
enum Walk<S> {
    Settled,
    Growing { sym: S, broken: bool },
}

fn template_limit<S: Symbol>(items: &[Item<S>]) -> Word<S> {
    let mut out = Word::empty();
    let mut walk = Walk::Settled;
    for it in items {
        let (sym, len) = match it {
            Item::AtOmega => continue,
            Item::PerIndex { sym, a, b } if *a == 0 => (*sym, Ordinal::finite(*b)),
            Item::Run(s, l) => (*s, l.clone()),
            Item::PerIndex { sym, .. } => {
                match walk {
                    Walk::Settled => walk = Walk::Growing { sym: *sym, broken: false },
                    Walk::Growing { sym: g, ref mut broken } if g != *sym => *broken = true,
                    Walk::Growing { .. } => {}
                }
                continue;
            }
        };
        match walk {
            Walk::Settled => out.push_run(sym, len),
            Walk::Growing { sym: g, broken } => {
                if len.is_finite() {
                    // Lands at a moving finite position: only breaks the run.
                    if g != sym {
                        walk = Walk::Growing { sym: g, broken: true };
                    }
                    continue;
                }
                // A finite prefix is absorbed: `k + len = len`.
                if g == sym && !broken {
                    out.push_run(g, len);
                    walk = Walk::Settled;
                    continue;
                }
                out.push_run(g, Ordinal::omega());
                return out;
            }
        }
    }
    if let Walk::Growing { sym, .. } = walk {
        out.push_run(sym, Ordinal::omega());
    }
    out
}

/// Exact string limit of a symbolic family.
pub fn string_limit<S: Symbol>(fam: &StringFamily<S>) -> Word<S> {
    match fam {
        StringFamily::Const(w) => w.clone(),
        StringFamily::Prefixes(w) => w.truncate(&Ordinal::omega()),
        StringFamily::Template(items) => template_limit(items),
        StringFamily::Interleave(fams) => {
            let mut it = fams.iter().map(string_limit);
            let first = it.next().unwrap_or_else(Word::empty);
            it.fold(first, |acc, w| acc.common_prefix(&w))
        }
        StringFamily::WithPrefix { rest, .. } | StringFamily::Shift { rest, .. } => string_limit(rest),
    }
}

/// A limit guessed from finitely many words; not authoritative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Approximation<S> {
    pub word: Word<S>,
    pub sampled: usize,
    pub window: usize,
}

impl<S: Symbol> fmt::Display for Approximation<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "approximate(K={}, W={}) {}", self.sampled, self.window, self.word)
    }
}

/// Common prefix of the last `window` sampled words.
pub fn empirical_limit<S: Symbol>(words: &[Word<S>], window: usize) -> Approximation<S> {
    let tail = &words[words.len().saturating_sub(window.max(1))..];
    let word = match tail.split_first() {
        None => Word::empty(),
        Some((first, rest)) => rest.iter().fold(first.clone(), |acc, w| acc.common_prefix(w)),
    };
    Approximation { word, sampled: words.len(), window }
}

fn err(text: &str, why: impl fmt::Display) -> NumberError {
    NumberError::Parse {
        what: "string family",
        text: format!("{text}: {why}"),
    }
}

/// Splits on `sep` outside parentheses.
fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut depth = 0i32;
    let mut out = Vec::new();
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_item<S: Symbol>(tok: &str) -> Result<Item<S>, String> {
    if tok == "@w" {
        return Ok(Item::AtOmega);
    }
    let mut chars = tok.chars();
    let c = chars.next().ok_or("empty item")?;
    let sym = S::from_char(c).ok_or_else(|| format!("unknown symbol {c:?}"))?;
    let rest = chars.as_str();
    let Some(exp) = rest.strip_prefix('^') else {
        return if rest.is_empty() { Ok(Item::Run(sym, Ordinal::finite(1))) } else { Err(format!("bad item {tok:?}")) };
    };
    let exp = exp.strip_prefix('(').and_then(|e| e.strip_suffix(')')).unwrap_or(exp);
    if let Some(lin) = exp.find('i') {
        let a = match &exp[..lin] {
            "" => 1,
            k => k.parse().map_err(|_| format!("bad coefficient in {tok:?}"))?,
        };
        let b = match exp[lin + 1..].strip_prefix('+') {
            None if exp[lin + 1..].is_empty() => 0,
            Some(k) => k.parse().map_err(|_| format!("bad offset in {tok:?}"))?,
            None => return Err(format!("bad length in {tok:?}")),
        };
        return Ok(Item::PerIndex { sym, a, b });
    }
    let len: Ordinal = exp.parse().map_err(|_| format!("bad length in {tok:?}"))?;
    Ok(Item::Run(sym, len))
}

impl<S: Symbol> FromStr for StringFamily<S> {
    type Err = NumberError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let t = text.trim();
        let open = t.find('(').ok_or_else(|| err(text, "expected name(...)"))?;
        let body = t[open + 1..].strip_suffix(')').ok_or_else(|| err(text, "missing ')'"))?;
        let word = |w: &str| w.trim().parse::<Word<S>>().map_err(|e| err(text, e));
        let fam = match &t[..open] {
            "const" => StringFamily::Const(word(body)?),
            "prefixes" => StringFamily::Prefixes(word(body)?),
            "template" => StringFamily::Template(
                body.split_whitespace()
                    .map(parse_item)
                    .collect::<Result<_, _>>()
                    .map_err(|e| err(text, e))?,
            ),
            "interleave" => {
                StringFamily::Interleave(split_top(body, ',').into_iter().map(str::parse).collect::<Result<_, _>>()?)
            }
            "with_prefix" => {
                let parts = split_top(body, ',');
                let [head, rest] = parts.as_slice() else {
                    return Err(err(text, "expected words, family"));
                };
                StringFamily::WithPrefix {
                    head: head.split_whitespace().map(word).collect::<Result<_, _>>()?,
                    rest: Box::new(rest.parse()?),
                }
            }
            other => return Err(err(text, format!("unknown family {other:?}"))),
        };
        fam.validate().map_err(|e| err(text, e))?;
        Ok(fam)
    }
}
