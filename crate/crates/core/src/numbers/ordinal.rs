use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::NumberError;

/// Ordinal below ε₀ in Cantor normal form: `ω^e₁·c₁ + … + ω^eₖ·cₖ` with
/// strictly decreasing exponents and positive coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Ordinal {
    terms: Vec<(Ordinal, u64)>,
}

impl Ordinal {
    pub fn zero() -> Ordinal {
        Ordinal { terms: Vec::new() }
    }

    pub fn finite(n: u64) -> Ordinal {
        if n == 0 {
            Ordinal::zero()
        } else {
            Ordinal {
                terms: vec![(Ordinal::zero(), n)],
            }
        }
    }

    pub fn omega() -> Ordinal {
        Ordinal::omega_pow(Ordinal::finite(1))
    }

    /// `ω^e`.
    pub fn omega_pow(e: Ordinal) -> Ordinal {
        Ordinal { terms: vec![(e, 1)] }
    }

    /// Builds from terms; panics if exponents are not strictly decreasing.
    pub fn from_terms(terms: Vec<(Ordinal, u64)>) -> Ordinal {
        let terms: Vec<_> = terms.into_iter().filter(|t| t.1 > 0).collect();
        assert!(
            terms.windows(2).all(|w| w[0].0 > w[1].0),
            "CNF exponents must strictly decrease"
        );
        Ordinal { terms }
    }

    pub fn terms(&self) -> &[(Ordinal, u64)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_finite(&self) -> bool {
        self.terms.iter().all(|(e, _)| e.is_zero())
    }

    pub fn as_finite(&self) -> Option<u64> {
        match self.terms.as_slice() {
            [] => Some(0),
            [(e, c)] if e.is_zero() => Some(*c),
            _ => None,
        }
    }

    pub fn is_successor(&self) -> bool {
        self.terms.last().is_some_and(|(e, _)| e.is_zero())
    }

    pub fn is_limit(&self) -> bool {
        !self.is_zero() && !self.is_successor()
    }

    /// `α - 1` for successor `α`.
    pub fn predecessor(&self) -> Option<Ordinal> {
        if !self.is_successor() {
            return None;
        }
        let mut terms = self.terms.clone();
        let last = terms.last_mut().unwrap();
        last.1 -= 1;
        if last.1 == 0 {
            terms.pop();
        }
        Some(Ordinal { terms })
    }

    pub fn succ(&self) -> Ordinal {
        self.add(&Ordinal::finite(1))
    }

    /// Coefficient of `ω^e`.
    pub fn coefficient(&self, e: &Ordinal) -> u64 {
        self.terms
            .iter()
            .find(|(x, _)| x == e)
            .map(|t| t.1)
            .unwrap_or(0)
    }

    /// Exponent of the smallest term, if nonzero.
    pub fn last_exponent(&self) -> Option<&Ordinal> {
        self.terms.last().map(|t| &t.0)
    }

    /// Hessenberg (natural) sum: coefficient-wise addition of CNF terms.
    pub fn natural_sum(&self, other: &Ordinal) -> Ordinal {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < other.terms.len() {
            let ord = match (self.terms.get(i), other.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                (None, _) => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.terms[i].0.clone(), self.terms[i].1 + other.terms[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        Ordinal { terms: out }
    }

    /// Coefficient-wise difference `self ⊖ other`, defined when every
    /// coefficient of `other` is at most the matching one of `self`.
    pub fn natural_sub(&self, other: &Ordinal) -> Option<Ordinal> {
        let mut terms = self.terms.clone();
        for (e, c) in &other.terms {
            let t = terms.iter_mut().find(|(x, _)| x == e)?;
            t.1 = t.1.checked_sub(*c)?;
        }
        terms.retain(|t| t.1 > 0);
        Some(Ordinal { terms })
    }

    /// Ordinary (non-commutative) ordinal addition.
    pub fn add(&self, other: &Ordinal) -> Ordinal {
        let Some((lead, lc)) = other.terms.first() else {
            return self.clone();
        };
        let mut terms: Vec<(Ordinal, u64)> =
            self.terms.iter().filter(|(e, _)| e > lead).cloned().collect();
        let mut rest = other.terms.clone();
        if let Some((_, c)) = self.terms.iter().find(|(e, _)| e == lead) {
            rest[0].1 = c + lc;
        }
        terms.extend(rest);
        Ordinal { terms }
    }

    /// The part of `self` made of terms with exponent strictly below `e`.
    pub fn below(&self, e: &Ordinal) -> Ordinal {
        Ordinal {
            terms: self.terms.iter().filter(|(x, _)| x < e).cloned().collect(),
        }
    }

    /// Finite sample of ordinals below `self`: `0..=bound` plus the structural
    /// truncations of the normal form (drop the last unit of a term and refill
    /// the lower part with a few sample values).
    pub fn descent_samples(&self, bound: u64) -> Vec<Ordinal> {
        let mut out: Vec<Ordinal> = (0..=bound)
            .map(Ordinal::finite)
            .filter(|b| b < self)
            .collect();
        for t in 0..self.terms.len() {
            let (e, c) = &self.terms[t];
            let mut prefix: Vec<(Ordinal, u64)> = self.terms[..t].to_vec();
            if *c > 1 {
                prefix.push((e.clone(), c - 1));
            }
            let base = Ordinal { terms: prefix };
            if e.is_zero() {
                out.push(base);
                continue;
            }
            // ω^e reduced by one: add samples from just below ω^e.
            out.push(base.clone());
            for sub in e.descent_samples(bound.min(3)) {
                for k in 1..=bound.max(1) {
                    let tail = Ordinal::from_terms(vec![(sub.clone(), k)]);
                    out.push(base.add(&tail));
                }
            }
        }
        out.retain(|b| b < self);
        out.sort();
        out.dedup();
        out
    }
}

impl Ord for Ordinal {
    fn cmp(&self, other: &Self) -> Ordering {
        for (a, b) in self.terms.iter().zip(other.terms.iter()) {
            match a.0.cmp(&b.0).then(a.1.cmp(&b.1)) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }
}

impl PartialOrd for Ordinal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ordinal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, "+")?;
            }
            if e.is_zero() {
                write!(f, "{c}")?;
                continue;
            }
            if *e == Ordinal::finite(1) {
                write!(f, "w")?;
            } else if e.terms.len() == 1 && (e.is_finite() || *e == Ordinal::omega()) {
                write!(f, "w^{e}")?;
            } else {
                write!(f, "w^({e})")?;
            }
            if *c > 1 {
                write!(f, "*{c}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Ordinal {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut p = OrdParser {
            s: s.as_bytes(),
            pos: 0,
            text: s,
        };
        let o = p.sum()?;
        p.skip_ws();
        if p.pos != p.s.len() {
            return Err(p.err());
        }
        Ok(o)
    }
}

struct OrdParser<'a> {
    s: &'a [u8],
    pos: usize,
    text: &'a str,
}

impl OrdParser<'_> {
    fn err(&self) -> NumberError {
        NumberError::Parse {
            what: "ordinal",
            text: self.text.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn number(&mut self) -> Result<u64, NumberError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        std::str::from_utf8(&self.s[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err())
    }

    // sum := term ('+' term)*   (ordinary addition, so "1+w" = w)
    fn sum(&mut self) -> Result<Ordinal, NumberError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            let t = self.term()?;
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    // term := NAT | 'w' ('^' atom)? ('*' NAT)?
    fn term(&mut self) -> Result<Ordinal, NumberError> {
        match self.peek() {
            Some(b'w') | Some(b'W') => {
                self.pos += 1;
                let mut e = Ordinal::finite(1);
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    e = self.atom()?;
                }
                let mut c = 1;
                if self.peek() == Some(b'*') {
                    self.pos += 1;
                    c = self.number()?;
                }
                Ok(Ordinal::from_terms(vec![(e, c)]))
            }
            Some(b) if b.is_ascii_digit() => Ok(Ordinal::finite(self.number()?)),
            _ => Err(self.err()),
        }
    }

    fn atom(&mut self) -> Result<Ordinal, NumberError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let o = self.sum()?;
                if self.peek() != Some(b')') {
                    return Err(self.err());
                }
                self.pos += 1;
                Ok(o)
            }
            Some(b'w') | Some(b'W') => {
                self.pos += 1;
                Ok(Ordinal::omega())
            }
            _ => Ok(Ordinal::finite(self.number()?)),
        }
    }
}
