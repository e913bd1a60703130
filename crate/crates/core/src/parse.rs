//! Text syntax for games, sequences, compounds and moves. Every `Display`
//! form in the crate parses back to an equal value.
//!
//! ```text
//! game     := term (('+' | '-') term)*
//! term     := '-' term | '{' opts '|' opts '}' | '(' game ')' | INT | INT '/' INT
//!           | '*' [INT] | '^' | 'v'
//! sequence := NAME | const(game) | list([game,...],tail=sequence) | neg(sequence)
//!           | interleave(sequence,...) | nonzero(sequence) | limit(sequence)
//! compound := component ('+' component)*
//! component:= plain(sequence) | bullet(sequence) | subset(sequence) | game(game)
//!           | ord(ORDINAL) | nim(ORDINAL) | nlim(sequence) | mlim(sequence)
//!           | neg(component) | game
//! ```

use std::sync::Arc;

use crate::arena::{Action, Builtin, Component, Move, OrdinalGame, SeqExpr, SequenceSpec, SeriesState, Summand, Variant};
use crate::error::ParseError;
use crate::kernel::{disjunctive_sum, negate, Game};
use crate::limits::{LimitArena, LimitKind};
use crate::numbers::{Dyadic, Ordinal, SignSeq};
use crate::Player;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.rest().chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.pos += c.len_utf8();
        Some(c)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn err(&self, msg: impl Into<String>) -> ParseError {
        ParseError::new(self.pos, msg)
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn expect_word(&mut self, w: &str) -> Result<(), ParseError> {
        self.skip_ws();
        if self.rest().starts_with(w) {
            self.pos += w.len();
            Ok(())
        } else {
            Err(self.err(format!("expected '{w}'")))
        }
    }

    fn ident(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(self.rest().len());
        if len == 0 || !self.rest().starts_with(|c: char| c.is_ascii_alphabetic()) {
            return None;
        }
        let s = &self.rest()[..len];
        self.pos += len;
        Some(s)
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let len = self.rest().find(|c: char| !c.is_ascii_digit()).unwrap_or(self.rest().len());
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        let v = self.rest()[..len].parse().map_err(|_| self.err("number too large"))?;
        self.pos += len;
        Ok(v)
    }

    /// Text up to the parenthesis closing an already consumed `(`.
    fn balanced(&mut self) -> Result<&'a str, ParseError> {
        let start = self.pos;
        let mut depth = 1;
        for (k, c) in self.rest().char_indices() {
            match c {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        self.pos = start + k + 1;
                        return Ok(&self.src[start..start + k]);
                    }
                }
                _ => {}
            }
        }
        Err(self.err("unbalanced parenthesis"))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected '{c}'"))),
        }
    }
}

fn game_expr(c: &mut Cursor<'_>) -> Result<Game, ParseError> {
    let mut parts = vec![game_term(c)?];
    loop {
        if c.eat('+') {
            parts.push(game_term(c)?);
        } else if c.peek() == Some('-') {
            c.bump();
            parts.push(negate(game_term(c)?));
        } else {
            break;
        }
    }
    Ok(if parts.len() == 1 { parts[0] } else { disjunctive_sum(&parts) })
}

fn option_list(c: &mut Cursor<'_>, stop: char) -> Result<Vec<Game>, ParseError> {
    let mut out = Vec::new();
    if c.peek() == Some(stop) {
        return Ok(out);
    }
    loop {
        out.push(game_expr(c)?);
        if !c.eat(',') {
            return Ok(out);
        }
    }
}

fn game_term(c: &mut Cursor<'_>) -> Result<Game, ParseError> {
    match c.peek() {
        Some('-') => {
            c.bump();
            Ok(negate(game_term(c)?))
        }
        Some('{') => {
            c.bump();
            let left = option_list(c, '|')?;
            c.expect('|')?;
            let right = option_list(c, '}')?;
            c.expect('}')?;
            Ok(Game::new(left, right))
        }
        Some('(') => {
            c.bump();
            let g = game_expr(c)?;
            c.expect(')')?;
            Ok(g)
        }
        Some('*') => {
            c.bump();
            let save = c.pos;
            match c.uint() {
                Ok(k) => Ok(Game::nimber(k)),
                Err(_) => {
                    c.pos = save;
                    Ok(Game::star())
                }
            }
        }
        Some('^') | Some('↑') => {
            c.bump();
            Ok(Game::up())
        }
        Some('v') | Some('↓') => {
            c.bump();
            Ok(Game::down())
        }
        Some(d) if d.is_ascii_digit() => {
            let num = c.uint()?;
            let value = if c.eat('/') {
                let at = c.pos;
                let den = c.uint()?;
                format!("{num}/{den}")
                    .parse::<Dyadic>()
                    .map_err(|_| ParseError::new(at, "denominator must be a power of two"))?
            } else {
                Dyadic::integer(num as i128)
            };
            SignSeq::from_dyadic(value).realize().map_err(|e| c.err(e.to_string()))
        }
        Some(other) => Err(c.err(format!("unexpected '{other}' in a game"))),
        None => Err(c.err("unexpected end of input in a game")),
    }
}

/// Parses a finite game expression.
pub fn parse_game(s: &str) -> Result<Game, ParseError> {
    let mut c = Cursor::new(s);
    let g = game_expr(&mut c)?;
    c.finish()?;
    Ok(g)
}

fn seq_expr(c: &mut Cursor<'_>) -> Result<SeqExpr, ParseError> {
    let at = c.pos;
    let name = c.ident().ok_or_else(|| c.err("expected a sequence"))?;
    if let Some(b) = Builtin::from_name(name) {
        return Ok(SeqExpr::Named(b));
    }
    c.expect('(')?;
    let e = match name {
        "const" => SeqExpr::Const(game_expr(c)?),
        "list" => {
            c.expect('[')?;
            let items = option_list(c, ']')?;
            c.expect(']')?;
            c.expect(',')?;
            c.expect_word("tail")?;
            c.expect('=')?;
            SeqExpr::List(items, Box::new(seq_expr(c)?))
        }
        "neg" => SeqExpr::Neg(Box::new(seq_expr(c)?)),
        "nonzero" => SeqExpr::Nonzero(Box::new(seq_expr(c)?)),
        "limit" => SeqExpr::Limit(Box::new(seq_expr(c)?)),
        "interleave" => {
            let mut parts = vec![seq_expr(c)?];
            while c.eat(',') {
                parts.push(seq_expr(c)?);
            }
            SeqExpr::Interleave(parts)
        }
        _ => return Err(ParseError::new(at, format!("unknown sequence {name:?}"))),
    };
    c.expect(')')?;
    Ok(e)
}

/// Parses a sequence specification.
pub fn parse_sequence(s: &str) -> Result<Arc<SequenceSpec>, ParseError> {
    let mut c = Cursor::new(s);
    let e = seq_expr(&mut c)?;
    c.finish()?;
    Ok(SequenceSpec::new(e))
}

fn ordinal_arg(c: &mut Cursor<'_>) -> Result<Ordinal, ParseError> {
    let at = c.pos;
    let text = c.balanced()?;
    text.trim().parse().map_err(|e: crate::NumberError| ParseError::new(at, e.to_string()))
}

fn component(c: &mut Cursor<'_>) -> Result<Component, ParseError> {
    let save = c.pos;
    let Some(word) = c.ident() else {
        return Ok(Component::Finite(game_term(c)?));
    };
    if !c.eat('(') {
        c.pos = save;
        return Ok(Component::Finite(game_term(c)?));
    }
    let comp = match word {
        "plain" | "bullet" | "subset" => {
            let variant = match word {
                "plain" => Variant::Plain,
                "bullet" => Variant::Bullet,
                _ => Variant::Subset,
            };
            let e = seq_expr(c)?;
            c.expect(')')?;
            Component::Series(SeriesState::new(variant, SequenceSpec::new(e)))
        }
        "game" => {
            let g = game_expr(c)?;
            c.expect(')')?;
            Component::Finite(g)
        }
        "ord" => Component::Ordinal(OrdinalGame::new(ordinal_arg(c)?, Player::Left)),
        "nim" => Component::Nimber(ordinal_arg(c)?),
        "nlim" | "mlim" => {
            let kind = if word == "nlim" { LimitKind::Natural } else { LimitKind::Monotone };
            let e = seq_expr(c)?;
            c.expect(')')?;
            Component::Limit(LimitArena::new(kind, SequenceSpec::new(e)))
        }
        "neg" => {
            let inner = component(c)?;
            c.expect(')')?;
            inner.negated()
        }
        _ => return Err(ParseError::new(save, format!("unknown component {word:?}"))),
    };
    Ok(comp)
}

/// Parses a compound: components joined by `+`.
pub fn parse_compound(s: &str) -> Result<Vec<Component>, ParseError> {
    let mut c = Cursor::new(s);
    let mut out = vec![component(&mut c)?];
    while c.eat('+') {
        out.push(component(&mut c)?);
    }
    c.finish()?;
    Ok(out)
}

fn summand(c: &mut Cursor<'_>) -> Result<Summand, ParseError> {
    let save = c.pos;
    match c.ident() {
        Some("ord") => {
            c.expect('(')?;
            Ok(Summand::Ordinal(OrdinalGame::new(ordinal_arg(c)?, Player::Left)))
        }
        Some("neg") => {
            c.expect('(')?;
            let inner = summand(c)?;
            c.expect(')')?;
            Ok(inner.negated())
        }
        _ => {
            c.pos = save;
            Ok(Summand::Form(game_expr(c)?))
        }
    }
}

fn keyed(c: &mut Cursor<'_>, key: &str) -> Result<usize, ParseError> {
    c.expect_word(key)?;
    c.expect('=')?;
    let v = c.uint()? as usize;
    c.expect(',')?;
    Ok(v)
}

fn index_set(c: &mut Cursor<'_>) -> Result<Vec<usize>, ParseError> {
    c.expect('{')?;
    let mut out = Vec::new();
    if !c.eat('}') {
        loop {
            out.push(c.uint()? as usize);
            if c.eat('}') {
                break;
            }
            c.expect(',')?;
        }
    }
    c.expect(',')?;
    Ok(out)
}

/// Parses a move in its display form, e.g. `c0:open(n=2,i=1,0)`.
pub fn parse_move(s: &str) -> Result<Move, ParseError> {
    let mut c = Cursor::new(s);
    c.expect('c')?;
    let component = c.uint()? as usize;
    c.expect(':')?;
    let at = c.pos;
    let kind = c.ident().ok_or_else(|| c.err("expected a move kind"))?;
    c.expect('(')?;
    let action = match kind {
        "opt" => Action::Option(game_expr(&mut c)?),
        "ord" => {
            let o = ordinal_arg(&mut c)?;
            c.finish()?;
            return Ok(Move::new(component, Action::Ordinal(o)));
        }
        "open" => {
            let n = keyed(&mut c, "n")?;
            let index = keyed(&mut c, "i")?;
            Action::Open { n, index, to: summand(&mut c)? }
        }
        "within" => {
            let index = keyed(&mut c, "i")?;
            Action::PlayWithin { index, to: summand(&mut c)? }
        }
        "close" => {
            let m = keyed(&mut c, "m")?;
            let index = keyed(&mut c, "j")?;
            Action::Close { m, index, to: summand(&mut c)? }
        }
        "sopen" => {
            let set = index_set(&mut c)?;
            let index = keyed(&mut c, "i")?;
            Action::SubsetOpen { set, index, to: summand(&mut c)? }
        }
        "sclose" => {
            let set = index_set(&mut c)?;
            let index = keyed(&mut c, "j")?;
            Action::SubsetClose { set, index, to: summand(&mut c)? }
        }
        "pick" => {
            let n = keyed(&mut c, "n")?;
            Action::LimitPick { n, option: game_expr(&mut c)? }
        }
        _ => return Err(ParseError::new(at, format!("unknown move kind {kind:?}"))),
    };
    c.expect(')')?;
    c.finish()?;
    Ok(Move::new(component, action))
}

/// Parses a player name.
pub fn parse_player(s: &str) -> Result<Player, ParseError> {
    match s.trim().to_ascii_lowercase().as_str() {
        "left" | "l" => Ok(Player::Left),
        "right" | "r" => Ok(Player::Right),
        other => Err(ParseError::new(0, format!("unknown player {other:?}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::CompoundState;
    use crate::kernel::{conway_eq, Game};

    #[test]
    fn games() {
        assert_eq!(parse_game("0").unwrap(), Game::zero());
        assert_eq!(parse_game("{0|0}").unwrap(), Game::star());
        assert_eq!(parse_game("*3").unwrap(), Game::nimber(3));
        // Integers and dyadics denote their sign-expansion forms.
        let m2 = parse_game("-2").unwrap();
        assert_eq!(m2.to_string(), "{|0,{|0}}");
        assert!(conway_eq(m2, Game::integer(-2)));
        assert!(conway_eq(parse_game("1/2 + 1/2").unwrap(), Game::integer(1)));
        assert!(conway_eq(parse_game("^ - ^").unwrap(), Game::zero()));
        assert_eq!(parse_game("{ {0|} | }").unwrap(), Game::integer(2));
        let e = parse_game("{0|").unwrap_err();
        assert_eq!(e.pos, 3);
        assert!(parse_game("1/3").is_err());
    }

    #[test]
    fn sequences_round_trip() {
        for s in [
            "ones",
            "const({0,*|0})",
            "list([1,*],tail=const(1/2))",
            "neg(nonzero(list([0,{*|*}],tail=stars)))",
            "interleave(ones,neg(ones))",
            "limit(list([1,*],tail=const(^)))",
        ] {
            let spec = parse_sequence(s).unwrap();
            let again = parse_sequence(spec.text()).unwrap();
            assert_eq!(again.text(), spec.text(), "{s}");
            for i in 0..6 {
                assert_eq!(again.get(i), spec.get(i));
            }
        }
    }

    #[test]
    fn compounds_round_trip() {
        let comps = parse_compound("plain(ones) + neg(ord(w^2+3)) + nim(w) + game(*) + -1 + nlim(sign_naturals)").unwrap();
        assert_eq!(comps.len(), 6);
        let st = CompoundState::new(comps.clone(), Player::Left);
        let again = parse_compound(&st.to_string()).unwrap();
        assert_eq!(again, comps);
    }

    #[test]
    fn moves_round_trip() {
        let st = CompoundState::new(parse_compound("plain(ones) + neg(ord(w)) + subset(twos)").unwrap(), Player::Right);
        let mut all = st.legal_moves(2);
        all.extend(st.with_mover(Player::Left).legal_moves(1));
        for mv in all {
            assert_eq!(parse_move(&mv.to_string()).unwrap(), mv, "{mv}");
        }
    }
}
