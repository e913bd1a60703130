//! Turn-based play against the engine. The engine answers with the oracle
//! strategy at the given bound; the human may name any legal move, including
//! indexes beyond the listed ones.

use std::io::{BufRead, Write};

use anyhow::Result;

use gameseries::arena::{CompoundState, Move};
use gameseries::parse::{parse_compound, parse_move};
use gameseries::strategies::by_name;
use gameseries::Player;

/// Longest move list printed at a prompt.
const SHOWN_MOVES: usize = 40;

pub fn play(spec: &str, human: Player, first: Player, bound: usize, mut input: impl BufRead, mut out: impl Write) -> Result<u8> {
    let mut state = CompoundState::new(parse_compound(spec)?, first);
    let engine_side = human.opposite();
    let mut engine = by_name(&format!("oracle({bound})"), engine_side)?;
    engine.prepare(&state)?;
    let mut last: Option<Move> = None;
    writeln!(
        out,
        "you are {}; the engine plays {} with oracle({bound}); {} moves first",
        human.name(),
        engine_side.name(),
        first.name()
    )?;
    writeln!(out, "enter a move number, a move such as c0:open(n=9,i=0,0), or quit")?;
    loop {
        writeln!(out, "position: {state}")?;
        let moves = state.legal_moves(bound);
        if moves.is_empty() {
            if let Ok(Some(loser)) = state.terminal_loser(bound) {
                let who = if loser == human { "you" } else { "the engine" };
                writeln!(out, "{} has no move: {who} lose{}", loser.name(), if loser == human { "" } else { "s" })?;
                return Ok(0);
            }
        }
        let mv = if state.mover == human {
            match prompt(&state, &moves, bound, &mut input, &mut out)? {
                Some(mv) => mv,
                None => {
                    writeln!(out, "game abandoned")?;
                    return Ok(0);
                }
            }
        } else {
            match engine.choose(&state, last.as_ref())? {
                Some(mv) => {
                    writeln!(out, "engine plays {mv}")?;
                    mv
                }
                None => {
                    writeln!(out, "the engine finds no move and resigns")?;
                    return Ok(0);
                }
            }
        };
        state = state.apply(&mv)?;
        last = Some(mv);
    }
}

/// Reads moves until one is legal; `None` on quit or end of input.
fn prompt(
    state: &CompoundState,
    moves: &[Move],
    bound: usize,
    input: &mut impl BufRead,
    out: &mut impl Write,
) -> Result<Option<Move>> {
    if moves.is_empty() {
        writeln!(out, "no moves with indexes up to {bound}; enter one with a larger index")?;
    }
    for (k, mv) in moves.iter().take(SHOWN_MOVES).enumerate() {
        writeln!(out, "  [{k}] {mv}")?;
    }
    if moves.len() > SHOWN_MOVES {
        writeln!(out, "  ... {} more", moves.len() - SHOWN_MOVES)?;
    }
    loop {
        write!(out, "{}> ", state.mover.name())?;
        out.flush()?;
        let mut line = String::new();
        if input.read_line(&mut line)? == 0 {
            return Ok(None);
        }
        let line = line.trim();
        if line == "quit" || line == "q" {
            return Ok(None);
        }
        if let Ok(k) = line.parse::<usize>() {
            match moves.get(k) {
                Some(mv) => return Ok(Some(mv.clone())),
                None => {
                    writeln!(out, "no move numbered {k}")?;
                    continue;
                }
            }
        }
        let mv = match parse_move(line) {
            Ok(mv) => mv,
            Err(e) => {
                writeln!(out, "{e}")?;
                continue;
            }
        };
        // Checked against the protocol without any index bound.
        match state.check_move(&mv) {
            Ok(()) => return Ok(Some(mv)),
            Err(e) => writeln!(out, "{e}")?,
        }
    }
}
