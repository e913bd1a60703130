//! One function per non-interactive command. Each prints to stdout and
//! returns the process exit status.

use std::fmt::Write as _;
use std::path::Path;

use anyhow::{bail, Context, Result};
use rayon::prelude::*;

use gameseries::arena::CompoundState;
use gameseries::cases::{self, Case, Expect};
use gameseries::hackenbush::{stack_string_limit, stack_to_game, Edge, Stack};
use gameseries::kernel::{canonical_form, classify, outcome};
use gameseries::limits::{empirical_limit, string_limit, LimitArena, LimitKind, StringFamily};
use gameseries::numbers::number_value;
use gameseries::parse::{parse_compound, parse_game, parse_sequence};
use gameseries::verifier::{certify, render_report, solve_bounded, ReportLine, Verdict};
use gameseries::{Game, Player, Sign, SignSeq};

pub fn eval(expr: &str) -> Result<u8> {
    let g = canonical_form(parse_game(expr)?);
    let c = classify(g);
    println!("canonical={} outcome={:?} number={}", g.expanded(), outcome(g), c.is_number);
    let value = number_value(g).map_or("-".to_string(), |d| d.to_string());
    let grundy = c.grundy.map_or("-".to_string(), |n| n.to_string());
    println!(
        "value={value} impartial={} dicotic={} birthday={} grundy={grundy}",
        c.is_impartial, c.is_dicotic, c.birthday
    );
    Ok(0)
}

/// Report lines of a case and the exit status of its mismatches.
fn run_case(case: &Case, bound: Option<usize>) -> Result<(Vec<ReportLine>, u8)> {
    let mut lines = Vec::new();
    let mut status = 0;
    for (task, expect) in case.tasks(bound)? {
        let cert = certify(&task);
        if !expect.matches(&cert.verdict) {
            status = status.max(mismatch_status(&cert.verdict));
        }
        lines.push(ReportLine::new(&task, &cert));
    }
    Ok((lines, status))
}

fn mismatch_status(v: &Verdict) -> u8 {
    match v {
        Verdict::Inconclusive { .. } => 2,
        _ => 1,
    }
}

pub fn verify(id: &str, bound: Option<usize>) -> Result<u8> {
    let case = cases::find(id)?;
    let (lines, status) = run_case(&case, bound)?;
    print!("{}", render_report(&lines));
    Ok(status)
}

pub fn verify_all(out: Option<&Path>) -> Result<u8> {
    let registry = cases::registry();
    // Cases run in parallel; collecting keeps registry order.
    let results: Vec<(Vec<ReportLine>, u8)> = registry
        .par_iter()
        .map(|c| run_case(c, None))
        .collect::<Result<_>>()?;
    let lines: Vec<ReportLine> = results.iter().flat_map(|(l, _)| l.iter().cloned()).collect();
    let status = results.iter().map(|(_, s)| *s).max().unwrap_or(0);
    let report = render_report(&lines);
    print!("{report}");
    if let Some(path) = out {
        std::fs::write(path, &report).with_context(|| format!("writing {}", path.display()))?;
    }
    let unexpected = results.iter().filter(|(_, s)| *s != 0).count();
    eprintln!(
        "registry v{}: {} cases, {} runs, {} cases with unexpected verdicts",
        cases::REGISTRY_VERSION,
        registry.len(),
        lines.len(),
        unexpected
    );
    Ok(status)
}

pub fn list_cases() -> Result<u8> {
    for c in cases::registry() {
        let runs: Vec<String> = c
            .runs
            .iter()
            .map(|r| {
                let expect = match r.expect {
                    Expect::Certified => "",
                    Expect::Refuted => " expect=REFUTED",
                    Expect::Inapplicable => " expect=INCONCLUSIVE",
                };
                format!("{}/{}/{}@{}{expect}", r.certifier.name(), r.role.name(), r.strategy, r.bound)
            })
            .collect();
        println!("{}  [{}]  {}", c.id, c.compound, c.claim);
        println!("    {}", runs.join(", "));
    }
    Ok(0)
}

pub fn solve(spec: &str, bound: usize, sweep: bool) -> Result<u8> {
    let state = CompoundState::new(parse_compound(spec)?, Player::Left);
    let from = if sweep { 1 } else { bound };
    for b in from..=bound {
        println!("bound={b} outcome={:?} (truncated)", solve_bounded(&state, b));
    }
    Ok(0)
}

/// `words(w0 w1 ..., window=K)` asks for the empirical mode.
fn parse_words(spec: &str) -> Result<Option<(Vec<SignSeq>, usize)>> {
    let Some(body) = spec.trim().strip_prefix("words(").and_then(|s| s.strip_suffix(')')) else {
        return Ok(None);
    };
    let (list, window) = match body.rsplit_once(',') {
        Some((list, w)) => {
            let w = w.trim().strip_prefix("window=").context("expected window=K after the words")?;
            (list, w.trim().parse().context("bad window")?)
        }
        None => (body, 3),
    };
    let words = list.split_whitespace().map(str::parse).collect::<Result<Vec<SignSeq>, _>>()?;
    if words.is_empty() {
        bail!("words(...) needs at least one word");
    }
    Ok(Some((words, window)))
}

pub fn string_limit_cmd(spec: &str) -> Result<u8> {
    if let Some((words, window)) = parse_words(spec)? {
        println!("{}", empirical_limit(&words, window));
        return Ok(0);
    }
    let fam: StringFamily<Sign> = spec.parse()?;
    let lim = string_limit(&fam);
    println!("limit={lim} length={}", lim.len());
    Ok(0)
}

fn picks_line(arena: &LimitArena, p: Player, bound: usize) -> (String, Vec<Game>, bool) {
    let picks = arena.picks(p, bound);
    let mut line = String::new();
    for (k, (n, g)) in picks.iter().enumerate() {
        if k > 0 {
            line.push_str(", ");
        }
        let exact = if arena.certificate(p, *n, *g).exact { "exact" } else { "sampled" };
        let _ = write!(line, "{g}@n={n} [{exact}]");
    }
    if picks.is_empty() {
        line.push_str("none");
    }
    // A periodic template shows every option it has within one period.
    let covered = arena.template.periodic().is_some_and(|(start, period)| start + period.len() <= bound + 1);
    let complete = covered || arena.has_picks_beyond(p, bound + 1) == Some(false);
    (line, picks.into_iter().map(|(_, g)| g).collect(), complete)
}

pub fn game_limit(spec: &str, kind: LimitKind, bound: usize) -> Result<u8> {
    let arena = LimitArena::new(kind, parse_sequence(spec)?);
    let (l_line, left, l_done) = picks_line(&arena, Player::Left, bound);
    let (r_line, right, r_done) = picks_line(&arena, Player::Right, bound);
    println!("{arena}");
    println!("left picks (n <= {bound}): {l_line}");
    println!("right picks (n <= {bound}): {r_line}");
    let form = Game::new(left, right);
    if l_done && r_done {
        println!("value={} canonical={}", form.expanded(), canonical_form(form).expanded());
    } else {
        println!("value: not settled within bound {bound}; picks beyond it may exist");
    }
    Ok(0)
}

pub fn hackenbush_eval(stack: &str) -> Result<u8> {
    let st: Stack = stack.parse()?;
    let g = canonical_form(stack_to_game(&st));
    match g.short_name() {
        Some(name) if name != g.expanded() => println!("canonical={} (= {name})", g.expanded()),
        _ => println!("canonical={}", g.expanded()),
    }
    println!("outcome={:?}", outcome(g));
    Ok(0)
}

pub fn hackenbush_limit(family: &str) -> Result<u8> {
    let fam: StringFamily<Edge> = family.parse()?;
    let lim = stack_string_limit(&fam);
    println!("limit={} length={}", lim.word, lim.word.len());
    match lim.component {
        Some(c) => println!("component={c}"),
        None => println!("component=none"),
    }
    Ok(0)
}
