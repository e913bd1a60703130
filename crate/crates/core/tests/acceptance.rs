//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
//! criterion fails.

mod common;

use std::collections::BTreeMap;
use std::process::ExitCode;

use num_rational::Ratio;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use common::Brute;
use gameseries::arena::{Action, CompoundState, Move};
use gameseries::cases::{registry, Expect};
use gameseries::hackenbush::{stack_to_game, Edge, Stack};
use gameseries::kernel::{canonical_form, grundy, leq, outcome};
use gameseries::limits::{string_limit, StringFamily};
use gameseries::parse::parse_compound;
use gameseries::strategies::real_series_second;
use gameseries::verifier::{certify, render_report, Certification, CertificationTask, ReportLine, Verdict};
use gameseries::{Player, Sign, SignSeq};

type Q = Ratio<i128>;

struct Check {
    pass: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Check {
    Check { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Check {
    Check { pass: false, detail: detail.into() }
}

struct Ran {
    criterion: u8,
    task: CertificationTask,
    expect: Expect,
    cert: Certification,
}

fn run_registry() -> Vec<Ran> {
    let mut out = Vec::new();
    for case in registry() {
        for (task, expect) in case.tasks(None).expect("registry cases build") {
            let cert = certify(&task);
            out.push(Ran { criterion: case.criterion, task, expect, cert });
        }
    }
    out
}

fn report(ran: &[&Ran]) -> String {
    let lines: Vec<ReportLine> = ran.iter().map(|r| ReportLine::new(&r.task, &r.cert)).collect();
    render_report(&lines)
}

/// All runs of one criterion must meet their expectation.
fn registry_criterion(ran: &[Ran], criterion: u8) -> Check {
    let mine: Vec<&Ran> = ran.iter().filter(|r| r.criterion == criterion).collect();
    if mine.is_empty() {
        return fail("no registered cases");
    }
    let misses: Vec<String> = mine
        .iter()
        .filter(|r| !r.expect.matches(&r.cert.verdict))
        .map(|r| format!("[expected {}] {}", r.expect.label(), ReportLine::new(&r.task, &r.cert)))
        .collect();
    if misses.is_empty() {
        pass(format!("{} runs as expected", mine.len()))
    } else {
        fail(misses.join("\n    "))
    }
}

fn criterion_1() -> Check {
    let corpus = common::small_corpus();
    let mut brute = Brute::new();
    let mut bad = Vec::new();
    for &g in &corpus {
        if outcome(g) != brute.outcome(g) {
            bad.push(format!("outcome of {g}"));
        }
        let c = canonical_form(g);
        if canonical_form(c) != c {
            bad.push(format!("canonical form of {g} is not idempotent"));
        }
        if !brute.equal(g, c) {
            bad.push(format!("canonical form of {g} changes its value"));
        }
    }
    let mut pairs = 0;
    for (a, &g) in corpus.iter().enumerate() {
        for &h in corpus.iter().skip(a % 3).step_by(3) {
            pairs += 1;
            if leq(g, h) != brute.leq(g, h) {
                bad.push(format!("{g} <= {h}"));
            }
        }
    }
    if bad.is_empty() {
        pass(format!("{} forms, {pairs} ordered pairs agree with brute-force play", corpus.len()))
    } else {
        fail(bad.into_iter().take(5).collect::<Vec<_>>().join("; "))
    }
}

fn geom_entry(first_exp: u32, negated: bool) -> impl Fn(usize) -> Q {
    move |i| {
        let v = Q::new(1, 1i128 << (i as u32 + first_exp));
        if negated {
            -v
        } else {
            v
        }
    }
}

/// The committed constants, re-derived from the strategy's log line.
struct Commitment {
    p: u32,
    h: u32,
    n1: usize,
    n2: usize,
    n: usize,
    ells: Vec<usize>,
}

fn parse_commitment(line: &str) -> Option<Commitment> {
    let field = |key: &str| -> Option<&str> {
        let start = line.find(&format!(" {key}="))? + key.len() + 2;
        line[start..].split(' ').next()
    };
    let ells = line[line.find(" l=")? + 3..].trim_matches(['[', ']']);
    Some(Commitment {
        p: field("p")?.parse().ok()?,
        h: field("h")?.parse().ok()?,
        n1: field("n'")?.parse().ok()?,
        n2: field("n''")?.parse().ok()?,
        n: field("n")?.parse().ok()?,
        ells: ells.split(", ").filter(|s| !s.is_empty()).map(|s| s.parse().ok()).collect::<Option<_>>()?,
    })
}

/// Opponent moves on the number first; checks the strategy's constants
/// against the inequalities with exact rationals.
fn check_commitment(compound: &str, side: Player, r: Q, s: Q, entry: impl Fn(usize) -> Q) -> Result<String, String> {
    let start = parse_compound(compound).map_err(|e| e.to_string())?;
    let initial = CompoundState::new(start, side.opposite());
    let mut strat = real_series_second(side);
    strat.prepare(&initial).map_err(|e| e.to_string())?;
    let opening = initial
        .legal_moves(0)
        .into_iter()
        .find(|m| matches!(m.action, Action::Option(_)))
        .ok_or("opponent has no move on the number")?;
    let after = initial.apply(&opening).map_err(|e| e.to_string())?;
    let reply: Option<Move> = strat.choose(&after, Some(&opening)).map_err(|e| e.to_string())?;
    reply.ok_or("no reply")?;
    let line = strat.trace().iter().find(|l| l.starts_with("b:")).ok_or("no commitment logged")?;
    let c = parse_commitment(line).ok_or_else(|| format!("unreadable commitment {line:?}"))?;
    let two_p = Q::new(1, 1i128 << c.p);
    let gap = (r - s) / Q::from_integer(2 * (c.h as i128 + 1));
    if two_p >= gap {
        return Err(format!("2^-{} is not below (r-s)/(2(h+1)) = {gap}", c.p));
    }
    for l in c.n2..c.n2 + 100 {
        let e = entry(l);
        if e.max(-e) >= two_p {
            return Err(format!("|r_{l}| is not below 2^-{}", c.p));
        }
    }
    let mid = (r + s) / Q::from_integer(2);
    let mut partial: Q = (0..c.n1).map(&entry).sum();
    for m in c.n1..c.n1 + 100 {
        partial += entry(m);
        if partial <= mid {
            return Err(format!("partial sum up to {m} is not above (r+s)/2"));
        }
    }
    let ok_ells = c.ells.len() == c.h as usize + 1
        && c.ells.iter().all(|&l| c.n2 <= l && l <= c.n && entry(l) != Q::from_integer(0));
    if !ok_ells || c.n < c.n1.max(c.n2) {
        return Err(format!("reserved indexes {:?} do not fit n''={} n={}", c.ells, c.n2, c.n));
    }
    Ok(line.clone())
}

fn criterion_6(ran: &[Ran]) -> Check {
    let base = registry_criterion(ran, 6);
    if !base.pass {
        return base;
    }
    let checks = [
        check_commitment("game(-1) + plain(geom_half)", Player::Left, Q::from_integer(1), Q::from_integer(0), geom_entry(1, false)),
        check_commitment("game(-1/2) + plain(quarter_geom)", Player::Left, Q::new(1, 2), Q::from_integer(0), geom_entry(2, false)),
        // Right's commitment is made on the negated compound.
        check_commitment("game(-1/2) + plain(quarter_geom)", Player::Right, Q::new(-1, 2), Q::from_integer(-1), geom_entry(2, true)),
    ];
    let mut lines = Vec::new();
    for c in checks {
        match c {
            Ok(l) => lines.push(l),
            Err(e) => return fail(e),
        }
    }
    pass(format!("{}; constants checked: {}", base.detail, lines.join(" | ")))
}

fn criterion_9(ran: &[Ran]) -> Check {
    let base = registry_criterion(ran, 9);
    if !base.pass {
        return base;
    }
    const LABELS: [&str; 5] = ["a", "b", "b1", "b2", "pair"];
    for r in ran.iter().filter(|r| r.criterion == 9 && r.cert.verdict == Verdict::Certified) {
        if let Some(l) = r.cert.trace.iter().find(|l| !LABELS.contains(&l.as_str())) {
            return fail(format!("{}: unexpected step {l:?}", r.task.case));
        }
    }
    pass(base.detail)
}

fn words(f: &StringFamily<Sign>, from: usize, to: usize) -> Vec<SignSeq> {
    (from..to).map(|i| f.get(i)).collect()
}

/// Every finite prefix of `lim` up to `k` symbols is a prefix of all of
/// `s_m`, `m` in a late window.
fn cofinal(f: &StringFamily<Sign>, lim: &SignSeq) -> bool {
    let probe = lim.finite_prefix(24);
    words(f, 400, 460).iter().all(|w| w.finite_prefix(probe.len() as u64) == probe)
}

fn criterion_13(ran: &[Ran]) -> Check {
    let examples = [
        ("prefixes((+-)^w)", "(+-)^w"),
        ("interleave(prefixes((+-)^w), prefixes((-+)^w))", "()"),
        ("template(+^i -^w @w -)", "(+)^w"),
        ("interleave(const(++), const(+-))", "+"),
    ];
    for (fam, want) in examples {
        let f: StringFamily<Sign> = match fam.parse() {
            Ok(f) => f,
            Err(e) => return fail(format!("{fam}: {e}")),
        };
        let lim = string_limit(&f);
        let want: SignSeq = want.parse().expect("literal");
        if lim != want {
            return fail(format!("{fam}: limit {lim}, expected {want}"));
        }
        if !cofinal(&f, &lim) {
            return fail(format!("{fam}: {lim} is not eventually a prefix"));
        }
    }
    // The alternating family really does start +, -, +-, -+, ...
    let alt: StringFamily<Sign> = examples[1].0.parse().expect("parsed above");
    let first: Vec<String> = words(&alt, 0, 6).iter().map(|w| w.to_string()).collect();
    if first != ["+", "-", "+-", "-+", "+-+", "-+-"] {
        return fail(format!("alternating family starts {first:?}"));
    }
    let base = registry_criterion(ran, 13);
    if !base.pass {
        return base;
    }
    pass(format!("4 string limits exact; {}", base.detail))
}

fn criterion_15() -> Check {
    let st = |s: &str| s.parse::<Stack>().expect("stack literal");
    for s in ["QR", "BS"] {
        let g = canonical_form(stack_to_game(&st(s)));
        if g.expanded() != "{0|*}" {
            return fail(format!("{s} evaluates to {}", g.expanded()));
        }
    }
    for n in 0..=6 {
        let g = stack_to_game(&Stack(vec![Edge::Green; n]));
        if grundy(g) != Some(n as u64) {
            return fail(format!("green stack of height {n} has grundy {:?}", grundy(g)));
        }
    }
    let dark: Vec<Option<u64>> = (0..=6).map(|n| grundy(stack_to_game(&Stack(vec![Edge::DarkGreen; n])))).collect();
    let pinned: Vec<Option<u64>> = [0, 1, 0, 1, 0, 1, 0].into_iter().map(Some).collect();
    if dark != pinned {
        return fail(format!("dark green grundy values {dark:?}"));
    }
    pass("QR and BS are {0|*}; green heights 0..=6 are *n; dark green 0,1,0,1,...")
}

fn playouts(count: usize) -> Result<usize, String> {
    let starts: Vec<Vec<gameseries::arena::Component>> = registry()
        .iter()
        .map(|c| parse_compound(&c.compound).expect("registry compound"))
        .collect();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let mut moves = 0;
    for _ in 0..count {
        let start = starts.choose(&mut rng).expect("nonempty registry").clone();
        let mover = if rng.gen() { Player::Left } else { Player::Right };
        let bound = rng.gen_range(1..=6);
        let mut st = CompoundState::new(start, mover);
        let mut measure = st.progress_measure();
        for _ in 0..10_000 {
            let legal = st.legal_moves(bound);
            let Some(mv) = legal.choose(&mut rng) else { break };
            st = st.apply(mv).map_err(|e| e.to_string())?;
            let next = st.progress_measure();
            if next >= measure {
                return Err(format!("{mv} did not decrease the measure at {st}"));
            }
            measure = next;
            moves += 1;
        }
    }
    Ok(moves)
}

fn criterion_16(ran: &[Ran]) -> Check {
    let moves = match playouts(10_000) {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let mut rechecked = 0;
    for r in ran.iter().filter(|r| r.task.bound == 6 && r.cert.verdict == Verdict::Certified) {
        for b in 3..=5 {
            let mut t = r.task.clone();
            t.bound = b;
            let v = certify(&t).verdict;
            if v != Verdict::Certified {
                return fail(format!("{} {} {}: {} at bound {b}", r.task.case, r.task.certifier.name(), r.task.role.name(), v.label()));
            }
            rechecked += 1;
        }
    }
    let all: Vec<&Ran> = ran.iter().collect();
    let first = report(&all);
    let again = run_registry();
    let second = report(&again.iter().collect::<Vec<_>>());
    if first != second {
        return fail("report differs between two runs");
    }
    pass(format!(
        "10000 playouts, {moves} moves, measure always decreased; {rechecked} re-certifications at bounds 3-5; report of {} bytes stable",
        first.len()
    ))
}

fn main() -> ExitCode {
    let ran = run_registry();
    let results: BTreeMap<u8, (&str, Check)> = [
        (1, ("kernel agrees with brute force", criterion_1())),
        (2, ("alternating +1/-1 series is a second-player win", registry_criterion(&ran, 2))),
        (3, ("ordinal series", registry_criterion(&ran, 3))),
        (4, ("mirror strategy", registry_criterion(&ran, 4))),
        (5, ("impartial series", registry_criterion(&ran, 5))),
        (6, ("convergent dyadic series", criterion_6(&ran))),
        (7, ("finite changes alter the value", registry_criterion(&ran, 7))),
        (8, ("sum-form head under plain and bullet", registry_criterion(&ran, 8))),
        (9, ("bullet invariance under equal summands", criterion_9(&ran))),
        (10, ("dropping second-player summands", registry_criterion(&ran, 10))),
        (11, ("bullet sums of positives against 1", registry_criterion(&ran, 11))),
        (12, ("subset protocol", registry_criterion(&ran, 12))),
        (13, ("limits", criterion_13(&ran))),
        (14, ("limit of an eventually constant sequence", registry_criterion(&ran, 14))),
        (15, ("hackenbush stacks", criterion_15())),
        (16, ("termination, monotonicity and stability", criterion_16(&ran))),
    ]
    .into_iter()
    .collect();
    let mut failed = 0;
    for (k, (title, o)) in &results {
        println!("criterion {k:>2} {}: {title}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", results.len() - failed, results.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
