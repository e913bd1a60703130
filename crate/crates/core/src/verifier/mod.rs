//! Bounded adversarial certification of strategies, truncated solving, and
//! the one-line report format.

mod solve;

use std::collections::HashSet;
use std::fmt;

pub use solve::{mover_wins_bounded, mover_wins_within, solve_bounded};

use crate::arena::{Component, CompoundState, Move};
use crate::kernel::mover_wins;
use crate::strategies::Strategy;
use crate::Player;

/// Nodes one certification run may visit before giving up.
pub const NODE_LIMIT: u64 = 4_000_000;

/// How far past the bound an adversary left without moves may reach.
pub const ESCAPE_SPAN: usize = 8;

/// Refutations longer than this are reported without a minimality search.
const MINIMIZE_UP_TO: usize = 16;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    First,
    Second,
}

impl Role {
    pub fn name(self) -> &'static str {
        match self {
            Role::First => "first",
            Role::Second => "second",
        }
    }
}

#[derive(Clone)]
pub struct CertificationTask {
    pub case: String,
    pub start: Vec<Component>,
    pub certifier: Player,
    pub role: Role,
    pub strategy: Box<dyn Strategy>,
    pub bound: usize,
}

impl CertificationTask {
    pub fn initial_state(&self) -> CompoundState {
        let mover = match self.role {
            Role::First => self.certifier,
            Role::Second => self.certifier.opposite(),
        };
        CompoundState::new(self.start.clone(), mover)
    }

    /// Variant of the first series component, or `none`.
    pub fn variant_name(&self) -> &'static str {
        self.start
            .iter()
            .find_map(|c| c.as_series().map(|s| s.variant.name()))
            .unwrap_or("none")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Certified,
    /// A line of play, both sides' moves, ending in a position the
    /// certifier loses.
    Refuted { counterplay: Vec<Move> },
    Inconclusive { reason: String },
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Certified => "CERTIFIED",
            Verdict::Refuted { .. } => "REFUTED",
            Verdict::Inconclusive { .. } => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Certification {
    pub verdict: Verdict,
    pub nodes: u64,
    /// Case labels the strategy logged along the first complete line.
    pub trace: Vec<String>,
}

enum Fail {
    Refuted(Vec<Move>),
    Inconclusive(String),
}

struct Search {
    certifier: Player,
    bound: usize,
    nodes: u64,
    node_limit: u64,
    depth_limit: Option<usize>,
    memo: Option<HashSet<(CompoundState, Option<Move>)>>,
    trace: Option<Vec<String>>,
}

impl Search {
    fn leaf(&mut self, strat: &dyn Strategy) {
        if self.trace.is_none() {
            self.trace = Some(strat.trace().to_vec());
        }
    }

    fn visit(
        &mut self,
        state: &CompoundState,
        strat: &mut Box<dyn Strategy>,
        last: Option<&Move>,
        path: &mut Vec<Move>,
    ) -> Result<(), Fail> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return Err(Fail::Inconclusive(format!("node limit {} reached", self.node_limit)));
        }
        if let Some(games) = state.finite_games() {
            // Settled: the kernel plays both sides perfectly from here.
            self.leaf(strat.as_ref());
            let mover_won = mover_wins(&games, state.mover);
            return if mover_won == (state.mover == self.certifier) {
                Ok(())
            } else {
                Err(Fail::Refuted(path.clone()))
            };
        }
        if self.depth_limit.is_some_and(|d| path.len() >= d) {
            return Ok(());
        }
        let key = (state.clone(), last.cloned());
        if self.memo.as_ref().is_some_and(|m| m.contains(&key)) {
            return Ok(());
        }
        if state.mover == self.certifier {
            let mv = match strat.choose(state, last) {
                Err(e) => return Err(Fail::Inconclusive(e.to_string())),
                Ok(None) => {
                    self.leaf(strat.as_ref());
                    return Err(Fail::Refuted(path.clone()));
                }
                Ok(Some(mv)) => mv,
            };
            let Ok(next) = state.apply(&mv) else {
                // An illegal proposal forfeits the game.
                path.push(mv);
                let line = path.clone();
                path.pop();
                return Err(Fail::Refuted(line));
            };
            path.push(mv.clone());
            let r = self.visit(&next, strat, Some(&mv), path);
            path.pop();
            r?;
        } else {
            let mut moves = state.legal_moves(self.bound);
            if moves.is_empty() {
                if let Err(e) = state.terminal_loser(self.bound) {
                    // Stuck only because of the bound: take the nearest
                    // moves beyond it instead of conceding.
                    moves = (self.bound + 1..=self.bound + ESCAPE_SPAN)
                        .map(|b| state.legal_moves(b))
                        .find(|ms| !ms.is_empty())
                        .ok_or_else(|| Fail::Inconclusive(e.to_string()))?;
                } else {
                    self.leaf(strat.as_ref());
                    return Ok(());
                }
            }
            for mv in moves {
                let next = state.apply(&mv).expect("enumerated moves are legal");
                let mut branch = strat.clone();
                path.push(mv.clone());
                let r = self.visit(&next, &mut branch, Some(&mv), path);
                path.pop();
                r?;
            }
        }
        if let Some(m) = self.memo.as_mut() {
            m.insert(key);
        }
        Ok(())
    }
}

fn run(task: &CertificationTask, depth_limit: Option<usize>, node_limit: u64) -> (Result<(), Fail>, Search) {
    let initial = task.initial_state();
    let mut strat = task.strategy.clone();
    let mut search = Search {
        certifier: task.certifier,
        bound: task.bound,
        nodes: 0,
        node_limit,
        depth_limit,
        memo: (strat.is_positional() && depth_limit.is_none()).then(HashSet::new),
        trace: None,
    };
    if let Err(e) = strat.prepare(&initial) {
        return (Err(Fail::Inconclusive(e.to_string())), search);
    }
    let r = search.visit(&initial, &mut strat, None, &mut Vec::new());
    (r, search)
}

/// Checks `task.strategy` against every adversary move with index choices
/// up to `task.bound`. An adversary whose only moves lie beyond the bound
/// gets the moves at the nearest bound that has any. A refutation is shortened to a minimal one by
/// iterative deepening.
pub fn certify(task: &CertificationTask) -> Certification {
    let (result, search) = run(task, None, NODE_LIMIT);
    let nodes = search.nodes;
    let trace = search.trace.unwrap_or_default();
    let verdict = match result {
        Ok(()) => Verdict::Certified,
        Err(Fail::Inconclusive(reason)) => Verdict::Inconclusive { reason },
        Err(Fail::Refuted(line)) => {
            let mut best = line;
            if best.len() <= MINIMIZE_UP_TO {
                for d in 1..best.len() {
                    if let (Err(Fail::Refuted(short)), _) = run(task, Some(d), NODE_LIMIT) {
                        best = short;
                        break;
                    }
                }
            }
            Verdict::Refuted { counterplay: best }
        }
    };
    Certification { verdict, nodes, trace }
}

/// Replays a counterplay line from the task's start; returns the final
/// position when every move is legal.
pub fn replay(task: &CertificationTask, line: &[Move]) -> Result<CompoundState, crate::ArenaError> {
    let mut st = task.initial_state();
    for mv in line {
        st = st.apply(mv)?;
    }
    Ok(st)
}

/// One report line for a certification run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub case: String,
    pub variant: String,
    pub certifier: Player,
    pub role: Role,
    pub strategy: String,
    pub bound: usize,
    pub verdict: Verdict,
    pub nodes: u64,
}

impl ReportLine {
    pub fn new(task: &CertificationTask, cert: &Certification) -> Self {
        ReportLine {
            case: task.case.clone(),
            variant: task.variant_name().into(),
            certifier: task.certifier,
            role: task.role,
            strategy: task.strategy.name(),
            bound: task.bound,
            verdict: cert.verdict.clone(),
            nodes: cert.nodes,
        }
    }
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "case={} variant={} certifier={} role={} strategy={} bound={} verdict={} nodes={} counterplay=",
            self.case,
            self.variant,
            self.certifier.name(),
            self.role.name(),
            self.strategy,
            self.bound,
            self.verdict.label(),
            self.nodes
        )?;
        match &self.verdict {
            Verdict::Refuted { counterplay } if !counterplay.is_empty() => {
                for (k, mv) in counterplay.iter().enumerate() {
                    if k > 0 {
                        write!(f, ";")?;
                    }
                    write!(f, "{mv}")?;
                }
                Ok(())
            }
            Verdict::Inconclusive { reason } => write!(f, "- reason={}", reason.replace('\n', " ")),
            _ => write!(f, "-"),
        }
    }
}

/// Renders report lines, one per line, newline-terminated.
pub fn render_report(lines: &[ReportLine]) -> String {
    lines.iter().map(|l| format!("{l}\n")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arena::{Builtin, SeriesState, SequenceSpec, Variant};
    use crate::kernel::Game;
    use crate::strategies::{oracle_strategy, partial_sum_sign};

    fn pm_one_task(certifier: Player) -> CertificationTask {
        CertificationTask {
            case: "t".into(),
            start: vec![Component::Series(SeriesState::new(Variant::Plain, SequenceSpec::builtin(Builtin::PmOne)))],
            certifier,
            role: Role::Second,
            strategy: partial_sum_sign(certifier),
            bound: 3,
        }
    }

    #[test]
    fn pm_one_second_player_wins_for_both() {
        for p in [Player::Left, Player::Right] {
            let c = certify(&pm_one_task(p));
            assert_eq!(c.verdict, Verdict::Certified, "{p:?}");
            assert!(c.nodes > 1);
        }
    }

    #[test]
    fn refutation_is_replayable_and_minimal() {
        // Left cannot win `*` moving second.
        let task = CertificationTask {
            case: "star".into(),
            start: vec![Component::Finite(Game::star()), Component::Series(SeriesState::new(
                Variant::Plain,
                SequenceSpec::new(crate::arena::SeqExpr::Const(Game::zero())),
            ))],
            certifier: Player::Left,
            role: Role::Second,
            strategy: oracle_strategy(2),
            bound: 2,
        };
        let c = certify(&task);
        let Verdict::Refuted { counterplay } = &c.verdict else { panic!("{:?}", c.verdict) };
        assert!(replay(&task, counterplay).is_ok());
        assert_eq!(counterplay.len(), 1);
    }

    #[test]
    fn report_line_format() {
        let task = pm_one_task(Player::Left);
        let line = ReportLine::new(&task, &Certification { verdict: Verdict::Certified, nodes: 7, trace: vec![] });
        assert_eq!(
            line.to_string(),
            "case=t variant=plain certifier=left role=second strategy=partial_sum_sign bound=3 verdict=CERTIFIED nodes=7 counterplay=-"
        );
    }
}
