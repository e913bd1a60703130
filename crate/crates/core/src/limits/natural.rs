use std::fmt;
use std::sync::Arc;

use crate::arena::{Builtin, SeqExpr, SequenceSpec, Summand};
use crate::kernel::{leq, negate, Game};
use crate::Player;

/// Window used when a template has no structural certificate.
pub const SAMPLE_WINDOW: usize = 24;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum LimitKind {
    /// Pick an option present (by form identity) in every `G_i`, `i ≥ n`.
    Natural,
    /// Pick an option of `G_n` dominated from above (Left) or below (Right)
    /// by some option of every `G_i`, `i ≥ n`.
    Monotone,
}

/// Result of a tail certificate: the verdict and whether it is structural
/// (exact) or read off a finite sample.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub holds: bool,
    pub exact: bool,
}

/// Natural or monotone limit of a template sequence, as an arena component
/// before its first move.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LimitArena {
    pub kind: LimitKind,
    pub template: Arc<SequenceSpec>,
}

impl LimitArena {
    pub fn new(kind: LimitKind, template: Arc<SequenceSpec>) -> Self {
        LimitArena { kind, template }
    }

    pub fn negated(&self) -> Self {
        LimitArena::new(self.kind, self.template.negated())
    }

    fn form(&self, i: usize) -> Option<Game> {
        match self.template.get(i) {
            Summand::Form(g) => Some(g),
            Summand::Ordinal(_) => None,
        }
    }

    /// Whether picking `option` of `G_n` is allowed for `p`.
    pub fn certificate(&self, p: Player, n: usize, option: Game) -> Certificate {
        let cert = tail_certificate(self.kind, self.template.expr(), p, n, option)
            .map(|holds| Certificate { holds, exact: true })
            .unwrap_or_else(|| Certificate {
                holds: (n..n + SAMPLE_WINDOW).all(|i| self.witnessed_at(p, i, option)),
                exact: false,
            });
        if cert.holds {
            // Spot-check the structural claim on a few indexes.
            for i in n..n + 8 {
                assert!(
                    self.witnessed_at(p, i, option),
                    "limit certificate for {} contradicted at index {i}",
                    self.template
                );
            }
        }
        cert
    }

    fn witnessed_at(&self, p: Player, i: usize, option: Game) -> bool {
        let Some(g) = self.form(i) else { return false };
        match self.kind {
            LimitKind::Natural => g.options(p).contains(&option),
            LimitKind::Monotone => g.options(p).iter().any(|&x| match p {
                Player::Left => leq(option, x),
                Player::Right => leq(x, option),
            }),
        }
    }

    /// Allowed picks with `n ≤ bound`, keeping the least `n` for each option.
    pub fn picks(&self, p: Player, bound: usize) -> Vec<(usize, Game)> {
        let mut out: Vec<(usize, Game)> = Vec::new();
        for n in 0..=bound {
            let Some(g) = self.form(n) else { continue };
            for &opt in g.options(p).iter() {
                if out.iter().any(|(_, o)| *o == opt) {
                    continue;
                }
                if self.certificate(p, n, opt).holds {
                    out.push((n, opt));
                }
            }
        }
        out
    }

    pub fn check_pick(&self, p: Player, n: usize, option: Game) -> Result<(), String> {
        let Some(g) = self.form(n) else {
            return Err(format!("G_{n} is not a finite form"));
        };
        if !g.options(p).contains(&option) {
            return Err(format!("{option} is not a {} option of G_{n} = {g}", p.name()));
        }
        if !self.certificate(p, n, option).holds {
            return Err(match self.kind {
                LimitKind::Natural => format!("{option} is not present in every G_i with i >= {n}"),
                LimitKind::Monotone => format!(
                    "some G_i with i >= {n} has no {} option {} {option}",
                    p.name(),
                    if p == Player::Left { ">=" } else { "<=" }
                ),
            });
        }
        Ok(())
    }

    /// Whether some pick exists with index `≥ k`; `None` when unknown.
    pub fn has_picks_beyond(&self, p: Player, k: usize) -> Option<bool> {
        if let Some((start, period)) = self.template.periodic() {
            let end = k.max(start) + period.len();
            return Some((k..=end).any(|n| {
                self.form(n)
                    .is_some_and(|g| g.options(p).iter().any(|&o| self.certificate(p, n, o).holds))
            }));
        }
        naturals_picks(self.kind, self.template.expr(), p)
    }
}

/// Exact tail verdicts for templates with known structure.
fn tail_certificate(kind: LimitKind, e: &SeqExpr, p: Player, n: usize, option: Game) -> Option<bool> {
    match e {
        SeqExpr::Named(Builtin::CanonNaturals) => Some(match (kind, p) {
            // Each G_i = {i-1|} has a single option, different for every i.
            (LimitKind::Natural, _) => false,
            // i - 1 >= n - 1 for all i >= n.
            (LimitKind::Monotone, Player::Left) => true,
            (LimitKind::Monotone, Player::Right) => false,
        }),
        // G_i = {0,1,…,i-1|} contains every option of G_n for i >= n.
        SeqExpr::Named(Builtin::SignNaturals) => Some(p == Player::Left),
        SeqExpr::Neg(inner) => tail_certificate(kind, inner, p.opposite(), n, negate(option)),
        _ => {
            let spec = SequenceSpec::new(e.clone());
            let (start, period) = spec.periodic()?;
            let arena = LimitArena::new(kind, spec);
            let end = n.max(start) + period.len();
            Some((n..end).all(|i| arena.witnessed_at(p, i, option)))
        }
    }
}

fn naturals_picks(kind: LimitKind, e: &SeqExpr, p: Player) -> Option<bool> {
    match e {
        SeqExpr::Named(Builtin::CanonNaturals) => {
            Some(kind == LimitKind::Monotone && p == Player::Left)
        }
        SeqExpr::Named(Builtin::SignNaturals) => Some(p == Player::Left),
        SeqExpr::Neg(inner) => naturals_picks(kind, inner, p.opposite()),
        _ => None,
    }
}

impl fmt::Display for LimitArena {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.kind {
            LimitKind::Natural => "nlim",
            LimitKind::Monotone => "mlim",
        };
        write!(f, "{name}({})", self.template)
    }
}
