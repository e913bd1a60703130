//! The closed registry of named certification cases.
//!
//! A value claim `A ≡ B` is recorded as two runs on `A − B`, Left second and
//! Right second; it holds only when both are certified. One-sided claims use
//! one run. Runs may also expect a refutation or an inapplicable strategy,
//! which is how the plain and bullet protocols are told apart.

use crate::error::{ParseError, StrategyError};
use crate::parse::parse_compound;
use crate::strategies::by_name;
use crate::verifier::{CertificationTask, Role, Verdict};
use crate::Player;

/// Bumped whenever a case is added, removed or changed.
pub const REGISTRY_VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Expect {
    Certified,
    Refuted,
    /// The strategy's preconditions fail on this compound.
    Inapplicable,
}

impl Expect {
    pub fn matches(self, v: &Verdict) -> bool {
        matches!(
            (self, v),
            (Expect::Certified, Verdict::Certified)
                | (Expect::Refuted, Verdict::Refuted { .. })
                | (Expect::Inapplicable, Verdict::Inconclusive { .. })
        )
    }

    pub fn label(self) -> &'static str {
        match self {
            Expect::Certified => "CERTIFIED",
            Expect::Refuted => "REFUTED",
            Expect::Inapplicable => "INCONCLUSIVE",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Run {
    pub certifier: Player,
    pub role: Role,
    pub strategy: String,
    pub bound: usize,
    pub expect: Expect,
}

#[derive(Clone, Debug)]
pub struct Case {
    pub id: String,
    /// Acceptance criterion the case belongs to.
    pub criterion: u8,
    pub compound: String,
    pub claim: String,
    pub runs: Vec<Run>,
}

#[derive(Debug, thiserror::Error)]
pub enum CaseError {
    #[error("unknown case {0:?}")]
    Unknown(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

impl Case {
    /// Tasks for every run; `bound` overrides each run's own bound.
    pub fn tasks(&self, bound: Option<usize>) -> Result<Vec<(CertificationTask, Expect)>, CaseError> {
        let start = parse_compound(&self.compound)?;
        self.runs
            .iter()
            .map(|r| {
                let task = CertificationTask {
                    case: self.id.clone(),
                    start: start.clone(),
                    certifier: r.certifier,
                    role: r.role,
                    strategy: by_name(&r.strategy, r.certifier)?,
                    bound: bound.unwrap_or(r.bound),
                };
                Ok((task, r.expect))
            })
            .collect()
    }
}

fn run(certifier: Player, role: Role, strategy: &str, bound: usize, expect: Expect) -> Run {
    Run {
        certifier,
        role,
        strategy: strategy.into(),
        bound,
        expect,
    }
}

/// Left second and Right second, both certified: the compound is zero.
fn zero(strategy: &str, bound: usize) -> Vec<Run> {
    [Player::Left, Player::Right]
        .into_iter()
        .map(|p| run(p, Role::Second, strategy, bound, Expect::Certified))
        .collect()
}

fn case(id: &str, criterion: u8, compound: &str, claim: &str, runs: Vec<Run>) -> Case {
    Case {
        id: id.into(),
        criterion,
        compound: compound.into(),
        claim: claim.into(),
        runs,
    }
}

const CONSTANT_LIMIT: &str = "plain(limit(list([1,*],tail=const(1/2)))) + game(-1/2)";
const SPARSE_STARS: &str = "list([*,{*|*},*],tail=interleave(stars,const(0)))";

/// Every registered case, in report order.
pub fn registry() -> Vec<Case> {
    use Expect::*;
    use Player::{Left, Right};
    use Role::{First, Second};
    let mut cases = vec![
        case("pm_one_second", 2, "plain(pm_one)", "partial sums 1,0,1,0,... make the series a second-player win", zero("partial_sum_sign", 6)),
        case("ones_is_omega", 3, "plain(ones) + neg(ord(w))", "1+1+1+... equals w", zero("ordinal_series", 6)),
        case("twos_is_omega", 3, "plain(twos) + neg(ord(w))", "2+2+2+... also equals w", zero("ordinal_series", 6)),
        case(
            "ordpowers_at_least_w3",
            3,
            "plain(ordpowers) + neg(ord(w^3))",
            "1+w+w^2+... is at least w^3",
            vec![run(Left, Second, "ordinal_series", 5, Certified)],
        ),
        case("mirror_stars", 4, "plain(stars) + plain(neg(stars))", "a series minus itself is zero", zero("mirror", 6)),
        case(
            "mirror_with_zeros",
            4,
            "plain(stars) + game({*|*}) + plain(neg(stars)) + game({-1|1})",
            "zero summands between the mirrored series change nothing",
            zero("mirror", 6),
        ),
        case("mirror_bullet_ones", 4, "bullet(ones) + bullet(const(-1))", "pairwise cancelling bullet series", zero("mirror", 6)),
        case("stars_second", 5, "plain(stars)", "infinitely many first-player summands give a second-player win", zero("impartial_second", 6)),
        case("bullet_stars_second", 5, "bullet(stars)", "the same holds under the bullet protocol", zero("impartial_second", 6)),
        case(
            "real_geom_half",
            6,
            "game(-1) + plain(geom_half)",
            "1/2+1/4+1/8+... equals 1",
            zero("real_series_second", 8),
        ),
        case(
            "real_quarter_geom",
            6,
            "game(-1/2) + plain(quarter_geom)",
            "1/4+1/8+1/16+... equals 1/2",
            zero("real_series_second", 8),
        ),
        case(
            "minusone_ones_is_w_minus_one",
            7,
            "plain(minusone_then_ones) + game(1) + neg(ord(w))",
            "-1+1+1+... equals w-1",
            zero("oracle(6)", 6),
        ),
        case("zerozero_ones_is_w", 7, "plain(zerozero_then_ones) + neg(ord(w))", "0+0+1+1+... equals w", zero("ordinal_series", 6)),
        case(
            "sumform_ones_is_w_minus_one",
            8,
            "plain(sumform_zero_then_ones) + game(1) + neg(ord(w))",
            "with a (-1+1) head the plain series equals w-1",
            zero("oracle(6)", 6),
        ),
        case(
            "zeroform_ones_is_w",
            8,
            "plain(zeroform_then_ones) + neg(ord(w))",
            "with a {|} head the plain series equals w",
            zero("oracle(6)", 6),
        ),
        case(
            "bullet_sumform_matches_zeroform",
            8,
            "bullet(sumform_zero_then_ones) + bullet(neg(zeroform_then_ones))",
            "under the bullet protocol the two heads are interchangeable",
            zero("bullet_invariance", 6),
        ),
        case(
            "bullet_zeroform_is_w",
            8,
            "bullet(zeroform_then_ones) + neg(ord(w))",
            "the bullet series with a {|} head equals w, hence so does the one with a (-1+1) head",
            zero("oracle(6)", 6),
        ),
        case(
            "invariance_empty_vs_star_pair",
            9,
            "bullet(const(0)) + bullet(neg(const({*|*})))",
            "replacing every {|} by the equal {*|*} keeps the bullet sum",
            zero("bullet_invariance", 5),
        ),
        case(
            "invariance_one_vs_zero_star",
            9,
            "bullet(const(1)) + bullet(neg(const({0,*|})))",
            "replacing every 1 by the equal {0,*|} keeps the bullet sum",
            zero("bullet_invariance", 5),
        ),
        case(
            "plain_empty_vs_star_pair",
            9,
            "plain(const(0)) + plain(neg(const({*|*})))",
            "for constant pairs the pairwise answers also work under the plain protocol",
            zero("bullet_invariance", 5),
        ),
        case(
            "plain_one_vs_zero_star",
            9,
            "plain(const(1)) + plain(neg(const({0,*|})))",
            "for constant pairs the pairwise answers also work under the plain protocol",
            zero("bullet_invariance", 5),
        ),
        case(
            "plain_sumform_differs_from_zeroform",
            9,
            "plain(sumform_zero_then_ones) + plain(neg(zeroform_then_ones))",
            "pairwise answers fail under the plain protocol",
            vec![run(Left, Second, "bullet_invariance", 5, Refuted)],
        ),
        case(
            "reindex_nonzero",
            10,
            &format!("bullet({SPARSE_STARS}) + bullet(neg(nonzero({SPARSE_STARS})))"),
            "second-player summands can be dropped from a bullet sum",
            zero("mirror", 5),
        ),
        case(
            "bullet_quarter_geom_is_one",
            11,
            "bullet(quarter_geom) + game(-1)",
            "under the bullet protocol 1/4+1/8+... equals 1",
            vec![
                run(Left, Second, "bullet_bound_one_geq", 6, Certified),
                run(Right, Second, "bullet_bound_one_leq", 6, Certified),
            ],
        ),
        case(
            "bullet_ups_at_least_one",
            11,
            "bullet(ups) + game(-1)",
            "a bullet sum of positive infinitesimals is at least 1",
            vec![run(Left, Second, "bullet_bound_one_geq", 6, Certified)],
        ),
        case(
            "plain_quarter_geom_bounds",
            11,
            "plain(quarter_geom) + game(-1)",
            "under the plain protocol only the upper bound argument applies",
            vec![
                run(Right, Second, "bullet_bound_one_leq", 6, Certified),
                run(Left, Second, "bullet_bound_one_geq", 6, Inapplicable),
            ],
        ),
        case(
            "subset_geom_half_is_one",
            12,
            "subset(geom_half) + game(-1)",
            "choosing index sets instead of prefixes, 1/2+1/4+... still equals 1",
            zero("real_series_second", 8),
        ),
        case("nlim_canonical_naturals_zero", 13, "nlim(canon_naturals)", "canonical naturals share no option, so their natural limit is 0", zero("oracle(5)", 5)),
        case(
            "mlim_right_cannot_move",
            13,
            "mlim(canon_naturals)",
            "Right has no move on the monotone limit of the naturals",
            vec![run(Left, Second, "oracle(5)", 5, Certified)],
        ),
        case("limit_eventually_constant", 14, CONSTANT_LIMIT, "a sequence constant from some point on has that constant as limit", zero("mirror", 5)),
    ];
    for k in 1..=5 {
        cases.push(case(
            &format!("nlim_sign_naturals_at_least_{k}"),
            13,
            &format!("nlim(sign_naturals) + game(-{k})"),
            "sign-expansion naturals keep every smaller natural as an option, so their natural limit is at least each k",
            vec![run(Left, Second, "oracle(5)", 5, Certified)],
        ));
        cases.push(case(
            &format!("mlim_canonical_naturals_reaches_{k}"),
            13,
            &format!("mlim(canon_naturals) + game(-{k})"),
            "moving first, Left picks a natural at least k from the monotone limit",
            vec![run(Left, First, "oracle(5)", 5, Certified)],
        ));
    }
    cases
}

pub fn find(id: &str) -> Result<Case, CaseError> {
    registry()
        .into_iter()
        .find(|c| c.id == id)
        .ok_or_else(|| CaseError::Unknown(id.into()))
}
