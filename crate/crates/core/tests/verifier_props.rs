mod common;

use proptest::prelude::*;

use common::{arb_game, Brute};
use gameseries::arena::Component;
use gameseries::parse::parse_compound;
use gameseries::strategies::by_name;
use gameseries::verifier::{certify, mover_wins_bounded, replay, CertificationTask, ReportLine, Role, Verdict};
use gameseries::{Game, Player};

const STRATEGY_BOUND: usize = 3;

fn task(series: &str, g: Game, certifier: Player, role: Role, bound: usize) -> CertificationTask {
    let mut start = parse_compound(series).unwrap();
    start.push(Component::Finite(g));
    CertificationTask {
        case: "prop".into(),
        start,
        certifier,
        role,
        strategy: by_name(&format!("oracle({STRATEGY_BOUND})"), certifier).unwrap(),
        bound,
    }
}

fn arb_player() -> impl Strategy<Value = Player> {
    prop_oneof![Just(Player::Left), Just(Player::Right)]
}

fn arb_role() -> impl Strategy<Value = Role> {
    prop_oneof![Just(Role::First), Just(Role::Second)]
}

fn arb_series() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["plain(stars)", "bullet(stars)", "plain(pm_one)", "bullet(ups)"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn refutations_replay_to_a_lost_position(
        series in arb_series(), g in arb_game(2, 2), certifier in arb_player(), role in arb_role(),
    ) {
        let t = task(series, g, certifier, role, 2);
        let cert = certify(&t);
        if let Verdict::Refuted { counterplay } = &cert.verdict {
            let end = replay(&t, counterplay).unwrap();
            match end.finite_games() {
                Some(games) => {
                    let won = Brute::new().mover_wins(&games, end.mover);
                    prop_assert_ne!(won, end.mover == certifier);
                }
                None => prop_assert_eq!(end.mover, certifier),
            }
        }
    }

    // Ordinal and nimber components never leave the adversary stuck only
    // because of the bound, so the verifier's adversary is exactly the
    // bounded one here.
    #[test]
    fn oracle_certifies_every_bounded_win(
        series in prop::sample::select(vec!["nim(w)", "neg(ord(w))", "ord(w+1)", "nim(w) + ord(2)"]), g in arb_game(2, 2), certifier in arb_player(),
    ) {
        let t = task(series, g, certifier, Role::Second, STRATEGY_BOUND);
        let opponent_start = t.initial_state();
        if !mover_wins_bounded(&opponent_start, STRATEGY_BOUND) {
            prop_assert_eq!(certify(&t).verdict, Verdict::Certified);
        }
    }

    #[test]
    fn certification_is_monotone_in_the_bound(
        series in arb_series(), g in arb_game(2, 2), certifier in arb_player(), role in arb_role(),
    ) {
        if certify(&task(series, g, certifier, role, STRATEGY_BOUND)).verdict == Verdict::Certified {
            for b in 1..STRATEGY_BOUND {
                prop_assert_eq!(certify(&task(series, g, certifier, role, b)).verdict, Verdict::Certified, "bound {}", b);
            }
        }
    }

    #[test]
    fn settled_compounds_follow_the_brute_outcome(
        g in arb_game(3, 2), h in arb_game(2, 2), certifier in arb_player(), role in arb_role(),
    ) {
        let t = CertificationTask {
            case: "prop".into(),
            start: vec![Component::Finite(g), Component::Finite(h)],
            certifier,
            role,
            strategy: by_name("oracle(1)", certifier).unwrap(),
            bound: 1,
        };
        let mover = t.initial_state().mover;
        let mover_wins = Brute::new().mover_wins(&[g, h], mover);
        let certified = certify(&t).verdict == Verdict::Certified;
        prop_assert_eq!(certified, mover_wins == (mover == certifier));
    }

    #[test]
    fn certification_is_deterministic(
        series in arb_series(), g in arb_game(2, 2), certifier in arb_player(), role in arb_role(),
    ) {
        let t = task(series, g, certifier, role, 2);
        let (a, b) = (certify(&t), certify(&t));
        prop_assert_eq!(ReportLine::new(&t, &a).to_string(), ReportLine::new(&t, &b).to_string());
        prop_assert_eq!(a.trace, b.trace);
    }
}

/// Number-valued series: in `(H_0 + .. + H_i^R + .. + H_n + ..)/R,n` minus a
/// Left option `H_0 + .. + H_j^L + .. + H_m`, Left moving first wins by closing
/// at the same `m` (for `m = n`, the minimal close), and Left also wins moving
/// second. Checked exhaustively for `geom_half` up to index 4.
#[test]
fn number_series_auxiliary_positions_favour_left() {
    use gameseries::arena::{Action, Builtin, CompoundState, Phase, SequenceSpec, SeriesState, Summand, Variant};
    use gameseries::kernel::negate;
    use std::collections::BTreeMap;

    const TOP: usize = 4;
    let spec = SequenceSpec::builtin(Builtin::GeomHalf);
    let h = |i: usize| spec.get(i).as_form().unwrap();
    let mut brute = Brute::new();
    let mut checked = 0;
    for n in 0..=TOP {
        for i in 0..=n {
            for &hr in h(i).options(Player::Right).iter() {
                let mut head: BTreeMap<usize, Summand> = (0..=n).map(|k| (k, spec.get(k))).collect();
                head.insert(i, Summand::Form(hr));
                let series = SeriesState {
                    variant: Variant::Plain,
                    spec: spec.clone(),
                    phase: Phase::HalfOpened { owner: Player::Right, head },
                };
                for m in n..=TOP {
                    for j in 0..=m {
                        for &hl in h(j).options(Player::Left).iter() {
                            let mut comps = vec![Component::Series(series.clone())];
                            comps.extend((0..=m).map(|k| Component::Finite(negate(if k == j { hl } else { h(k) }))));
                            let state = CompoundState::new(comps, Player::Left);
                            let closes_at_m = state.legal_moves(TOP).into_iter().any(|mv| {
                                matches!(mv.action, Action::Close { m: mm, .. } if mm == m) && {
                                    let next = state.apply(&mv).unwrap();
                                    !brute.mover_wins(&next.finite_games().unwrap(), Player::Right)
                                }
                            });
                            assert!(closes_at_m, "n={n} i={i} m={m} j={j}");
                            assert!(
                                !mover_wins_bounded(&state.with_mover(Player::Right), TOP),
                                "Right first: n={n} i={i} m={m} j={j}"
                            );
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 50, "{checked}");
}
