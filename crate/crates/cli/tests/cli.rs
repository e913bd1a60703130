use std::io::Write;
use std::process::{Command, Output, Stdio};

use gameseries::kernel::canonical_form;
use gameseries::{Dyadic, SignSeq};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gameseries")).args(args).output().unwrap()
}

fn run_with_input(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_gameseries"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_prints_canonical_outcome_and_number() {
    let o = run(&["eval", "{0|*}"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("canonical={0|*} outcome=LeftWins number=false"));
}

#[test]
fn eval_of_a_dyadic_is_its_sign_expansion() {
    let want = canonical_form(SignSeq::from_dyadic(Dyadic::new(3, 3)).realize().unwrap());
    let o = run(&["eval", "3/8"]);
    let first = stdout(&o).lines().next().unwrap().to_string();
    assert_eq!(first, format!("canonical={} outcome=LeftWins number=true", want.expanded()));
}

#[test]
fn hackenbush_magic_stack_is_up() {
    let o = run(&["hackenbush", "eval", "QR"]);
    assert_eq!(stdout(&o).lines().next(), Some("canonical={0|*} (= ^)"));
}

#[test]
fn verify_prints_one_certified_line_per_run() {
    let o = run(&["series", "verify", "real_geom_half", "--bound", "8"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 2);
    for l in lines {
        assert!(l.starts_with("case=real_geom_half variant=plain "), "{l}");
        assert!(l.contains(" bound=8 verdict=CERTIFIED ") && l.ends_with(" counterplay=-"), "{l}");
    }
}

#[test]
fn expected_refutations_exit_zero() {
    let o = run(&["series", "verify", "plain_sumform_differs_from_zeroform"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("verdict=REFUTED"));
}

#[test]
fn bad_input_exits_three() {
    assert_eq!(run(&["series", "verify", "no_such_case"]).status.code(), Some(3));
    assert_eq!(run(&["eval", "{0|"]).status.code(), Some(3));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(3));
}

#[test]
fn default_bound_comes_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_gameseries"))
        .args(["series", "solve", "plain(ones) + neg(ord(w))", "--sweep"])
        .env("GAMESERIES_DEFAULT_BOUND", "3")
        .output()
        .unwrap();
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 3, "{text}");
    assert!(text.lines().all(|l| l.contains("outcome=SecondWins")), "{text}");
}

#[test]
fn limits_of_each_kind() {
    let o = run(&["limit", "string", "template(+^i -^w @w -)"]);
    assert_eq!(stdout(&o).trim(), "limit=(+)^w length=w");
    let o = run(&["limit", "natural", "canon_naturals"]);
    assert!(stdout(&o).contains("value=0 "), "{}", stdout(&o));
    let o = run(&["limit", "monotone", "canon_naturals"]);
    assert!(stdout(&o).contains("right picks (n <= 6): none"), "{}", stdout(&o));
}

#[test]
fn engine_wins_bullet_stars_as_second_player() {
    for human in ["left", "right"] {
        // Out-of-range numbers are re-prompted, so each script falls back to smaller picks.
        for pick in ["0\n", "1\n0\n", "5\n1\n0\n", "9\n4\n2\n0\n"] {
            let input = pick.repeat(40);
            let o = run_with_input(&["play", "bullet(stars)", "--as", human, "--bound", "3"], &input);
            let text = stdout(&o);
            assert!(text.contains(": you lose"), "{human} picking {pick:?}:\n{text}");
        }
    }
}

#[test]
fn right_loses_at_once_on_ones() {
    let o = run_with_input(&["play", "plain(ones)", "--as", "right"], "");
    assert!(stdout(&o).contains("right has no move: you lose"));
}

#[test]
fn verify_all_writes_the_report_it_prints() {
    let dir = std::env::temp_dir().join(format!("gameseries-report-{}", std::process::id()));
    let o = run(&["series", "verify-all", "--out", dir.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let written = std::fs::read_to_string(&dir).unwrap();
    std::fs::remove_file(&dir).unwrap();
    assert_eq!(written, stdout(&o));
    assert_eq!(written.lines().count(), gameseries::cases::registry().iter().map(|c| c.runs.len()).sum::<usize>());
}
