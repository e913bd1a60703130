//! `gameseries`: evaluate game forms, certify registered cases, take limits,
//! evaluate Hackenbush stacks and play compounds against the engine.
//!
//! Exit status: 0 on success, 1 when a certification run is refuted against
//! its expectation, 2 when one is inconclusive against its expectation, 3 on
//! bad input.

mod commands;
mod repl;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use gameseries::Player;

pub const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "gameseries", version, about = "Partizan games, infinite sums and their strategy certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Canonical form, outcome and classification of a game expression.
    Eval { expr: String },
    #[command(subcommand)]
    Series(SeriesCommand),
    /// String, natural or monotone limit of a sequence.
    Limit {
        kind: LimitKindArg,
        spec: String,
        /// Largest index scanned for natural and monotone picks.
        #[arg(long, env = "GAMESERIES_DEFAULT_BOUND", default_value_t = 6)]
        bound: usize,
    },
    #[command(subcommand)]
    Hackenbush(HackenbushCommand),
    /// Play a compound against the engine.
    Play {
        spec: String,
        /// The side you play.
        #[arg(long = "as", value_enum, default_value_t = Side::Left)]
        side: Side,
        /// Who moves first; defaults to you.
        #[arg(long, value_enum)]
        first: Option<Side>,
        #[arg(long, env = "GAMESERIES_DEFAULT_BOUND", default_value_t = 6)]
        bound: usize,
    },
}

#[derive(Subcommand)]
enum SeriesCommand {
    /// Certify one registered case and print its report lines.
    Verify {
        case: String,
        /// Overrides the bound of every run in the case.
        #[arg(long)]
        bound: Option<usize>,
    },
    /// Certify the whole registry.
    VerifyAll {
        /// Also write the report to this file.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// List the registered cases.
    Cases,
    /// Minimax outcome of the game truncated at the bound.
    Solve {
        spec: String,
        #[arg(long, env = "GAMESERIES_DEFAULT_BOUND", default_value_t = 6)]
        bound: usize,
        /// Report the truncated outcome at every bound from 1 up.
        #[arg(long)]
        sweep: bool,
    },
}

#[derive(Subcommand)]
enum HackenbushCommand {
    /// Game value of a single stack, written bottom-first.
    Eval { stack: String },
    /// String limit of a family of stacks.
    Limit { family: String },
}

#[derive(Copy, Clone, ValueEnum)]
enum LimitKindArg {
    String,
    Natural,
    Monotone,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Side {
    Left,
    Right,
}

impl From<Side> for Player {
    fn from(s: Side) -> Player {
        match s {
            Side::Left => Player::Left,
            Side::Right => Player::Right,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Eval { expr } => commands::eval(&expr),
        Command::Series(SeriesCommand::Verify { case, bound }) => commands::verify(&case, bound),
        Command::Series(SeriesCommand::VerifyAll { out }) => commands::verify_all(out.as_deref()),
        Command::Series(SeriesCommand::Cases) => commands::list_cases(),
        Command::Series(SeriesCommand::Solve { spec, bound, sweep }) => commands::solve(&spec, bound, sweep),
        Command::Limit { kind, spec, bound } => match kind {
            LimitKindArg::String => commands::string_limit_cmd(&spec),
            LimitKindArg::Natural => commands::game_limit(&spec, gameseries::limits::LimitKind::Natural, bound),
            LimitKindArg::Monotone => commands::game_limit(&spec, gameseries::limits::LimitKind::Monotone, bound),
        },
        Command::Hackenbush(HackenbushCommand::Eval { stack }) => commands::hackenbush_eval(&stack),
        Command::Hackenbush(HackenbushCommand::Limit { family }) => commands::hackenbush_limit(&family),
        Command::Play { spec, side, first, bound } => {
            let human = Player::from(side);
            let first = first.map(Player::from).unwrap_or(human);
            let stdin = std::io::stdin().lock();
            repl::play(&spec, human, first, bound, stdin, std::io::stdout().lock())
        }
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
