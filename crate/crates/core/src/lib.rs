//! Combinatorial game engine for infinite sums of partizan games.
//!
//! The [`kernel`] handles finite forms. [`arena`] plays the infinite-sum
//! protocols over lazily specified sequences, [`strategies`] and [`verifier`]
//! certify who wins them against a bounded adversary, and [`limits`] computes
//! string, natural and monotone limits.

pub mod arena;
pub mod cases;
pub mod error;
pub mod hackenbush;
pub mod kernel;
pub mod limits;
pub mod numbers;
pub mod parse;
pub mod strategies;
pub mod verifier;

pub use error::{ArenaError, KernelError, NumberError, ParseError, StrategyError};
pub use kernel::{Game, Outcome};
pub use numbers::{Dyadic, Ordinal, Sign, SignSeq};

#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Player {
    Left,
    Right,
}

impl Player {
    pub fn opposite(self) -> Player {
        match self {
            Player::Left => Player::Right,
            Player::Right => Player::Left,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Player::Left => "left",
            Player::Right => "right",
        }
    }
}
