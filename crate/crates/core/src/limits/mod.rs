//! String limits of transfinite words, natural and monotone limits of game
//! sequences, and the series-induced limit.

mod natural;
mod string;

pub use natural::{Certificate, LimitArena, LimitKind, SAMPLE_WINDOW};
pub use string::{empirical_limit, string_limit, Approximation, Item, StringFamily};
