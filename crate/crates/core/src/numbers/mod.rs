//! Exact number types: dyadic rationals, ordinals in Cantor normal form and
//! transfinite sign sequences.

mod dyadic;
mod ordinal;
mod sign;
mod value;

pub use dyadic::{Dyadic, Rational};
pub use ordinal::Ordinal;
pub use sign::{compare_signs, Sign, SignSeq, Symbol, Word};
pub use value::{number_value, simplest_between};
