//! Single-stack Hackenbush with blue, red and green edges plus the magic
//! edges: dark edges (removable only at the top), greenish blue (Left
//! anywhere, Right only at the top) and super-red (a red edge whose removal
//! turns every edge below it green).
//!
//! Stacks are written bottom-first over `B R G b r g Q S`: lowercase letters
//! are the dark edges, `Q` greenish blue, `S` super-red.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use parking_lot::Mutex;

use crate::arena::{Component, OrdinalGame};
use crate::error::NumberError;
use crate::kernel::Game;
use crate::limits::{string_limit, StringFamily};
use crate::numbers::{Symbol, Word};
use crate::Player;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    Blue,
    Red,
    Green,
    DarkBlue,
    DarkRed,
    DarkGreen,
    GreenishBlue,
    SuperRed,
}

impl Edge {
    pub const ALL: [Edge; 8] = [
        Edge::Blue,
        Edge::Red,
        Edge::Green,
        Edge::DarkBlue,
        Edge::DarkRed,
        Edge::DarkGreen,
        Edge::GreenishBlue,
        Edge::SuperRed,
    ];

    /// Whether `p` may remove this edge; `top` says nothing sits above it.
    pub fn removable_by(self, p: Player, top: bool) -> bool {
        use Edge::*;
        match (self, p) {
            (Green, _) => true,
            (DarkGreen, _) => top,
            (Blue | GreenishBlue, Player::Left) => true,
            (DarkBlue, Player::Left) => top,
            (Red | SuperRed, Player::Right) => true,
            (DarkRed, Player::Right) => top,
            (GreenishBlue, Player::Right) => top,
            _ => false,
        }
    }

    /// Colour-swapped edge; magic edges without a mirror give `None`.
    pub fn negated(self) -> Option<Edge> {
        use Edge::*;
        match self {
            Blue => Some(Red),
            Red => Some(Blue),
            DarkBlue => Some(DarkRed),
            DarkRed => Some(DarkBlue),
            Green | DarkGreen => Some(self),
            GreenishBlue | SuperRed => None,
        }
    }
}

impl Symbol for Edge {
    fn to_char(self) -> char {
        match self {
            Edge::Blue => 'B',
            Edge::Red => 'R',
            Edge::Green => 'G',
            Edge::DarkBlue => 'b',
            Edge::DarkRed => 'r',
            Edge::DarkGreen => 'g',
            Edge::GreenishBlue => 'Q',
            Edge::SuperRed => 'S',
        }
    }

    fn from_char(c: char) -> Option<Self> {
        Edge::ALL.into_iter().find(|e| e.to_char() == c)
    }
}

/// Edges bottom to top; edge 0 touches the ground.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Stack(pub Vec<Edge>);

impl Stack {
    pub fn negated(&self) -> Option<Stack> {
        self.0.iter().map(|e| e.negated()).collect::<Option<_>>().map(Stack)
    }

    pub fn is_magic(&self) -> bool {
        self.0.iter().any(|e| matches!(e, Edge::GreenishBlue | Edge::SuperRed))
    }
}

impl fmt::Display for Stack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "()");
        }
        self.0.iter().try_for_each(|e| write!(f, "{}", e.to_char()))
    }
}

impl FromStr for Stack {
    type Err = NumberError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "()" {
            return Ok(Stack::default());
        }
        s.chars()
            .map(|c| {
                Edge::from_char(c).ok_or_else(|| NumberError::Parse {
                    what: "stack",
                    text: s.to_string(),
                })
            })
            .collect::<Result<_, _>>()
            .map(Stack)
    }
}

/// Moves of `mover`: the removed edge's height and the stack left behind.
pub fn stack_moves(st: &Stack, mover: Player) -> Vec<(usize, Stack)> {
    let top = st.0.len().saturating_sub(1);
    st.0.iter()
        .enumerate()
        .filter(|&(k, e)| e.removable_by(mover, k == top))
        .map(|(k, &e)| {
            let mut rest = st.0[..k].to_vec();
            if e == Edge::SuperRed {
                rest.iter_mut().for_each(|x| *x = Edge::Green);
            }
            (k, Stack(rest))
        })
        .collect()
}

fn memo() -> &'static Mutex<HashMap<Stack, Game>> {
    static MEMO: OnceLock<Mutex<HashMap<Stack, Game>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The game form of a stack.
pub fn stack_to_game(st: &Stack) -> Game {
    if let Some(&g) = memo().lock().get(st) {
        return g;
    }
    let side = |p| stack_moves(st, p).into_iter().map(|(_, s)| stack_to_game(&s)).collect::<Vec<_>>();
    let g = Game::new(side(Player::Left), side(Player::Right));
    memo().lock().insert(st.clone(), g);
    g
}

/// The string limit of a sequence of stacks, with its arena rendering when
/// one exists: finite stacks, all-green stacks as `*α`, single-colour
/// blue or red stacks as ordinal games.
#[derive(Clone, Debug)]
pub struct StackLimit {
    pub word: Word<Edge>,
    pub component: Option<Component>,
}

pub fn stack_string_limit(fam: &StringFamily<Edge>) -> StackLimit {
    let word = string_limit(fam);
    let component = match word.symbols() {
        Some(edges) => Some(Component::Finite(stack_to_game(&Stack(edges)))),
        None => match (word.runs(), word.cycle()) {
            ([(Edge::Green, len)], None) => Some(Component::Nimber(len.clone())),
            ([(Edge::Blue, len)], None) => Some(Component::Ordinal(OrdinalGame::new(len.clone(), Player::Left))),
            ([(Edge::Red, len)], None) => Some(Component::Ordinal(OrdinalGame::new(len.clone(), Player::Right))),
            _ => None,
        },
    };
    StackLimit { word, component }
}
