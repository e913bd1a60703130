use std::collections::HashMap;
use std::sync::OnceLock;

use parking_lot::Mutex;

use crate::arena::CompoundState;
use crate::kernel::{mover_wins, Outcome};
use crate::Player;

/// Entries kept in the truncated-game memo before it is flushed.
const MEMO_CAP: usize = 1 << 21;

type Memo = Mutex<HashMap<(CompoundState, usize, usize), bool>>;

fn memo() -> &'static Memo {
    static MEMO: OnceLock<Memo> = OnceLock::new();
    MEMO.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Whether the mover wins the game in which every infinite choice is
/// truncated at `bound`. Settled compounds are decided by the kernel.
pub fn mover_wins_bounded(state: &CompoundState, bound: usize) -> bool {
    mover_wins_within(state, bound, bound)
}

/// As [`mover_wins_bounded`], with Left's choices truncated at `left` and
/// Right's at `right`. A player with no move inside their truncation loses.
pub fn mover_wins_within(state: &CompoundState, left: usize, right: usize) -> bool {
    if let Some(games) = state.finite_games() {
        return mover_wins(&games, state.mover);
    }
    let key = (state.clone(), left, right);
    if let Some(&v) = memo().lock().get(&key) {
        return v;
    }
    let own = match state.mover {
        Player::Left => left,
        Player::Right => right,
    };
    let wins = state.legal_moves(own).iter().any(|mv| {
        let next = state.apply(mv).expect("enumerated moves are legal");
        !mover_wins_within(&next, left, right)
    });
    let mut m = memo().lock();
    if m.len() >= MEMO_CAP {
        m.clear();
    }
    m.insert(key, wins);
    wins
}

/// Outcome class of the truncated game at `bound`.
pub fn solve_bounded(state: &CompoundState, bound: usize) -> Outcome {
    Outcome::from_first_mover_wins(
        mover_wins_bounded(&state.with_mover(Player::Left), bound),
        mover_wins_bounded(&state.with_mover(Player::Right), bound),
    )
}
