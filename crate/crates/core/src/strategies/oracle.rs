use super::{fallback_move, Strategy};
use crate::arena::{CompoundState, Move};
use crate::error::StrategyError;
use crate::verifier::mover_wins_within;
use crate::Player;

/// How many index levels beyond the opponent's the oracle may use itself.
pub const ORACLE_ESCALATION: usize = 4;

/// Plays a move that wins the truncated game in which the opponent's index
/// choices stop at `own` and the oracle's at `own + e`, for the least `e`
/// up to [`ORACLE_ESCALATION`] that admits one.
pub fn oracle_strategy(own: usize) -> Box<dyn Strategy> {
    Box::new(Oracle { own })
}

#[derive(Clone)]
struct Oracle {
    own: usize,
}

impl Strategy for Oracle {
    fn name(&self) -> String {
        format!("oracle({})", self.own)
    }

    fn choose(&mut self, state: &CompoundState, _last: Option<&Move>) -> Result<Option<Move>, StrategyError> {
        for mine in self.own..=self.own + ORACLE_ESCALATION {
            let (left, right) = match state.mover {
                Player::Left => (mine, self.own),
                Player::Right => (self.own, mine),
            };
            for mv in state.legal_moves(mine) {
                let next = state.apply(&mv).map_err(|e| StrategyError::Oracle(e.to_string()))?;
                if !mover_wins_within(&next, left, right) {
                    return Ok(Some(mv));
                }
            }
        }
        Ok(fallback_move(state))
    }

    fn box_clone(&self) -> Box<dyn Strategy> {
        Box::new(self.clone())
    }

    fn is_positional(&self) -> bool {
        true
    }
}
