use std::fmt;

use thiserror::Error;

use crate::game::{MoveAction, Position};

/// Why a particular move is not legal in a position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IllegalReason {
    /// A move must take at least one stone.
    ZeroCount,
    /// The chosen pile has no stones.
    PileEmpty,
    /// More stones requested than the pile holds.
    ExceedsPile { available: u64 },
    /// Removed weight would exceed `floor(W / 2)`.
    BoundViolated { removed_weight: i64, bound: i64 },
    /// With negative total weight, pile two needs a minimum removal.
    ForcedMinimum { minimum: u64 },
}

impl fmt::Display for IllegalReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            IllegalReason::ZeroCount => write!(f, "a move must remove at least one stone"),
            IllegalReason::PileEmpty => write!(f, "that pile is empty"),
            IllegalReason::ExceedsPile { available } => {
                write!(f, "the pile only holds {available} stone(s)")
            }
            IllegalReason::BoundViolated {
                removed_weight,
                bound,
            } => write!(
                f,
                "removed weight {removed_weight} exceeds the allowed maximum {bound}"
            ),
            IllegalReason::ForcedMinimum { minimum } => write!(
                f,
                "total weight is negative, so at least {minimum} stone(s) must be taken from pile 2"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("illegal move {action} from {position}: {reason}")]
    IllegalMove {
        position: Position,
        action: MoveAction,
        reason: IllegalReason,
    },
    #[error("no legal move from terminal position {0}")]
    NoMove(Position),
    #[error("domain error: {0}")]
    Domain(String),
}

impl GameError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        GameError::Domain(msg.into())
    }
}
