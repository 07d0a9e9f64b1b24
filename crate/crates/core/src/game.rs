//! Positions and move rules.
//!
//! Pile one holds stones of weight `+1`, pile two holds stones of weight
//! `-2`. With total weight `W = x - 2y`, a move takes `count >= 1` stones from
//! a single pile whose combined weight is at most `floor(W / 2)`. Weights are
//! carried as `i128` so no coordinate pair can overflow them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{GameError, IllegalReason};

/// Weight of one pile-one stone.
pub const PILE_ONE_WEIGHT: i128 = 1;
/// Weight of one pile-two stone.
pub const PILE_TWO_WEIGHT: i128 = -2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Pile {
    PileOne,
    PileTwo,
}

impl Pile {
    pub fn weight(self) -> i128 {
        match self {
            Pile::PileOne => PILE_ONE_WEIGHT,
            Pile::PileTwo => PILE_TWO_WEIGHT,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pile::PileOne => "p1",
            Pile::PileTwo => "p2",
        }
    }
}

/// A position `(x, y)`: `x` stones in pile one, `y` stones in pile two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Position {
    pub x: u64,
    pub y: u64,
}

impl Position {
    pub const fn new(x: u64, y: u64) -> Self {
        Position { x, y }
    }

    pub fn total_weight(self) -> i128 {
        self.x as i128 + PILE_TWO_WEIGHT * self.y as i128
    }

    /// `floor(W / 2)`, rounding toward negative infinity.
    pub fn removal_bound(self) -> i128 {
        self.total_weight().div_euclid(2)
    }

    /// Smallest number of pile-two stones a move may take, ignoring the pile size.
    pub fn pile_two_minimum(self) -> u64 {
        let bound = self.removal_bound();
        if bound >= -2 {
            1
        } else {
            // -2u <= bound  <=>  u >= ceil(-bound / 2)
            ((-bound + 1) / 2) as u64
        }
    }

    /// Largest number of pile-one stones a move may take (0 if none).
    pub fn pile_one_maximum(self) -> u64 {
        let bound = self.removal_bound();
        if bound <= 0 {
            0
        } else {
            self.x.min(u64::try_from(bound).unwrap_or(u64::MAX))
        }
    }

    pub fn pile(self, pile: Pile) -> u64 {
        match pile {
            Pile::PileOne => self.x,
            Pile::PileTwo => self.y,
        }
    }

    /// Checks a move against the rules without applying it.
    pub fn check_move(self, action: MoveAction) -> Result<(), IllegalReason> {
        if action.count == 0 {
            return Err(IllegalReason::ZeroCount);
        }
        let available = self.pile(action.pile);
        if available == 0 {
            return Err(IllegalReason::PileEmpty);
        }
        if action.count > available {
            return Err(IllegalReason::ExceedsPile { available });
        }
        let bound = self.removal_bound();
        let removed = action.removed_weight();
        if removed <= bound {
            return Ok(());
        }
        match action.pile {
            Pile::PileOne => Err(IllegalReason::BoundViolated {
                removed_weight: clamp_i64(removed),
                bound: clamp_i64(bound),
            }),
            Pile::PileTwo => Err(IllegalReason::ForcedMinimum {
                minimum: self.pile_two_minimum(),
            }),
        }
    }

    pub fn is_legal(self, action: MoveAction) -> bool {
        self.check_move(action).is_ok()
    }

    /// All legal moves, ordered by pile (one before two) and then by count.
    pub fn legal_moves(self) -> Vec<MoveAction> {
        let ones = (1..=self.pile_one_maximum()).map(MoveAction::pile_one);
        let twos = (self.pile_two_minimum()..=self.y).map(MoveAction::pile_two);
        ones.chain(twos).collect()
    }

    /// Positions reachable in one move, in the same order as [`Position::legal_moves`].
    pub fn successors(self) -> impl Iterator<Item = Position> {
        let Position { x, y } = self;
        let ones = (1..=self.pile_one_maximum()).map(move |t| Position::new(x - t, y));
        let twos = (self.pile_two_minimum()..=y).map(move |u| Position::new(x, y - u));
        ones.chain(twos)
    }

    pub fn is_terminal(self) -> bool {
        self.pile_one_maximum() == 0 && self.pile_two_minimum() > self.y
    }

    pub fn apply_move(self, action: MoveAction) -> Result<Position, GameError> {
        self.check_move(action)
            .map_err(|reason| GameError::IllegalMove {
                position: self,
                action,
                reason,
            })?;
        Ok(match action.pile {
            Pile::PileOne => Position::new(self.x - action.count, self.y),
            Pile::PileTwo => Position::new(self.x, self.y - action.count),
        })
    }
}

fn clamp_i64(v: i128) -> i64 {
    v.clamp(i64::MIN as i128, i64::MAX as i128) as i64
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(u64, u64)> for Position {
    fn from((x, y): (u64, u64)) -> Self {
        Position::new(x, y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MoveAction {
    pub pile: Pile,
    pub count: u64,
}

impl MoveAction {
    pub const fn new(pile: Pile, count: u64) -> Self {
        MoveAction { pile, count }
    }

    pub const fn pile_one(count: u64) -> Self {
        MoveAction::new(Pile::PileOne, count)
    }

    pub const fn pile_two(count: u64) -> Self {
        MoveAction::new(Pile::PileTwo, count)
    }

    /// `+count` for pile one, `-2 * count` for pile two.
    pub fn removed_weight(self) -> i128 {
        self.pile.weight() * self.count as i128
    }
}

impl fmt::Display for MoveAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.pile.label(), self.count)
    }
}

/// Parses `"p1 <count>"` or `"p2 <count>"`.
impl FromStr for MoveAction {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parts = s.split_whitespace();
        let pile = match parts.next().map(str::to_ascii_lowercase).as_deref() {
            Some("p1") => Pile::PileOne,
            Some("p2") => Pile::PileTwo,
            Some(other) => return Err(format!("unknown pile '{other}', expected p1 or p2")),
            None => return Err("empty move".to_string()),
        };
        let count = parts
            .next()
            .ok_or_else(|| "missing stone count".to_string())?
            .parse::<u64>()
            .map_err(|e| format!("bad stone count: {e}"))?;
        if parts.next().is_some() {
            return Err("trailing input after count".to_string());
        }
        Ok(MoveAction::new(pile, count))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: u64, y: u64) -> Position {
        Position::new(x, y)
    }

    /// Every (pile, count) pair filtered by the raw weight inequality.
    fn brute_force_moves(pos: Position) -> Vec<MoveAction> {
        let bound = pos.removal_bound();
        let mut out = Vec::new();
        for t in 1..=pos.x {
            if t as i128 <= bound {
                out.push(MoveAction::pile_one(t));
            }
        }
        for u in 1..=pos.y {
            if -2 * (u as i128) <= bound {
                out.push(MoveAction::pile_two(u));
            }
        }
        out
    }

    #[test]
    fn total_weight_examples() {
        assert_eq!(p(0, 0).total_weight(), 0);
        assert_eq!(p(4, 1).total_weight(), 2);
        assert_eq!(p(2, 3).total_weight(), -4);
    }

    #[test]
    fn removal_bound_floors_toward_negative_infinity() {
        assert_eq!(p(5, 0).removal_bound(), 2);
        assert_eq!(p(2, 3).removal_bound(), -2);
        assert_eq!(p(3, 1).removal_bound(), 0);
        // W = -3
        assert_eq!(p(1, 2).removal_bound(), -2);
    }

    #[test]
    fn legal_moves_examples() {
        assert!(p(0, 0).legal_moves().is_empty());
        assert!(p(1, 0).legal_moves().is_empty());
        assert_eq!(
            p(4, 1).legal_moves(),
            vec![MoveAction::pile_one(1), MoveAction::pile_two(1)]
        );
        assert_eq!(
            p(2, 3).legal_moves(),
            vec![
                MoveAction::pile_two(1),
                MoveAction::pile_two(2),
                MoveAction::pile_two(3)
            ]
        );
    }

    #[test]
    fn apply_move_examples() {
        assert_eq!(p(4, 1).apply_move(MoveAction::pile_one(1)), Ok(p(3, 1)));
        assert_eq!(p(2, 3).apply_move(MoveAction::pile_two(2)), Ok(p(2, 1)));
        assert!(matches!(
            p(1, 0).apply_move(MoveAction::pile_one(1)),
            Err(GameError::IllegalMove {
                reason: IllegalReason::BoundViolated {
                    removed_weight: 1,
                    bound: 0
                },
                ..
            })
        ));
    }

    #[test]
    fn illegal_move_reasons() {
        assert_eq!(
            p(4, 1).check_move(MoveAction::pile_one(0)),
            Err(IllegalReason::ZeroCount)
        );
        assert_eq!(
            p(4, 0).check_move(MoveAction::pile_two(1)),
            Err(IllegalReason::PileEmpty)
        );
        assert_eq!(
            p(4, 2).check_move(MoveAction::pile_two(3)),
            Err(IllegalReason::ExceedsPile { available: 2 })
        );
        assert_eq!(
            p(0, 5).check_move(MoveAction::pile_two(2)),
            Err(IllegalReason::ForcedMinimum { minimum: 3 })
        );
        // negative weight freezes pile one
        assert!(matches!(
            p(3, 2).check_move(MoveAction::pile_one(1)),
            Err(IllegalReason::BoundViolated { .. })
        ));
    }

    #[test]
    fn terminal_examples() {
        assert!(p(0, 0).is_terminal());
        assert!(p(1, 0).is_terminal());
        assert!(!p(0, 5).is_terminal());
        assert_eq!(
            p(0, 5).legal_moves(),
            vec![
                MoveAction::pile_two(3),
                MoveAction::pile_two(4),
                MoveAction::pile_two(5)
            ]
        );
    }

    #[test]
    fn legal_moves_match_brute_force_up_to_64() {
        for x in 0..=64 {
            for y in 0..=64 {
                let pos = p(x, y);
                let moves = pos.legal_moves();
                assert_eq!(moves, brute_force_moves(pos), "at {pos}");
                assert_eq!(pos.is_terminal(), moves.is_empty(), "at {pos}");
                let succ: Vec<_> = pos.successors().collect();
                let applied: Vec<_> = moves.iter().map(|&m| pos.apply_move(m).unwrap()).collect();
                assert_eq!(succ, applied, "at {pos}");
            }
        }
    }

    #[test]
    fn parse_move() {
        assert_eq!("p1 2".parse::<MoveAction>(), Ok(MoveAction::pile_one(2)));
        assert_eq!(
            " P2   7 ".parse::<MoveAction>(),
            Ok(MoveAction::pile_two(7))
        );
        assert!("p3 1".parse::<MoveAction>().is_err());
        assert!("p1".parse::<MoveAction>().is_err());
        assert!("p1 x".parse::<MoveAction>().is_err());
        assert!("p1 1 2".parse::<MoveAction>().is_err());
    }

    proptest! {
        #[test]
        fn legal_moves_respect_rules(x in 0u64..2000, y in 0u64..2000) {
            let pos = p(x, y);
            let bound = pos.removal_bound();
            for m in pos.legal_moves() {
                prop_assert!(m.count >= 1);
                prop_assert!(m.removed_weight() <= bound);
                let next = pos.apply_move(m).unwrap();
                prop_assert!(next.x + next.y < x + y);
            }
            if pos.total_weight() < 0 {
                prop_assert!(pos.legal_moves().iter().all(|m| m.pile == Pile::PileTwo));
            } else {
                let twos = pos.legal_moves().into_iter().filter(|m| m.pile == Pile::PileTwo).count();
                prop_assert_eq!(twos as u64, y);
            }
        }

        #[test]
        fn move_display_round_trips(pile_two in any::<bool>(), count in 0u64..u64::MAX) {
            let m = MoveAction::new(if pile_two { Pile::PileTwo } else { Pile::PileOne }, count);
            prop_assert_eq!(m.to_string().parse::<MoveAction>(), Ok(m));
        }
    }
}
