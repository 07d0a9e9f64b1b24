//! Brute-force Sprague–Grundy values by mex recursion, and the perfect-play
//! move selector built on them.

use std::collections::HashMap;

use crate::error::GameError;
use crate::game::{MoveAction, Position};

/// Smallest non-negative integer not in `values`.
pub fn mex<I: IntoIterator<Item = u32>>(values: I) -> u32 {
    let values: Vec<u32> = values.into_iter().collect();
    let mut seen = vec![false; values.len() + 1];
    for v in values {
        if let Some(slot) = seen.get_mut(v as usize) {
            *slot = true;
        }
    }
    seen.iter().position(|&s| !s).unwrap_or(seen.len()) as u32
}

/// Anything that can report the Grundy value of a position.
pub trait GrundySource {
    fn grundy(&mut self, p: Position) -> u32;
}

/// Dense Grundy table over the box `0..=x_max` by `0..=y_max`.
///
/// Every successor of a position lies in the box of that position, so a
/// fill in increasing `(x, y)` only ever reads entries that are already set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrundyTable {
    x_max: u64,
    y_max: u64,
    values: Vec<u32>,
}

impl GrundyTable {
    pub fn build(x_max: u64, y_max: u64) -> Self {
        let width = (y_max + 1) as usize;
        let len = (x_max as usize + 1)
            .checked_mul(width)
            .expect("grundy table too large");
        let mut values = vec![0u32; len];
        // stamp[v] == tag marks v as a successor value of the current cell
        let mut stamp = vec![0u64; (x_max / 2 + y_max + 2) as usize];
        let mut tag = 0u64;
        for x in 0..=x_max {
            for y in 0..=y_max {
                tag += 1;
                let p = Position::new(x, y);
                for q in p.successors() {
                    let g = values[q.x as usize * width + q.y as usize] as usize;
                    if g < stamp.len() {
                        stamp[g] = tag;
                    }
                }
                let g = stamp.iter().position(|&s| s != tag).unwrap_or(stamp.len());
                values[x as usize * width + y as usize] = g as u32;
            }
        }
        GrundyTable {
            x_max,
            y_max,
            values,
        }
    }

    pub fn x_max(&self) -> u64 {
        self.x_max
    }

    pub fn y_max(&self) -> u64 {
        self.y_max
    }

    pub fn contains(&self, p: Position) -> bool {
        p.x <= self.x_max && p.y <= self.y_max
    }

    fn index(&self, p: Position) -> usize {
        p.x as usize * (self.y_max as usize + 1) + p.y as usize
    }

    pub fn get(&self, p: Position) -> Option<u32> {
        self.contains(p).then(|| self.values[self.index(p)])
    }

    /// Overwrites one entry. Only meant for fault-injection tests of the
    /// verification sweeps.
    pub fn set(&mut self, p: Position, value: u32) {
        assert!(self.contains(p), "{p} is outside the table");
        let i = self.index(p);
        self.values[i] = value;
    }

    /// Entries in `(x, y)` order.
    pub fn iter(&self) -> impl Iterator<Item = (Position, u32)> + '_ {
        let width = self.y_max + 1;
        self.values
            .iter()
            .enumerate()
            .map(move |(i, &g)| (Position::new(i as u64 / width, i as u64 % width), g))
    }

    /// Rows as nested vectors, `rows[x][y]`.
    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.values
            .chunks((self.y_max + 1) as usize)
            .map(<[u32]>::to_vec)
            .collect()
    }
}

/// Panics if `p` lies outside the table.
impl GrundySource for GrundyTable {
    fn grundy(&mut self, p: Position) -> u32 {
        self.get(p)
            .unwrap_or_else(|| panic!("{p} is outside the {}x{} table", self.x_max, self.y_max))
    }
}

/// Memoized Grundy values for ad-hoc queries.
#[derive(Debug, Default, Clone)]
pub struct GrundyMemo {
    known: HashMap<Position, u32>,
}

impl GrundyMemo {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.known.len()
    }

    pub fn is_empty(&self) -> bool {
        self.known.is_empty()
    }
}

impl GrundySource for GrundyMemo {
    fn grundy(&mut self, p: Position) -> u32 {
        if let Some(&g) = self.known.get(&p) {
            return g;
        }
        // Explicit stack; recursion depth would otherwise grow with x + y.
        let mut stack = vec![p];
        while let Some(&top) = stack.last() {
            if self.known.contains_key(&top) {
                stack.pop();
                continue;
            }
            let before = stack.len();
            for q in top.successors() {
                if !self.known.contains_key(&q) {
                    stack.push(q);
                }
            }
            if stack.len() == before {
                let g = mex(top.successors().map(|q| self.known[&q]));
                self.known.insert(top, g);
                stack.pop();
            }
        }
        self.known[&p]
    }
}

/// Grundy value of a single position with a fresh memo.
pub fn grundy(p: Position) -> u32 {
    GrundyMemo::new().grundy(p)
}

pub fn is_p_position(p: Position) -> bool {
    grundy(p) == 0
}

/// Legal moves leading to a position of Grundy value zero, in `(pile, count)` order.
pub fn winning_moves<S: GrundySource + ?Sized>(source: &mut S, p: Position) -> Vec<MoveAction> {
    p.legal_moves()
        .into_iter()
        .filter(|&m| {
            let next = p.apply_move(m).expect("legal move");
            source.grundy(next) == 0
        })
        .collect()
}

/// The least winning move, or the least legal move from a P-position.
pub fn best_move<S: GrundySource + ?Sized>(
    source: &mut S,
    p: Position,
) -> Result<MoveAction, GameError> {
    let moves = p.legal_moves();
    let first = *moves.first().ok_or(GameError::NoMove(p))?;
    for m in moves {
        if source.grundy(p.apply_move(m)?) == 0 {
            return Ok(m);
        }
    }
    Ok(first)
}

/// Result of a game between the engine and some adversary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelfPlayOutcome {
    pub engine_won: bool,
    pub moves: Vec<(bool, MoveAction)>,
}

/// Plays the engine (moving first) against `adversary` until a terminal position.
/// Each recorded move carries `true` if the engine made it.
pub fn self_play<S, A>(source: &mut S, start: Position, mut adversary: A) -> SelfPlayOutcome
where
    S: GrundySource + ?Sized,
    A: FnMut(Position, &[MoveAction]) -> MoveAction,
{
    let mut pos = start;
    let mut engine_to_move = true;
    let mut moves = Vec::new();
    while !pos.is_terminal() {
        let m = if engine_to_move {
            best_move(source, pos).expect("non-terminal")
        } else {
            let legal = pos.legal_moves();
            let m = adversary(pos, &legal);
            assert!(
                legal.contains(&m),
                "adversary chose illegal move {m} at {pos}"
            );
            m
        };
        pos = pos.apply_move(m).expect("legal move");
        moves.push((engine_to_move, m));
        engine_to_move = !engine_to_move;
    }
    // the player to move at a terminal position loses
    SelfPlayOutcome {
        engine_won: !engine_to_move,
        moves,
    }
}
