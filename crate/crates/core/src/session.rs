//! Line-based human-vs-engine play.

use std::fmt;
use std::io::{self, BufRead, Write};

use serde::{Deserialize, Serialize};

use crate::engine::{best_move, winning_moves, GrundySource};
use crate::error::GameError;
use crate::game::{MoveAction, Position};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Actor {
    Human,
    Engine,
}

impl Actor {
    pub fn other(self) -> Actor {
        match self {
            Actor::Human => Actor::Engine,
            Actor::Engine => Actor::Human,
        }
    }
}

impl fmt::Display for Actor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Actor::Human => "human",
            Actor::Engine => "engine",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranscriptMove {
    pub actor: Actor,
    pub action: MoveAction,
    pub result: Position,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionTranscript {
    pub initial: Position,
    pub moves: Vec<TranscriptMove>,
    /// `None` when the session was aborted before a terminal position.
    pub winner: Option<Actor>,
    pub aborted: bool,
}

impl SessionTranscript {
    /// Re-applies every move from the initial position, checking each
    /// recorded result. Returns the final position.
    pub fn replay(&self) -> Result<Position, GameError> {
        let mut pos = self.initial;
        for (i, m) in self.moves.iter().enumerate() {
            pos = pos.apply_move(m.action)?;
            if pos != m.result {
                return Err(GameError::domain(format!(
                    "move {} recorded result {} but replay gives {pos}",
                    i + 1,
                    m.result
                )));
            }
        }
        Ok(pos)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SessionConfig {
    pub start: Position,
    pub human_first: bool,
    /// Show the Grundy value and winning moves before each human turn.
    pub hints: bool,
}

/// `(x, y)  W=…  max removable weight=…`
pub fn describe(p: Position) -> String {
    format!(
        "{p}  W={}  max removable weight={}",
        p.total_weight(),
        p.removal_bound()
    )
}

fn list(moves: &[MoveAction]) -> String {
    if moves.is_empty() {
        return "none".to_string();
    }
    moves
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

/// Runs one game. Human moves are read as `p1 <count>` / `p2 <count>`;
/// `moves`, `hint`, `help` and `quit` are also accepted.
pub fn play_session<S, R, W>(
    config: SessionConfig,
    source: &mut S,
    mut input: R,
    mut out: W,
) -> io::Result<SessionTranscript>
where
    S: GrundySource + ?Sized,
    R: BufRead,
    W: Write,
{
    let mut pos = config.start;
    let mut to_move = if config.human_first {
        Actor::Human
    } else {
        Actor::Engine
    };
    let mut transcript = SessionTranscript {
        initial: pos,
        moves: Vec::new(),
        winner: None,
        aborted: false,
    };
    writeln!(out, "start {}", describe(pos))?;

    loop {
        if pos.is_terminal() {
            let winner = to_move.other();
            writeln!(out, "no legal move for {to_move}; {winner} wins")?;
            transcript.winner = Some(winner);
            return Ok(transcript);
        }
        let action = match to_move {
            Actor::Engine => {
                let m = best_move(source, pos).expect("position is not terminal");
                writeln!(out, "engine plays {m}")?;
                m
            }
            Actor::Human => {
                if config.hints {
                    write_hint(source, pos, &mut out)?;
                }
                match read_human_move(config, source, pos, &mut input, &mut out)? {
                    Some(m) => m,
                    None => {
                        writeln!(out, "session aborted")?;
                        transcript.aborted = true;
                        return Ok(transcript);
                    }
                }
            }
        };
        pos = pos.apply_move(action).expect("move was validated");
        transcript.moves.push(TranscriptMove {
            actor: to_move,
            action,
            result: pos,
        });
        writeln!(out, "now {}", describe(pos))?;
        to_move = to_move.other();
    }
}

fn write_hint<S: GrundySource + ?Sized, W: Write>(
    source: &mut S,
    pos: Position,
    out: &mut W,
) -> io::Result<()> {
    let g = source.grundy(pos);
    let wins = winning_moves(source, pos);
    writeln!(out, "hint: grundy={g} winning moves: {}", list(&wins))
}

/// `None` on end of input or `quit`.
fn read_human_move<S, R, W>(
    config: SessionConfig,
    source: &mut S,
    pos: Position,
    input: &mut R,
    out: &mut W,
) -> io::Result<Option<MoveAction>>
where
    S: GrundySource + ?Sized,
    R: BufRead,
    W: Write,
{
    let mut line = String::new();
    loop {
        write!(out, "your move> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(None);
        }
        match line.trim() {
            "" => continue,
            "q" | "quit" | "exit" => return Ok(None),
            "help" | "?" => {
                writeln!(
                    out,
                    "enter 'p1 <count>' or 'p2 <count>'; 'moves' lists legal moves; 'hint' shows the Grundy value; 'quit' ends"
                )?;
            }
            "moves" => writeln!(out, "legal moves: {}", list(&pos.legal_moves()))?,
            "hint" => {
                if config.hints {
                    write_hint(source, pos, out)?;
                } else {
                    writeln!(out, "hints are off (start with --hint)")?;
                }
            }
            text => match text.parse::<MoveAction>() {
                Err(e) => writeln!(out, "could not read move: {e}")?,
                Ok(m) => match pos.check_move(m) {
                    Ok(()) => return Ok(Some(m)),
                    Err(reason) => writeln!(out, "illegal move {m}: {reason}")?,
                },
            },
        }
    }
}
