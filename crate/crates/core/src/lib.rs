//! Josephus Nim: a two-pile Nim variant with stones of weight `+1` and `-2`.
//!
//! A player may remove stones from one pile as long as the total weight
//! removed does not exceed half (rounded down) of the total weight on the
//! board. This crate provides
//!
//! * the exact move rules ([`game`]),
//! * a brute-force Sprague–Grundy oracle and a perfect-play engine ([`engine`]),
//! * the closed-form description of each Grundy class ([`classes`]),
//! * the every-second-number Josephus process ([`josephus`]),
//! * exhaustive finite-range checks tying all of the above together ([`verify`]),
//! * an interactive human-vs-engine session ([`session`]).

pub mod classes;
pub mod cli;
pub mod engine;
pub mod error;
pub mod game;
pub mod josephus;
pub mod session;
pub mod verify;

pub use classes::{
    class_position, classify, enumerate_class, grundy_closed, odd_part, Family, GrundyClass,
};
pub use engine::{
    best_move, grundy, is_p_position, mex, winning_moves, GrundyMemo, GrundySource, GrundyTable,
};
pub use error::{GameError, IllegalReason};
pub use game::{MoveAction, Pile, Position};
pub use josephus::{
    elimination_order, f_s_closed, f_s_recursive, f_s_simulated, survivor, EliminationOrder,
    FsQuery,
};
pub use verify::{Counterexample, VerificationReport};
