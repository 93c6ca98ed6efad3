//! The qutrit ping-pong protocol and the general individual attack against it.
//!
//! - [`algebra`]: qutrit kets, Bell states, coding unitaries, mutually unbiased bases, a
//!   Hermitian Jacobi eigensolver and a trigonometric cubic solver.
//! - [`attack`]: Eve's attack parameters, their constraints and detection probabilities.
//! - [`info`]: the density operator Eve holds and its Holevo information.
//! - [`sim`]: a full-state simulator of message and control cycles.
//! - [`compare`]: capacity and detection bounds across protocol variants.

#![allow(clippy::needless_range_loop)]

pub mod algebra;
pub mod attack;
pub mod compare;
mod error;
pub mod info;
pub mod sim;

pub use error::{Error, Result, ALGEBRAIC_TOL, ATTACK_TOL, ITERATIVE_TOL};
