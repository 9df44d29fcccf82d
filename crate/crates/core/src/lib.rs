//! Lorentz transformations of two massive spin-1/2 particles and the
//! entanglement of their spins and momenta.
//!
//! Wigner rotations come from the polar split of 4×4 Lorentz matrices; their
//! SU(2) images act on the spins of each momentum branch of a two-particle
//! state, and the resulting spin and momentum marginals are analysed with
//! Wootters concurrence and the partial-transpose test.

// `!(x <= limit)` is used on purpose so that NaN fails the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod entanglement;
pub mod error;
pub mod lorentz;
pub mod scenario;
pub mod spin_half;
pub mod two_particle;

pub use error::{Error, Result};
