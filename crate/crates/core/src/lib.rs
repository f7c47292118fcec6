//! Spin coherent-state machinery and the three constructions built on it:
//!
//! * [`qes`]: the uniaxial paramagnet `H = -S_z^2 - B S_x` mapped onto a
//!   one-dimensional Schrödinger problem whose lowest `2S+1` levels coincide
//!   with the spin spectrum.
//! * [`dynamics`]: observable dynamics written directly for coherent-state
//!   symbols, checked against exact Heisenberg evolution.
//! * [`wk`]: classical spin thermodynamics on the sphere with the first
//!   quantum (`1/S`) free-energy correction.
//!
//! [`sectors`] block-diagonalizes the Dicke and two-oscillator models by a
//! conserved excitation number.
//!
//! Conventions used throughout: `hbar = 1`; spin matrices are written in the
//! `S_z` eigenbasis ordered `sigma = S, S-1, ..., -S` (row 0 is `|S>`).

pub mod dynamics;
pub mod error;
pub mod io;
pub mod linalg;
pub mod qes;
pub mod quadrature;
pub mod sectors;
pub mod spin;
pub mod wk;

pub use error::{Error, Result};
pub use linalg::{CMatrix, Eigensystem};
pub use spin::{CoherentPoint, QuadraticSpinModel, SpinOperatorSet, SpinQuantum};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
