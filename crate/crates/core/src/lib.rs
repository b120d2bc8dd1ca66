//! Exact computations with matrix semi-invariants.
//!
//! Two actions are covered:
//!
//! - `SL2 x SL2` acting on n-tuples of 2x2 matrices by `(g, h)·A = g A h⁻¹`,
//! - `SL_l` acting on `l x n` matrices by left multiplication.
//!
//! For both the crate evaluates generating invariants, decides separation,
//! tests stability and nullcone membership, decides membership of pairs in
//! the closure of the graph of the action, and certifies the dimensions of
//! the components of the separating variety through exact Jacobian ranks.
//! Everything is computed over the rationals; no tolerance exists anywhere.

pub mod certify;
pub mod error;
pub mod exact;
pub mod geometry_left;
pub mod geometry_lr;
pub mod invariants;
pub mod sampling;
pub mod separation;

pub use error::{Error, Result};
pub use exact::{rat, RMatrix, Rational};
