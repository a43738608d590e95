//! Exact computer algebra for the combinatorial layer of the quantized
//! walled Brauer algebra B_{r,t}(ρ, q).
//!
//! The crate computes, over the ground ring ℤ[q^{±1}, ρ^{±1}] localized at
//! q − q^{-1} (and its fraction field ℚ(ρ, q)):
//!
//! - Gram determinants of every cell module, both as a product over up-down
//!   tableaux of orthogonal-basis norms and through the branching recursion,
//!   kept in factored bracket form end to end;
//! - the structure coefficients of the orthogonal form (diagonal and
//!   off-diagonal neighbor coefficients, wall coefficients via quantum
//!   dimensions and via residues of the generating series);
//! - block classification of cell modules under a specialization
//!   ρ² = q^{2n} with quantum characteristic e, and the simple-head
//!   (Gram-nonvanishing) criterion with its hook-valuation condition;
//! - exact specialization of all of the above into small prime fields or
//!   their extensions, used to cross-check vanishing predictions.
//!
//! Modules are layered: [`scalars`] is the arithmetic kernel, [`partitions`]
//! and [`tableaux`] the combinatorics, [`coefficients`] and [`gram`] the
//! recursion engine, [`blocks`] the specialized theory. [`selftest`] bundles
//! the acceptance checks the CLI exposes as `wbr selftest`.

pub mod blocks;
pub mod coefficients;
pub mod gram;
pub mod partitions;
pub mod scalars;
pub mod selftest;
pub mod tableaux;
