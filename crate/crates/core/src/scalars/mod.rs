//! Exact scalar arithmetic over the ground ring of the walled Brauer
//! algebra.
//!
//! The base ring is R = ℤ[q^{±1}, ρ^{±1}] localized at q − q^{-1}; most
//! computations happen in its fraction field ℚ(ρ, q). Four layers build on
//! each other:
//!
//! - [`poly::IntPoly`] — sparse ℤ[ρ, q] polynomials with exact division and
//!   a primitive-remainder-sequence gcd. This is the only place polynomial
//!   arithmetic happens.
//! - [`ExactScalar`] — canonical fractions c · ρ^a q^b · N/D with rational
//!   content c and primitive, coprime, monomial-free N, D. Equality is
//!   structural.
//! - [`BracketProduct`] — quantities kept in factored form
//!   ±c · q^a · Π [m]^{e_m} · Π [δ+n]^{f_n}, where [k] is the quantum
//!   integer and [δ+n] the shifted bracket
//!   (ρ q^n − ρ^{-1} q^{-n})/(q − q^{-1}). All Gram-determinant plumbing
//!   multiplies these by exponent arithmetic; nothing is expanded until a
//!   caller asks.
//! - [`RationalFunctionInU`] — univariate rational functions over
//!   [`ExactScalar`] coefficients, enough to take residues of the
//!   wall-coefficient generating series at simple poles.
//!
//! [`SpecializationParams`] maps all of it into a prime field (or a small
//! extension) chosen so that desk-scale root-of-unity and characteristic-p
//! questions are answered exactly.

mod bracket;
mod exact;
mod poly;
mod ratfun;
mod specialize;

pub use bracket::BracketProduct;
pub use exact::ExactScalar;
pub use poly::IntPoly;
pub use ratfun::{residue_at, RationalFunctionInU, UPoly};
pub use specialize::{
    FieldChar, FieldElement, PrimeField, QuantumChar, RhoRelation, SpecializationParams,
    Specialized,
};

use thiserror::Error;

/// Errors surfaced by the scalar layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    /// Inversion or division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A residue was requested at a point where the denominator does not
    /// vanish.
    #[error("not a pole of the rational function")]
    NotAPole,
    /// A residue was requested at a pole of order two or more.
    #[error("pole of order at least two; residue rule for simple poles does not apply")]
    HigherOrderPole,
    /// A specialization hit a vanishing denominator.
    #[error("denominator vanishes under the requested specialization")]
    SpecializationPole,
    /// No admissible parameter assignment exists (e.g. quantum
    /// characteristic divisible by the field characteristic).
    #[error("unsatisfiable specialization parameters: {0}")]
    UnsatisfiableParams(String),
}
