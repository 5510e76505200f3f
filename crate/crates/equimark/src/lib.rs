//! Equivariant generating sets for kernels of monomial maps.
//!
//! A monomial map sends a formal variable indexed by a tuple of distinct
//! column indices, `y_(i1..ik)`, to the monomial `x_{i1}^{a_1} ... x_{ik}^{a_k}`
//! (one row of exponents; several rows map into several groups of `x`
//! variables).  The infinite symmetric group acts on column indices, and the
//! kernel of the induced lattice map is stable under that action.  This crate
//! builds the finite families of moves that generate such kernels up to
//! symmetry — as lattices, as Markov bases, and as Laurent generating sets —
//! and verifies them at finite truncations with exact integer arithmetic:
//! Hermite normal forms for lattice spans, exhaustive fiber graphs for Markov
//! connectivity and Gröbner-style reduction, and constructive step-by-step
//! decompositions for the two factor maps.
//!
//! Modules mirror the pipeline:
//!
//! * [`tables`] — sparse integer exponent tables, binomials, multidegrees.
//! * [`symmetry`] — permutation action, canonical forms, orbits.
//! * [`maps`] — map data, truncations, the matching monoid, kernel bases.
//! * [`hnf`] — row-style Hermite normal form over the scalar type.
//! * [`generators`] — the named generating families and [`generators::GeneratorSet`].
//! * [`verify`] — truncation checks producing [`verify::Report`]s.
//! * [`io`] — text and matrix-file round-trips plus box-shape rendering.
//!
//! All arithmetic is exact.  The scalar is a fixed-width signed integer and
//! every product or sum that could overflow is checked: out-of-range
//! intermediate values abort loudly instead of wrapping.

pub mod error;
pub mod generators;
pub mod hnf;
pub mod io;
pub mod maps;
pub mod symmetry;
pub mod tables;
pub mod verify;

pub use error::{Error, Result};

/// Exact scalar used throughout.
///
/// 128 bits comfortably hold every value arising from the supported
/// truncations (coefficients beyond 2^40 are exercised in tests); all
/// arithmetic on it goes through checked operations so an overflow panics
/// instead of wrapping silently.
pub type Int = i128;

/// Checked addition; panics loudly on overflow instead of wrapping.
#[inline]
pub(crate) fn add(a: Int, b: Int) -> Int {
    a.checked_add(b).expect("integer overflow in exact arithmetic (add)")
}

/// Checked multiplication; panics loudly on overflow instead of wrapping.
#[inline]
pub(crate) fn mul(a: Int, b: Int) -> Int {
    a.checked_mul(b).expect("integer overflow in exact arithmetic (mul)")
}
