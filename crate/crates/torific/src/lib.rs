//! Exact-arithmetic toolkit for resolving reduced plane curve singularities
//! with a single toric morphism after re-embedding.
//!
//! Given a reduced plane curve germ over the rationals, the crate computes:
//!
//! - Newton-Puiseux parametrizations, characteristic exponents and the
//!   semigroup of each branch ([`branch`]),
//! - a generic sequence of maximal contact curves and the genericity
//!   certificate that validates it ([`contact`]),
//! - the Eggers-Wall tree with exponent, index and contact-complexity
//!   functions, renormalization data, distinguished points and the dual
//!   graph of the minimal embedded resolution ([`eggers`]),
//! - the local tropicalization fan spanned by the `w^P` vectors, together
//!   with its minimal regularization ([`tropical`]),
//! - adic expansions, the generators of the re-embedding ideal, weighted
//!   initial-form certificates and chart-by-chart verification that one
//!   toric modification resolves the curve ([`resolution`]).
//!
//! A space-curve mode handles reduced non-planar curves given by monomial
//! arc parametrizations ([`resolution::space`]).
//!
//! All arithmetic is exact: coefficients are arbitrary-precision rationals
//! and every truncated power series carries an explicit order bound that is
//! propagated (never silently extended) through each operation.
//!
//! The `examples/` directory of this crate contains one runnable example per
//! major capability; the `torific` binary exposes the same pipeline as a
//! small command-line tool.

pub mod rat;
pub mod series;
pub mod mpoly;
pub mod lattice;
pub mod branch;
pub mod eggers;
pub mod contact;
pub mod tropical;
pub mod resolution;
pub mod fixtures;
pub mod input;
pub mod dot;
pub mod cli;

mod errors;
pub use errors::Error;

/// Convenient result alias used across the crate.
pub type Result<T> = std::result::Result<T, Error>;
