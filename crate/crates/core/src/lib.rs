//! Exact computations around Hilbert–Mumford semistability: weighted flags of
//! one-parameter subgroups, torus-level instability, the semistability
//! functionals of weighted filtrations, dispo sheaves, bilinear-form bundles
//! on the projective line and characteristic bounds by Dynkin type.
//!
//! The numeric core is generic over [`exactmath::Scalar`]; the aliases below
//! fix the exact rational instantiation used by the CLI and the tests.

pub mod classical;
pub mod cli;
pub mod dispo;
pub mod error;
pub mod exactmath;
pub mod flags;
pub mod hilbert_mumford;
pub mod json;
pub mod repdata;

pub use error::{Error, Result};

/// Arbitrary-precision rational.
pub type Rational = num_rational::BigRational;
/// Polynomial with exact rational coefficients.
pub type Poly = exactmath::UniPoly<Rational>;
