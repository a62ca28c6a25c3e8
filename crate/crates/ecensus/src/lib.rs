//! Desk-scale toolkit for counting elliptic curves over Q by naive height.
//!
//! The crate enumerates elliptic curves as points of the weighted projective
//! space P(4,6), counts weighted-projective rational points under congruence
//! conditions, computes Kronecker-Hurwitz class numbers and Frobenius traces
//! exactly, and evaluates the explicit-formula prime sums that produce the
//! conditional average-analytic-rank bound 1/nu + 1/2.
//!
//! Modules mirror the pipeline:
//! - [`arith`]: integer utilities, quadratic symbols, zeta/L evaluators.
//! - [`lattice`]: lattice point counts in weighted dilates with congruence
//!   boxes, plus main-term/error-scale predictions.
//! - [`wps`]: points of P(w)(Q), normalization, heights, enumeration, and the
//!   leading constant for arbitrary number fields from supplied invariants.
//! - [`hurwitz`]: class numbers of binary quadratic forms, Hurwitz-Kronecker
//!   class numbers, Deuring counts over F_q, and class-number sums.
//! - [`ec`]: the curve census, Kodaira classification at p >= 5, Frobenius
//!   data, and local densities.
//! - [`lfunc`]: the test function, S_1/S_2 census averages, and rank-bound
//!   reports.
//! - [`verify`]: the self-verification suite run by `ecensus verify` and the
//!   acceptance tests.

pub mod arith;
pub mod ec;
pub mod error;
pub mod hurwitz;
pub mod lattice;
pub mod lfunc;
pub mod rational;
pub mod verify;
pub mod wps;

pub use error::{Error, Result};
pub use rational::Rational;
