//! Numerics for photon-number-constrained coherent-state signalling.
//!
//! The crate covers three questions about a channel whose outputs are
//! coherent states under a mean-photon-number budget `E`:
//!
//! - **How much fits in a period?** Closed-form capacities per pulse and per
//!   period, their large-`K` expansions, and the classical Gaussian contrast
//!   ([`capacity`]).
//! - **How much fits in one code?** The logarithmic-order staircase over
//!   Poisson partial sums and its energy inverse ([`loglaw`]), the exact
//!   eigenvalue structure of unitarily invariant coherent-state mixtures
//!   ([`spectrum`]), and finite-dimensional hypothesis-testing checks behind
//!   them ([`infospec`]).
//! - **How well can messages be told apart?** The covariant-measurement error
//!   lower bound with a square-root-measurement oracle ([`discrimination`])
//!   and the explicit pulse-position code that attains the `e^{-E}` error
//!   floor ([`ppm`]).
//!
//! All probability arithmetic runs in natural-log space ([`numerics`]); all
//! rates are in nats unless a caller converts.

pub mod capacity;
pub mod discrimination;
mod error;
pub mod infospec;
pub mod loglaw;
pub mod numerics;
pub mod ppm;
pub mod spectrum;

pub use error::{Error, Result};

#[cfg(doctest)]
mod book;
