//! Shared scalar and matrix numerics: log-space probability arithmetic,
//! log-space special functions, small dense Hermitian eigenproblems, and the
//! seeded-randomness contract used by every Monte-Carlo path.

pub mod logprob;
pub mod matrix;
pub mod rng;
pub mod sample;
pub mod special;

pub use logprob::{log_sum_exp, LogProb};
pub use matrix::{Eigh, HermitianMatrix};
pub use rng::{derived_stream, seeded, SeededRng};
pub use special::{ln_factorial, log_binomial, poisson_pmf_log};
