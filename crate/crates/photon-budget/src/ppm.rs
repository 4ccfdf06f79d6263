//! Pulse-position modulation over `N` slots with a single coherent pulse of
//! mean photon number `E`: message `i` puts the pulse in slot `i`, and the
//! decoder clicks on the unique slot with at least one photon.
//!
//! Unpulsed slots are exact vacuum in this noiseless model, so the only
//! failure mode is the pulsed slot yielding zero photons — probability
//! `e^{-E}`, independent of the slot count. The on-off decoder is an
//! incomplete measurement; its remainder (no click anywhere) counts as an
//! error.

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;

use crate::capacity::EnergyBudget;
use crate::discrimination;
use crate::error::{Error, Result};
use crate::numerics::derived_stream;

/// A pulse-position code: `N` slots (= messages), one pulse of budget `E`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PpmCode {
    pub slots: u64,
    pub energy: EnergyBudget,
}

impl PpmCode {
    pub fn new(slots: u64, energy: EnergyBudget) -> Result<Self> {
        if slots == 0 {
            return Err(Error::domain("slot count must be >= 1".to_string()));
        }
        Ok(PpmCode { slots, energy })
    }
}

/// Exact error probability `e^{-E}`: the pulsed slot yields zero photons and
/// the decoder falls through to the inconclusive remainder.
pub fn exact_error(code: &PpmCode) -> f64 {
    code.energy.vacuum_overlap()
}

/// Monte-Carlo estimate with a binomial 95% interval.
#[derive(Debug, Clone, Copy)]
pub struct SimReport {
    pub trials: u64,
    pub errors: u64,
    pub empirical_error: f64,
    pub ci95: (f64, f64),
}

/// Number of deterministic RNG shards used by [`simulate`].
const SHARDS: u64 = 256;

/// Samples `trials` transmissions: a uniformly random message, a Poisson(E)
/// photon count in its slot, an error whenever the count is zero.
///
/// Work is split over a fixed shard count; shard `j` draws from the
/// `(seed, j)` stream and the error counts add exactly, so the result is
/// identical for any worker count.
pub fn simulate(code: &PpmCode, trials: u64, seed: u64) -> Result<SimReport> {
    if trials == 0 {
        return Err(Error::domain("need at least one trial".to_string()));
    }
    let e = code.energy.value();
    let sampler = if e > 0.0 {
        Some(Poisson::new(e).map_err(|err| Error::domain(format!("Poisson mean {e}: {err}")))?)
    } else {
        None
    };
    let shards = SHARDS.min(trials);
    let errors: u64 = (0..shards)
        .into_par_iter()
        .map(|shard| {
            let mut rng = derived_stream(seed, shard);
            let share = trials / shards + u64::from(shard < trials % shards);
            let mut errs = 0u64;
            for _ in 0..share {
                let _message = rng.random_range(0..code.slots);
                let photons = match &sampler {
                    Some(p) => p.sample(&mut rng) as u64,
                    None => 0,
                };
                if photons == 0 {
                    errs += 1;
                }
            }
            errs
        })
        .sum();
    let p_hat = errors as f64 / trials as f64;
    let half = 1.959963984540054 * (p_hat * (1.0 - p_hat) / trials as f64).sqrt();
    Ok(SimReport {
        trials,
        errors,
        empirical_error: p_hat,
        ci95: ((p_hat - half).max(0.0), (p_hat + half).min(1.0)),
    })
}

/// Achievability against the discrimination floor.
#[derive(Debug, Clone, Copy)]
pub struct ConsistencyReport {
    /// The code's exact error `e^{-E}`.
    pub achieved: f64,
    /// The covariant-measurement lower bound at `M = N` messages.
    pub lower_bound: f64,
    pub gap: f64,
    pub holds: bool,
}

/// Checks that the achieved error sits above the discrimination lower bound
/// (which approaches `e^{-E}` from below as the slot count grows).
pub fn consistency_with_bound(code: &PpmCode) -> Result<ConsistencyReport> {
    if code.slots < 2 {
        return Err(Error::domain(
            "consistency needs at least two messages".to_string(),
        ));
    }
    let achieved = exact_error(code);
    let lower_bound = discrimination::error_lower_bound(code.energy, code.slots);
    Ok(ConsistencyReport {
        achieved,
        lower_bound,
        gap: achieved - lower_bound,
        holds: achieved >= lower_bound,
    })
}
