//! The logarithmic-order capacity staircase: with a single-code photon budget
//! `E`, the achievable rate on the `log N` scale is the largest integer `m`
//! whose Poisson partial sum `Σ_{n≤m} e^{-E} E^n/n!` stays within the error
//! target, and the minimum budget for a target `(m, ε)` inverts that sum.

use crate::capacity::EnergyBudget;
use crate::error::{Error, Result};
use crate::numerics::{log_sum_exp, poisson_pmf_log};

/// Result of the staircase evaluation at `(ε, E)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LogLawResult {
    /// Even rate level 0 is out of reach: the vacuum mass `e^{-E}` alone
    /// already exceeds the error budget, so the sup runs over an empty set.
    NoPositiveRate { vacuum_mass: f64 },
    /// The staircase level `m_star`, with the bracketing partial sums
    /// `cdf_at_m ≤ ε < cdf_at_m_plus_1`.
    Rate {
        m_star: u64,
        cdf_at_m: f64,
        cdf_at_m_plus_1: f64,
    },
}

impl LogLawResult {
    /// The staircase level, if any rate is achievable.
    pub fn m_star(&self) -> Option<u64> {
        match self {
            LogLawResult::NoPositiveRate { .. } => None,
            LogLawResult::Rate { m_star, .. } => Some(*m_star),
        }
    }
}

/// Poisson partial sum `Σ_{n=0}^{m} e^{-E} E^n / n!`, accumulated in log
/// space. Nondecreasing in `m`, nonincreasing in `E`, always in [0, 1].
pub fn poisson_cdf(energy: EnergyBudget, m: u64) -> f64 {
    let e = energy.value();
    let mut terms = Vec::with_capacity((m + 1).min(4096) as usize);
    for n in 0..=m {
        let t = poisson_pmf_log(e, n).expect("budget is validated");
        if !t.is_zero() {
            terms.push(t.value());
        }
        // past the mode the terms decay geometrically; once they can no
        // longer move the accumulated sum, stop
        if (n as f64) > e && t.value() < -800.0 {
            break;
        }
    }
    log_sum_exp(&terms).exp().min(1.0)
}

/// Upper Poisson tail `Σ_{n>m} e^{-E} E^n / n!` by the complementary
/// recurrence, summed smallest-first for stability.
pub fn poisson_upper_tail(energy: EnergyBudget, m: u64) -> f64 {
    let e = energy.value();
    if e == 0.0 {
        return 0.0;
    }
    // collect log terms from n = m+1 upward until they stop contributing
    let mut terms = Vec::new();
    let mut n = m + 1;
    let mut best = f64::NEG_INFINITY;
    loop {
        let t = poisson_pmf_log(e, n).expect("budget is validated").value();
        best = best.max(t);
        terms.push(t);
        if (n as f64) > e && t < best - 60.0 {
            break;
        }
        n += 1;
    }
    log_sum_exp(&terms).exp().min(1.0)
}

/// The staircase level at error budget `ε`: the largest `m ≥ 0` with
/// `poisson_cdf(E, m) ≤ ε` (boundary equality is admissible), or
/// [`LogLawResult::NoPositiveRate`] when `e^{-E} > ε`.
pub fn log_capacity(epsilon: f64, energy: EnergyBudget) -> Result<LogLawResult> {
    if !(0.0..1.0).contains(&epsilon) {
        return Err(Error::domain(format!(
            "error budget must lie in [0, 1), got {epsilon}"
        )));
    }
    let e = energy.value();
    let vacuum_mass = (-e).exp();
    if vacuum_mass > epsilon {
        return Ok(LogLawResult::NoPositiveRate { vacuum_mass });
    }
    // accumulate the cdf in log space, tracking the admissible level
    let mut log_terms = vec![-e];
    let mut cdf = vacuum_mass;
    let mut m = 0u64;
    loop {
        let next_term = poisson_pmf_log(e, m + 1).expect("budget is validated");
        if !next_term.is_zero() {
            log_terms.push(next_term.value());
        }
        let cdf_next = log_sum_exp(&log_terms).exp().min(1.0);
        if cdf_next > epsilon {
            return Ok(LogLawResult::Rate {
                m_star: m,
                cdf_at_m: cdf,
                cdf_at_m_plus_1: cdf_next,
            });
        }
        // Escape hatch for ε within float noise of 1: once the tail is below
        // resolution the staircase has effectively saturated.
        if cdf_next >= 1.0 - 1e-15 && next_term.value() < -40.0 && (m as f64) > e {
            return Ok(LogLawResult::Rate {
                m_star: m + 1,
                cdf_at_m: cdf_next,
                cdf_at_m_plus_1: 1.0,
            });
        }
        cdf = cdf_next;
        m += 1;
    }
}

const BISECTION_TOL: f64 = 1e-10;
const BISECTION_MAX_ITER: u32 = 200;

/// Smallest budget `E` with `poisson_cdf(E, m) ≤ ε`, by bisection (the
/// partial sum is strictly decreasing in `E` for fixed `m`).
///
/// For m = 0 this is exactly `-ln ε`. The returned budget is the admissible
/// end of the final bracket, so `poisson_cdf(result, m) ≤ ε` holds.
pub fn min_energy(m: u64, epsilon: f64) -> Result<EnergyBudget> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(Error::domain(format!(
            "target error must lie in (0, 1), got {epsilon}; no finite budget otherwise"
        )));
    }
    let cdf = |e: f64| poisson_cdf(EnergyBudget::new(e).expect("bracket stays >= 0"), m);
    // bracket: cdf(0) = 1 > ε; grow the upper end until admissible
    let mut lo = 0.0f64;
    let mut hi = (-epsilon.ln()).max(1.0) + m as f64;
    while cdf(hi) > epsilon {
        hi *= 2.0;
    }
    let mut iter = 0;
    while hi - lo > BISECTION_TOL && iter < BISECTION_MAX_ITER {
        let mid = 0.5 * (lo + hi);
        if cdf(mid) <= epsilon {
            hi = mid;
        } else {
            lo = mid;
        }
        iter += 1;
    }
    EnergyBudget::new(hi)
}
