//! Log-space special functions: `ln n!`, `ln C(n, k)`, and the log Poisson pmf.
//!
//! `log_binomial` is accurate to ~1e-15 relative up to n = 10^9. Differencing
//! ln-gamma values cannot reach that (ln Γ(10^9) has a ~4e-6 ULP), so the
//! binomial is summed directly as `Σ_j ln((n-k+j)/j)` over the short side of
//! the coefficient with compensated accumulation: all terms are positive, so
//! no cancellation occurs.

use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::numerics::logprob::LogProb;

const TABLE_LEN: usize = 1025;

// Cumulative Kahan sum of ln m, m = 1..=1024.
static LN_FACTORIAL_TABLE: LazyLock<[f64; TABLE_LEN]> = LazyLock::new(|| {
    let mut table = [0.0f64; TABLE_LEN];
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for (m, slot) in table.iter_mut().enumerate().skip(1) {
        let term = (m as f64).ln() - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
        *slot = sum;
    }
    table
});

/// `ln n!` — table lookup for n ≤ 1024, Stirling series beyond.
pub fn ln_factorial(n: u64) -> f64 {
    if (n as usize) < TABLE_LEN {
        return LN_FACTORIAL_TABLE[n as usize];
    }
    // Stirling with the first three correction terms; the truncation error at
    // n = 1025 is below 1e-24 absolute.
    let x = n as f64;
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    (x + 0.5) * x.ln() - x
        + 0.5 * (2.0 * std::f64::consts::PI).ln()
        + inv * (1.0 / 12.0 - inv2 * (1.0 / 360.0 - inv2 / 1260.0))
}

/// `ln C(n, k)` for nonnegative integers with `k ≤ n`.
///
/// Runs in O(min(k, n-k)).
pub fn log_binomial(n: u64, k: u64) -> Result<LogProb> {
    if k > n {
        return Err(Error::domain(format!(
            "log_binomial requires k <= n, got n = {n}, k = {k}"
        )));
    }
    let short = k.min(n - k);
    if short == 0 {
        return Ok(LogProb::ONE);
    }
    // C(n, short) = prod_{j=1..short} (n - short + j) / j; every log term is
    // positive, so a compensated sum keeps the relative error at ~1e-15.
    let base = n - short;
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for j in 1..=short {
        let term = (((base + j) as f64) / (j as f64)).ln() - comp;
        let next = sum + term;
        comp = (next - sum) - term;
        sum = next;
    }
    Ok(LogProb::new(sum))
}

/// `ln(e^{-E} E^n / n!)`, the log Poisson pmf at mean `energy`.
///
/// `energy = 0` gives `ln 1 = 0` at n = 0 and the zero weight otherwise.
pub fn poisson_pmf_log(energy: f64, n: u64) -> Result<LogProb> {
    if energy.is_nan() || energy < 0.0 || energy == f64::INFINITY {
        return Err(Error::domain(format!(
            "Poisson mean must be finite and nonnegative, got {energy}"
        )));
    }
    if energy == 0.0 {
        return Ok(if n == 0 { LogProb::ONE } else { LogProb::ZERO });
    }
    if n == 0 {
        return Ok(LogProb::new(-energy));
    }
    Ok(LogProb::new(
        -energy + (n as f64) * energy.ln() - ln_factorial(n),
    ))
}
