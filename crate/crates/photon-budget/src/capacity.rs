//! Closed-form capacities under a mean-photon-number budget for a fixed
//! period, their pulse-count scalings and expansions, and the classical
//! Gaussian channel contrast.
//!
//! The central contrast: splitting a fixed budget `E` over `K` coherent
//! pulses gives `K·C(E/K) ≈ E ln K + E - E ln E`, unbounded in `K`, while a
//! Gaussian channel with noise variance `V` saturates at `E/(2V)`.

use crate::error::{Error, Result};

/// Mean total photon number available to a signal — the budgeted resource.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EnergyBudget(f64);

impl EnergyBudget {
    /// A finite, nonnegative mean photon number.
    pub fn new(mean_photons: f64) -> Result<Self> {
        if !mean_photons.is_finite() || mean_photons < 0.0 {
            return Err(Error::domain(format!(
                "energy budget must be finite and >= 0, got {mean_photons}"
            )));
        }
        Ok(EnergyBudget(mean_photons))
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// The vacuum overlap `e^{-E}` of a coherent state carrying this budget.
    pub fn vacuum_overlap(self) -> f64 {
        (-self.0).exp()
    }
}

impl std::fmt::Display for EnergyBudget {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A fixed signalling period: budget `E`, pulse count `K`, and the noise
/// variance `V` used only by the Gaussian comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PeriodConfig {
    pub energy: EnergyBudget,
    pub pulses: u64,
    pub noise_variance: f64,
}

impl PeriodConfig {
    pub fn new(energy: EnergyBudget, pulses: u64, noise_variance: f64) -> Result<Self> {
        if pulses == 0 {
            return Err(Error::domain("pulse count must be >= 1".to_string()));
        }
        if !noise_variance.is_finite() || noise_variance <= 0.0 {
            return Err(Error::domain(format!(
                "noise variance must be finite and > 0, got {noise_variance}"
            )));
        }
        Ok(PeriodConfig {
            energy,
            pulses,
            noise_variance,
        })
    }
}

/// Capacity of the noiseless coherent-state channel at mean photon number
/// `E`, in nats per pulse: `(E+1) ln(E+1) - E ln E`, continuously 0 at E = 0.
pub fn holevo_capacity(energy: EnergyBudget) -> f64 {
    let e = energy.value();
    if e == 0.0 {
        return 0.0;
    }
    (e + 1.0) * e.ln_1p() - e * e.ln()
}

/// Nats per period when the budget is split evenly over `K` pulses:
/// `K · C(E/K)`. Strictly increasing and unbounded in `K` for E > 0.
pub fn period_capacity(cfg: &PeriodConfig) -> f64 {
    let e = cfg.energy.value();
    let k = cfg.pulses as f64;
    if e == 0.0 {
        return 0.0;
    }
    let x = e / k;
    k * ((x + 1.0) * x.ln_1p() - x * x.ln())
}

/// Large-`K` expansion of [`period_capacity`]:
/// `E ln K + E - E ln E + E²/(2K)`, accurate to O(1/K²).
///
/// Undefined at E = 0 (the `E ln E` term), where the exact value is 0.
pub fn period_capacity_expansion(cfg: &PeriodConfig) -> Result<f64> {
    let e = cfg.energy.value();
    if e == 0.0 {
        return Err(Error::domain(
            "the expansion is undefined at E = 0; the exact capacity is 0".to_string(),
        ));
    }
    let k = cfg.pulses as f64;
    Ok(e * k.ln() + e - e * e.ln() + e * e / (2.0 * k))
}

/// Classical Gaussian channel capacity `½ ln(1 + E/V)` in nats per signal.
pub fn gaussian_capacity(intensity: f64, variance: f64) -> Result<f64> {
    if !intensity.is_finite() || intensity < 0.0 {
        return Err(Error::domain(format!(
            "intensity must be finite and >= 0, got {intensity}"
        )));
    }
    if !variance.is_finite() || variance <= 0.0 {
        return Err(Error::domain(format!(
            "variance must be finite and > 0, got {variance}"
        )));
    }
    Ok(0.5 * (intensity / variance).ln_1p())
}

/// Gaussian nats per period with the budget split over `K` signals:
/// `(K/2) ln(1 + E/(KV))`. Increasing in `K` but bounded by `E/(2V)`.
pub fn gaussian_period_capacity(cfg: &PeriodConfig) -> f64 {
    let e = cfg.energy.value();
    let k = cfg.pulses as f64;
    0.5 * k * (e / (k * cfg.noise_variance)).ln_1p()
}
