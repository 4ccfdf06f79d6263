//! Exact eigenvalue structure of unitarily invariant coherent-state mixtures
//! over `N` modes.
//!
//! A radially distributed input ensemble averages to a state that is block
//! diagonal over total photon number `n`: each block carries trace weight
//! `w_n = Σ_k q_k e^{-r_k²} r_k^{2n}/n!` spread evenly over the
//! `C(N+n-1, N-1)`-dimensional symmetric subspace, so every eigenvalue is the
//! scalar `λ_n = w_n / C(N+n-1, N-1)`. All spectral quantities reduce to
//! exact scalar sums — no large linear algebra is ever needed.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::capacity::EnergyBudget;
use crate::error::{Error, Result};
use crate::loglaw::{poisson_cdf, poisson_upper_tail};
use crate::numerics::{log_binomial, log_sum_exp, HermitianMatrix, LogProb};

/// One atom of a radial input distribution: amplitude radius and weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialAtom {
    pub radius: f64,
    pub weight: f64,
}

/// A discrete radial distribution on `[0, √E]` defining a unitarily
/// invariant input ensemble under budget `E`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialMixture {
    atoms: Vec<RadialAtom>,
    budget: EnergyBudget,
}

impl RadialMixture {
    pub fn new(atoms: Vec<RadialAtom>, budget: EnergyBudget) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::domain("mixture needs at least one atom".to_string()));
        }
        let limit = budget.value().sqrt() + 1e-12;
        for a in &atoms {
            if !a.radius.is_finite() || a.radius < 0.0 || a.radius > limit {
                return Err(Error::domain(format!(
                    "atom radius {} outside [0, sqrt(E) = {}]",
                    a.radius,
                    budget.value().sqrt()
                )));
            }
            if !a.weight.is_finite() || a.weight <= 0.0 {
                return Err(Error::domain(format!(
                    "atom weight must be > 0, got {}",
                    a.weight
                )));
            }
        }
        let total: f64 = atoms.iter().map(|a| a.weight).sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::domain(format!(
                "atom weights must sum to 1 within 1e-12, got {total}"
            )));
        }
        Ok(RadialMixture { atoms, budget })
    }

    /// The delta distribution at the full budget radius `√E`, whose block
    /// weights are exactly the Poisson(E) probabilities.
    pub fn delta(budget: EnergyBudget) -> Self {
        RadialMixture {
            atoms: vec![RadialAtom {
                radius: budget.value().sqrt(),
                weight: 1.0,
            }],
            budget,
        }
    }

    pub fn atoms(&self) -> &[RadialAtom] {
        &self.atoms
    }

    pub fn budget(&self) -> EnergyBudget {
        self.budget
    }

    /// Largest per-atom intensity `max_k r_k²`; the block weights are
    /// dominated by a Poisson at this mean.
    pub fn max_intensity(&self) -> f64 {
        self.atoms
            .iter()
            .map(|a| a.radius * a.radius)
            .fold(0.0, f64::max)
    }
}

/// One photon-number block of the averaged state.
#[derive(Debug, Clone, Copy)]
pub struct SpectralBlock {
    /// Total photon number of the block.
    pub n: u64,
    /// Trace weight `w_n` of the block.
    pub weight: f64,
    /// `ln λ_n`, the log of the (repeated) eigenvalue in this block.
    pub log_eigenvalue: f64,
    /// `ln C(N+n-1, N-1)`, the log block dimension.
    pub log_multiplicity: f64,
}

/// Default truncation tolerance for block sums.
pub const DEFAULT_TOL: f64 = 1e-12;

fn block_weight_log(n: u64, mix: &RadialMixture) -> LogProb {
    let terms: Vec<f64> = mix
        .atoms
        .iter()
        .filter_map(|a| {
            let x = a.radius * a.radius;
            let pmf = crate::numerics::poisson_pmf_log(x, n).expect("radius validated");
            if pmf.is_zero() {
                None
            } else {
                Some(a.weight.ln() + pmf.value())
            }
        })
        .collect();
    LogProb::new(log_sum_exp(&terms))
}

/// Block trace weight `w_n = Σ_k q_k e^{-r_k²} r_k^{2n} / n!`; the weights
/// over all `n` form a probability distribution.
pub fn block_weight(n: u64, mix: &RadialMixture) -> f64 {
    block_weight_log(n, mix).to_linear()
}

/// Log block eigenvalue `ln λ_n = ln w_n - ln C(N+n-1, N-1)`.
///
/// Returns the `-inf` sentinel when the block weight vanishes.
pub fn block_log_eigenvalue(n: u64, modes: u64, mix: &RadialMixture) -> Result<LogProb> {
    if modes == 0 {
        return Err(Error::domain("mode count must be >= 1".to_string()));
    }
    let w = block_weight_log(n, mix);
    if w.is_zero() {
        return Ok(LogProb::ZERO);
    }
    let mult = log_binomial(modes + n - 1, n)?;
    Ok(LogProb::new(w.value() - mult.value()))
}

/// Smallest truncation index whose residual Poisson tail at the dominating
/// intensity falls below `tol`.
pub fn truncation_index(mix: &RadialMixture, tol: f64) -> u64 {
    let e_max = EnergyBudget::new(mix.max_intensity()).expect("intensity is valid");
    let mut n = 0u64;
    while poisson_upper_tail(e_max, n) >= tol {
        n += 1;
    }
    n
}

/// The truncated block table for `N` modes: weights, log eigenvalues, and
/// log multiplicities up to the `tol`-truncation index.
pub fn blocks(modes: u64, mix: &RadialMixture, tol: f64) -> Result<Vec<SpectralBlock>> {
    let n_max = truncation_index(mix, tol);
    (0..=n_max)
        .map(|n| {
            let log_multiplicity = log_binomial(modes + n - 1, n)?.value();
            let w = block_weight_log(n, mix);
            Ok(SpectralBlock {
                n,
                weight: w.to_linear(),
                log_eigenvalue: if w.is_zero() {
                    f64::NEG_INFINITY
                } else {
                    w.value() - log_multiplicity
                },
                log_multiplicity,
            })
        })
        .collect()
}

/// Spectral CDF on the `log N` scale: the total weight of blocks whose
/// eigenvalue satisfies `-ln λ_n / ln N ≤ c`, truncated once the residual
/// tail is below `tol`.
pub fn spectral_cdf(c: f64, modes: u64, mix: &RadialMixture, tol: f64) -> Result<f64> {
    if modes < 2 {
        return Err(Error::domain(format!(
            "the log N scale needs N >= 2, got {modes}"
        )));
    }
    if !(tol > 0.0) {
        return Err(Error::domain(format!("tolerance must be > 0, got {tol}")));
    }
    let ln_n = (modes as f64).ln();
    let n_max = truncation_index(mix, tol);
    let mut total = 0.0;
    for n in 0..=n_max {
        let lam = block_log_eigenvalue(n, modes, mix)?;
        if lam.is_zero() {
            continue;
        }
        if -lam.value() / ln_n <= c {
            total += block_weight(n, mix);
        }
    }
    Ok(total.min(1.0))
}

/// Two sides of a spectral inequality, with the verdict.
#[derive(Debug, Clone, Copy)]
pub struct BoundReport {
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Checks the truncation upper bound: the spectral CDF at non-integer `c`
/// never exceeds the cumulative block weight up to `m = ⌊c⌋`.
///
/// The bound is guaranteed for budgets `E ≤ 1` at every `N ≥ 2`; for larger
/// budgets it is an asymptotic statement and the report may honestly say
/// `holds = false` at small `N`.
pub fn upper_bound_check(c: f64, modes: u64, mix: &RadialMixture) -> Result<BoundReport> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::domain(format!("threshold must be > 0, got {c}")));
    }
    if c.fract() == 0.0 {
        return Err(Error::domain(format!(
            "threshold must be non-integer (the bound fails at integer thresholds), got {c}"
        )));
    }
    let m = c.floor() as u64;
    let lhs = spectral_cdf(c, modes, mix, DEFAULT_TOL)?;
    let rhs: f64 = (0..=m).map(|n| block_weight(n, mix)).sum();
    Ok(BoundReport {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-12,
    })
}

/// Gap between the spectral CDF of the delta mixture and the Poisson partial
/// sum it converges to, for each mode count in `modes_list`.
pub fn limit_convergence(
    c: f64,
    energy: EnergyBudget,
    modes_list: &[u64],
) -> Result<Vec<f64>> {
    if !c.is_finite() || c <= 0.0 || c.fract() == 0.0 {
        return Err(Error::domain(format!(
            "threshold must be positive and non-integer, got {c}"
        )));
    }
    let mix = RadialMixture::delta(energy);
    let target = poisson_cdf(energy, c.floor() as u64);
    modes_list
        .iter()
        .map(|&n| Ok((spectral_cdf(c, n, &mix, DEFAULT_TOL)? - target).abs()))
        .collect()
}

/// Ky Fan partial-sum check: mixing a state with any unitary conjugate of
/// itself can only flatten the spectrum, so for every `k` the sum of the `k`
/// largest eigenvalues of `tρ + (1-t)UρU†` is at most that of `ρ`.
pub fn ky_fan_check(
    rho: &HermitianMatrix,
    unitary: &DMatrix<Complex64>,
    t: f64,
    k: usize,
) -> Result<BoundReport> {
    rho.validate_density(1e-10)
        .map_err(|e| Error::NotDensity(e.to_string()))?;
    let dim = rho.dim();
    if unitary.nrows() != dim || unitary.ncols() != dim {
        return Err(Error::domain("unitary dimension mismatch".to_string()));
    }
    let gram = unitary.adjoint() * unitary;
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let defect = (gram - id).camax();
    if defect > 1e-12 {
        return Err(Error::domain(format!(
            "matrix is not unitary: defect {defect:.3e}"
        )));
    }
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::domain(format!("t must lie in [0, 1], got {t}")));
    }
    if k == 0 || k > dim {
        return Err(Error::domain(format!(
            "k must lie in 1..={dim}, got {k}"
        )));
    }
    let conjugated = unitary * rho.matrix() * unitary.adjoint();
    let mixed =
        HermitianMatrix::new(rho.matrix().scale(t) + conjugated.scale(1.0 - t))?;
    let lhs = mixed.eigh()?.top_sum(k);
    let rhs = rho.eigh()?.top_sum(k);
    Ok(BoundReport {
        lhs,
        rhs,
        holds: lhs <= rhs + 1e-10,
    })
}
