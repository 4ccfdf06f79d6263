//! Minimum-error discrimination of the symmetric pure-state family
//! `|f_i⟩ = √p |0⟩ + √(1-p) |i⟩` and the resulting error floor for
//! coherent-state codes: any code whose words carry budget `E` has average
//! error at least `1 - ((1/M)√(1+(M-1)p) + (1-1/M)√(1-p))²` with `p = e^{-E}`.
//!
//! Two independent computational routes are kept deliberately separate: the
//! scalar closed form ([`covariant_success`]) and a numeric square-root
//! measurement built from the Gram spectrum ([`srm_success_oracle`]) or the
//! fully explicit state vectors ([`explicit_povm_check`]).

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::capacity::EnergyBudget;
use crate::error::{Error, Result};
use crate::numerics::HermitianMatrix;

/// Gram eigenvalues below this are treated as numerically coincident states.
const GRAM_RANK_TOL: f64 = 1e-12;

/// The symmetric family: `M` messages, pairwise overlap `p` (the vacuum
/// overlap `e^{-E}` in the coded setting).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricEnsemble {
    messages: u64,
    vacuum_overlap: f64,
}

impl SymmetricEnsemble {
    pub fn new(messages: u64, vacuum_overlap: f64) -> Result<Self> {
        if messages == 0 {
            return Err(Error::domain("message count must be >= 1".to_string()));
        }
        if !(0.0..=1.0).contains(&vacuum_overlap) {
            return Err(Error::domain(format!(
                "overlap must lie in [0, 1], got {vacuum_overlap}"
            )));
        }
        Ok(SymmetricEnsemble {
            messages,
            vacuum_overlap,
        })
    }

    /// The coded family at budget `E`: overlap `p = e^{-E}`.
    pub fn from_energy(energy: EnergyBudget, messages: u64) -> Result<Self> {
        Self::new(messages, energy.vacuum_overlap())
    }

    pub fn messages(&self) -> u64 {
        self.messages
    }

    pub fn vacuum_overlap(&self) -> f64 {
        self.vacuum_overlap
    }
}

/// Asymptotic regime of the error bound as the rate grows, classified by the
/// limit of `E - R`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RegimeTag {
    /// `E - R → -∞`: the rate dominates and the bound approaches `e^{-E}`.
    RateDominant,
    /// `E - R → A` finite: the bound is a fixed fraction of `e^{-E}`.
    Balanced(f64),
    /// `E - R → +∞`: energy dominates and the bound decays like `e^{-2E+R}`.
    EnergyDominant,
}

/// `1 - ((1/M)√(1+(M-1)p) + (1-1/M)√(1-p))²` at real-valued `m`, evaluated
/// cancellation-free.
///
/// The naive `1 - s²` underflows once the bound drops below f64 epsilon
/// (e.g. ~5e-23 at E = 30, R = 10), so the complement is rearranged into a
/// product of positive factors: with `u = 1/m`, `q = 1-p`, and
/// `w = √(1 + p(1-u)/u)`,
/// `1 - s = p²(1-u) / (u (w+1)(1+√q)(√q+w))` and `ε = (1-s)(1+s)`.
fn error_at_real_m(m: f64, p: f64) -> f64 {
    if m <= 1.0 || p <= 0.0 {
        return 0.0;
    }
    let u = 1.0 / m;
    let q = 1.0 - p;
    let rq = q.sqrt();
    let w = (1.0 + p * (1.0 - u) / u).sqrt();
    let one_minus_s = p * p * (1.0 - u) / (u * (w + 1.0) * (1.0 + rq) * (rq + w));
    (one_minus_s * (2.0 - one_minus_s)).clamp(0.0, 1.0 - u)
}

fn success_at_real_m(m: f64, p: f64) -> f64 {
    // the true value lies in [1/M, 1]; clamp float noise at the endpoints
    (1.0 - error_at_real_m(m, p)).clamp(1.0 / m, 1.0)
}

/// Optimal success probability of the covariant measurement:
/// `((1/M)√(1+(M-1)p) + (1-1/M)√(1-p))²`, always in `[1/M, 1]`.
pub fn covariant_success(ens: &SymmetricEnsemble) -> f64 {
    success_at_real_m(ens.messages as f64, ens.vacuum_overlap)
}

/// Error lower bound for any code of `M` messages under budget `E`:
/// `1 - covariant_success(M, e^{-E})`. Nondecreasing in `M`, approaching
/// `e^{-E}` from below; nonincreasing in `E`.
pub fn error_lower_bound(energy: EnergyBudget, messages: u64) -> f64 {
    error_at_real_m(messages as f64, energy.vacuum_overlap())
}

/// The same bound at a real-valued message count `M = e^R`, for comparing
/// against the rate-parametrized regime expansions.
pub fn error_bound_at_rate(energy: EnergyBudget, rate_nats: f64) -> Result<f64> {
    if !rate_nats.is_finite() || rate_nats < 0.0 {
        return Err(Error::domain(format!(
            "rate must be finite and >= 0 nats, got {rate_nats}"
        )));
    }
    Ok(error_at_real_m(rate_nats.exp(), energy.vacuum_overlap()))
}

/// Square-root-measurement success probability computed numerically from the
/// Gram matrix `G = (1-p) I + p J`: `((1/M) Σ_j √μ_j)²` over the Gram
/// eigenvalues `μ_j`.
///
/// The eigenvalues come from a general Hermitian eigensolve, not from the
/// two-level closed form, so this is an independent oracle for
/// [`covariant_success`]; the two agree to 1e-10 across the supported range
/// `2 ≤ M ≤ 256`.
pub fn srm_success_oracle(ens: &SymmetricEnsemble) -> Result<f64> {
    let m = ens.messages;
    if !(2..=256).contains(&m) {
        return Err(Error::domain(format!(
            "the oracle supports 2 <= M <= 256, got {m}"
        )));
    }
    let (m, p) = (m as usize, ens.vacuum_overlap);
    let gram = DMatrix::from_fn(m, m, |i, j| if i == j { 1.0 } else { p });
    let eig = HermitianMatrix::from_real(gram)?.eigh()?;
    // eigenvalues below the rank tolerance are solver noise around collapsed
    // directions (p → 1); taking their square roots would amplify it
    let root_sum: f64 = eig
        .values
        .iter()
        .map(|&mu| if mu > GRAM_RANK_TOL { mu.sqrt() } else { 0.0 })
        .sum();
    Ok((root_sum / m as f64).powi(2))
}

/// Outcome of building the square-root measurement from explicit vectors.
#[derive(Debug, Clone, Copy)]
pub struct PovmReport {
    /// Frobenius distance between `Σ_i Y_i` and the projector onto the span
    /// of the state family.
    pub completeness_residual: f64,
    /// `1/M Σ_i |⟨u_i|f_i⟩|²` for the measurement vectors `u_i`.
    pub success_probability: f64,
    /// Set when the Gram spectrum collapsed below the rank tolerance (p → 1):
    /// coincident directions are dropped and success degrades to `1/M`.
    pub conditioning_warning: bool,
}

/// Constructs `|f_i⟩ = √p |0⟩ + √(1-p) |i⟩` explicitly in dimension `M+1`,
/// builds the square-root measurement `Y_i = |u_i⟩⟨u_i|` with
/// `u_i = S^{-1/2} f_i` on the span (pseudo-inverse below the rank
/// tolerance), and verifies completeness on the span.
pub fn explicit_povm_check(ens: &SymmetricEnsemble) -> Result<PovmReport> {
    let m = ens.messages;
    if !(2..=64).contains(&m) {
        return Err(Error::domain(format!(
            "the explicit construction supports 2 <= M <= 64, got {m}"
        )));
    }
    let (m, p) = (m as usize, ens.vacuum_overlap);
    let dim = m + 1;
    let (rp, rq) = (p.sqrt(), (1.0 - p).sqrt());
    let states: Vec<DVector<Complex64>> = (1..=m)
        .map(|i| {
            let mut f = DVector::zeros(dim);
            f[0] = Complex64::new(rp, 0.0);
            f[i] = Complex64::new(rq, 0.0);
            f
        })
        .collect();

    // frame operator S = Σ f_i f_i† and its inverse square root on the span;
    // everything is assembled from v v† outer products, which are invariant
    // under the eigensolver's arbitrary phase choices
    let mut frame = DMatrix::<Complex64>::zeros(dim, dim);
    for f in &states {
        frame += f * f.adjoint();
    }
    let eig = HermitianMatrix::new(frame)?.eigh()?;
    let kept: Vec<usize> = (0..dim)
        .filter(|&i| eig.values[i] > GRAM_RANK_TOL)
        .collect();
    let conditioning_warning = kept.len() < m;

    let mut inv_root = DMatrix::<Complex64>::zeros(dim, dim);
    let mut span_projector = DMatrix::<Complex64>::zeros(dim, dim);
    for &i in &kept {
        let v = eig.vectors.column(i);
        let outer = v * v.adjoint();
        inv_root += outer.clone().unscale(eig.values[i].sqrt());
        span_projector += outer;
    }

    let mut povm_sum = DMatrix::<Complex64>::zeros(dim, dim);
    let mut success = 0.0;
    for f in &states {
        let u = &inv_root * f;
        povm_sum += &u * u.adjoint();
        success += u.dotc(f).norm_sqr();
    }
    success /= m as f64;
    let completeness_residual = (povm_sum - span_projector).norm();

    Ok(PovmReport {
        completeness_residual,
        success_probability: if conditioning_warning {
            1.0 / m as f64
        } else {
            success
        },
        conditioning_warning,
    })
}

/// Closed-form regime approximation of the error bound at `(E, R)` with the
/// message count read as real-valued `M = e^R`.
pub fn asymptotic_error(energy: EnergyBudget, rate_nats: f64, tag: RegimeTag) -> f64 {
    let e = energy.value();
    let p = energy.vacuum_overlap();
    match tag {
        // ε ≈ e^{-E} - 2√(1-e^{-E}) e^{-(E+R)/2} + (2-3e^{-E}) e^{-R};
        // the bound approaches the e^{-E} floor from below
        RegimeTag::RateDominant => {
            p - 2.0 * (1.0 - p).sqrt() * (-(e + rate_nats) / 2.0).exp()
                + (2.0 - 3.0 * p) * (-rate_nats).exp()
        }
        // coefficient 1 + 2e^A - 2√(e^A(1+e^A)), rearranged to the stable
        // form x/(1+√(1+x))² with x = e^{-A}; always in (0, 1)
        RegimeTag::Balanced(a) => {
            let x = (-a).exp();
            let root = (1.0 + x).sqrt();
            x / ((1.0 + root) * (1.0 + root)) * p
        }
        RegimeTag::EnergyDominant => 0.25 * (rate_nats - 2.0 * e).exp(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn budget(e: f64) -> EnergyBudget {
        EnergyBudget::new(e).unwrap()
    }

    fn ens(m: u64, p: f64) -> SymmetricEnsemble {
        SymmetricEnsemble::new(m, p).unwrap()
    }

    const P1: f64 = 0.36787944117144233; // e^{-1}

    #[test]
    fn closed_form_values() {
        assert_eq!(covariant_success(&ens(1, 0.4)), 1.0);
        assert!((covariant_success(&ens(5, 1.0)) - 0.2).abs() < 1e-15);
        // frozen from a 50-digit evaluation
        assert!((covariant_success(&ens(2, P1)) - 0.96493674751609689).abs() < 1e-14);
    }

    #[test]
    fn error_bound_values() {
        assert_eq!(error_lower_bound(budget(1.0), 1), 0.0);
        // E = 0: identical states, bound is blind guessing
        assert!((error_lower_bound(budget(0.0), 4) - 0.75).abs() < 1e-14);
        assert!((error_lower_bound(budget(1.0), 2) - 0.035063252483903111).abs() < 1e-14);
    }

    #[test]
    fn oracle_matches_closed_form_hand_case() {
        // M = 2: Gram eigenvalues are 1 ± p
        assert_eq!(srm_success_oracle(&ens(2, 0.0)).unwrap(), 1.0);
        let o = srm_success_oracle(&ens(2, P1)).unwrap();
        assert!((o - covariant_success(&ens(2, P1))).abs() < 1e-12);
        let o = srm_success_oracle(&ens(16, 0.3)).unwrap();
        assert!((o - covariant_success(&ens(16, 0.3))).abs() < 1e-10);
    }

    #[test]
    fn oracle_rejects_out_of_range() {
        assert!(srm_success_oracle(&ens(1, 0.5)).is_err());
        assert!(srm_success_oracle(&ens(257, 0.5)).is_err());
    }

    #[test]
    fn povm_check_values() {
        let r = explicit_povm_check(&ens(2, 0.0)).unwrap();
        assert!(r.completeness_residual <= 1e-12);
        assert!((r.success_probability - 1.0).abs() <= 1e-12);
        assert!(!r.conditioning_warning);

        let r = explicit_povm_check(&ens(4, 0.5)).unwrap();
        assert!((r.success_probability - covariant_success(&ens(4, 0.5))).abs() <= 1e-10);

        let r = explicit_povm_check(&ens(8, (-2.0f64).exp())).unwrap();
        assert!(r.completeness_residual <= 1e-10);
    }

    #[test]
    fn povm_check_degenerate_family() {
        // p = 1: all vectors coincide; blind guessing with a warning
        let r = explicit_povm_check(&ens(6, 1.0)).unwrap();
        assert!(r.conditioning_warning);
        assert!((r.success_probability - 1.0 / 6.0).abs() <= 1e-12);
        assert!(r.completeness_residual <= 1e-10);
    }

    #[test]
    fn balanced_coefficient_at_zero() {
        let coeff = asymptotic_error(budget(0.0), 0.0, RegimeTag::Balanced(0.0));
        // p = 1 at E = 0, so the result is the bare coefficient 3 - 2√2
        assert!((coeff - (3.0 - 2.0 * 2.0f64.sqrt())).abs() < 1e-15);
        let v = asymptotic_error(budget(1.0), 1.0, RegimeTag::Balanced(0.0));
        assert!((v - 0.063118133468549172).abs() < 1e-14);
    }

    #[test]
    fn energy_dominant_matches_exact_within_two_percent() {
        let exact = error_bound_at_rate(budget(30.0), 10.0).unwrap();
        // frozen from a 50-digit evaluation; the naive 1 - s² underflows here
        assert!((exact - 4.8216557021720917e-23).abs() < 1e-33);
        let approx = asymptotic_error(budget(30.0), 10.0, RegimeTag::EnergyDominant);
        assert!(((approx - exact) / exact).abs() < 0.02);
        assert!((approx - 0.25 * (-50.0f64).exp()).abs() < 1e-30);
    }

    #[test]
    fn rate_dominant_matches_exact_within_1e6_absolute() {
        let exact = error_bound_at_rate(budget(1.0), 20.0).unwrap();
        assert!((exact - 0.36783565675477787).abs() < 1e-12);
        let approx = asymptotic_error(budget(1.0), 20.0, RegimeTag::RateDominant);
        assert!((approx - exact).abs() < 1e-6);
    }

    #[test]
    fn bound_increases_to_vacuum_overlap_floor() {
        let e = budget(1.0);
        let floor = e.vacuum_overlap();
        let mut prev = 0.0;
        for exp in 1..=6u32 {
            let m = 10u64.pow(exp);
            let b = error_lower_bound(e, m);
            assert!(b > prev && b < floor, "M = {m}: {b}");
            prev = b;
        }
        // the residual gap decays like 2√(pq/M): ~9.6e-4 at M = 10^6
        assert!((floor - prev) < 1e-3);
    }

    #[test]
    fn balanced_coefficient_in_unit_interval() {
        // E = 0 makes p = 1, exposing the bare coefficient
        for a in [-30.0, -5.0, -1.0, 0.0, 1.0, 5.0, 30.0, 300.0] {
            let coeff = asymptotic_error(budget(0.0), 0.0, RegimeTag::Balanced(a));
            assert!(coeff > 0.0 && coeff < 1.0, "A = {a}: {coeff}");
        }
    }

    proptest! {
        #[test]
        fn success_in_range_and_oracle_agrees(m in 2u64..40, p in 0.0f64..=1.0) {
            let ens = SymmetricEnsemble::new(m, p).unwrap();
            let s = covariant_success(&ens);
            prop_assert!((1.0 / m as f64..=1.0).contains(&s));
            let o = srm_success_oracle(&ens).unwrap();
            prop_assert!((o - s).abs() <= 1e-10);
        }

        #[test]
        fn success_hits_endpoints_only_at_degenerate_overlap(m in 2u64..30) {
            let ens_mid = SymmetricEnsemble::new(m, 0.5).unwrap();
            let s = covariant_success(&ens_mid);
            prop_assert!(s < 1.0 - 1e-6 && s > 1.0 / m as f64 + 1e-6);
            let s1 = covariant_success(&SymmetricEnsemble::new(m, 0.0).unwrap());
            prop_assert!((s1 - 1.0).abs() < 1e-15);
            let s0 = covariant_success(&SymmetricEnsemble::new(m, 1.0).unwrap());
            prop_assert!((s0 - 1.0 / m as f64).abs() < 1e-15);
        }
    }
}
