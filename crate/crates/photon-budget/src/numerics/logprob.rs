//! Natural-log weights with overflow-free accumulation.
//!
//! Every probability-like quantity in this crate is carried as a natural
//! logarithm and converted to linear scale only at API boundaries. Block
//! eigenvalues divide by binomials like C(N+n-1, N-1) with N up to 10^6,
//! which is far outside linear f64 range.

use crate::error::{Error, Result};

/// A weight stored as its natural logarithm.
///
/// The stored value is finite or `-inf` (the zero weight); `+inf` and NaN are
/// rejected so `exp(value)` is always finite.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct LogProb(f64);

impl LogProb {
    /// The zero weight, `ln 0 = -inf`.
    pub const ZERO: LogProb = LogProb(f64::NEG_INFINITY);
    /// The unit weight, `ln 1 = 0`.
    pub const ONE: LogProb = LogProb(0.0);

    /// Wraps a natural-log value. `-inf` is allowed (zero weight).
    ///
    /// # Panics
    /// Panics on NaN or `+inf`, which have no exp-representable weight.
    pub fn new(ln_value: f64) -> Self {
        assert!(
            !ln_value.is_nan() && ln_value != f64::INFINITY,
            "LogProb requires a finite or -inf log value, got {ln_value}"
        );
        LogProb(ln_value)
    }

    /// Converts a linear-scale weight (must be ≥ 0) into log space.
    pub fn from_linear(value: f64) -> Result<Self> {
        if value.is_nan() || value < 0.0 || value == f64::INFINITY {
            return Err(Error::domain(format!(
                "linear weight must be finite and nonnegative, got {value}"
            )));
        }
        Ok(LogProb(value.ln()))
    }

    /// The stored natural-log value.
    pub fn value(self) -> f64 {
        self.0
    }

    /// The linear-scale weight `exp(value)`.
    pub fn to_linear(self) -> f64 {
        self.0.exp()
    }

    /// True for the zero weight.
    pub fn is_zero(self) -> bool {
        self.0 == f64::NEG_INFINITY
    }

    /// Log-space addition of weights: `ln(e^a + e^b)` with max factoring.
    pub fn ln_add(self, other: LogProb) -> LogProb {
        let (a, b) = (self.0, other.0);
        if a == f64::NEG_INFINITY {
            return other;
        }
        if b == f64::NEG_INFINITY {
            return self;
        }
        let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
        LogProb(hi + (lo - hi).exp().ln_1p())
    }
}

/// Log-space product of weights.
impl std::ops::Add for LogProb {
    type Output = LogProb;

    fn add(self, rhs: LogProb) -> LogProb {
        // -inf + finite = -inf is fine; -inf + -inf = -inf too.
        LogProb(self.0 + rhs.0)
    }
}

/// `ln Σ e^{x_i}` with max factoring; an empty slice gives `-inf`.
///
/// A single finite term is returned bit-exactly.
pub fn log_sum_exp(terms: &[f64]) -> f64 {
    let max = terms.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return f64::NEG_INFINITY;
    }
    let mut sum = 0.0;
    let mut extras = 0usize;
    for &t in terms {
        if t == max && extras == 0 {
            // the factored-out term contributes exactly 1
            extras = 1;
        } else {
            sum += (t - max).exp();
        }
    }
    if sum == 0.0 {
        max
    } else {
        max + sum.ln_1p()
    }
}
