//! Elementary special functions: the sinc kernel and the incomplete Lambda
//! function λ(s;a) = Σ_{n≥1} (2(n+a)−1)^(−s), with rigorously bounded tails.
//!
//! λ is the odd-denominator analogue of the Hurwitz zeta tail; it carries all
//! the truncation-error constants of this crate. Useful identities, exercised
//! by the test suite:
//!
//! - λ(2;0) = π²/8 (odd reciprocal squares),
//! - λ(s;a) − λ(s;a+1) = (2a+1)^(−s),
//! - λ(s;a) is strictly decreasing in both s (s > 1) and a.

use crate::error::{ensure_finite, Error, Result};
use crate::math;
use crate::series::{self, REL_TARGET};
use core::f64::consts::PI;

/// Result of a truncated series evaluation: the computed value, a rigorous
/// bound on the discarded remainder, and the number of explicit terms.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SumEvaluation {
    pub value: f64,
    pub tail_bound: f64,
    pub terms_used: u64,
}

/// Arguments for [`incomplete_lambda`]: exponent `s`, shift `a`, absolute
/// tolerance `tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct LambdaQuery {
    s: f64,
    a: f64,
    tol: f64,
}

impl LambdaQuery {
    /// Requires s > 1 (the series diverges otherwise), a ≥ 0 and tol > 0.
    pub fn new(s: f64, a: f64, tol: f64) -> Result<Self> {
        ensure_finite("s", s)?;
        ensure_finite("a", a)?;
        if s <= 1.0 {
            return Err(Error::Divergent {
                name: "s",
                value: s,
                min: 1.0,
            });
        }
        if a < 0.0 {
            return Err(Error::OutOfRange {
                name: "a",
                value: a,
                lo: 0.0,
                hi: f64::INFINITY,
            });
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::NonPositiveTolerance { value: tol });
        }
        Ok(Self { s, a, tol })
    }

    pub fn s(&self) -> f64 {
        self.s
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// sinc(x) = sin(πx)/(πx) for x ≠ 0, and 1 at x = 0.
///
/// Exactly zero at nonzero integers, exactly one at zero; |sinc| ≤ 1.
/// Rejects non-finite input.
pub fn sinc(x: f64) -> Result<f64> {
    ensure_finite("x", x)?;
    Ok(sinc_value(x))
}

/// Infallible kernel used by the inner loops; same values as [`sinc`].
#[inline]
pub(crate) fn sinc_value(x: f64) -> f64 {
    // Taylor switch: below 1e-4 the direct quotient loses digits to 0/0
    // cancellation; 1 - (πx)²/6 + (πx)⁴/120 is exact to f64 there.
    let ax = math::abs(x);
    if ax < 1e-4 {
        let t = PI * x;
        let t2 = t * t;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0;
    }
    if x == math::round(x) {
        return 0.0;
    }
    math::sin(PI * x) / (PI * x)
}

/// Incomplete Lambda function λ(s;a) = Σ_{n≥1} (2(n+a)−1)^(−s).
///
/// Terms are summed explicitly until the midpoint-integral remainder
/// estimate carries an error bound below `q.tol`; the estimate is added to
/// the returned value and the bound is reported as `tail_bound`.
pub fn incomplete_lambda(q: &LambdaQuery) -> Result<SumEvaluation> {
    lambda_with(q.s, q.a, q.tol, REL_TARGET)
}

pub(crate) fn lambda_with(s: f64, a: f64, abs_tol: f64, rel_tol: f64) -> Result<SumEvaluation> {
    // (2(n+a)-1)^-s = 2^-s (n - (1/2 - a))^-s
    let weight = math::powf(2.0, -s);
    let (value, tail_bound, terms_used) =
        series::weighted_power_sum(s, &[0.5 - a], 1, weight, abs_tol, rel_tol)?;
    Ok(SumEvaluation {
        value,
        tail_bound,
        terms_used,
    })
}

/// λ(p;N) to near machine relative accuracy; the form used by the bound
/// formulas in [`crate::bounds`].
pub(crate) fn lambda_tight(p: f64, n: u32) -> Result<f64> {
    Ok(lambda_with(p, n as f64, f64::INFINITY, REL_TARGET)?.value)
}

/// Scaled variant for extreme exponents: S(s) = (2N+1)^s λ(s;N), together
/// with D(s) = Σ ln(r_n) r_n^(−s) where r_n = (2n+2N−1)/(2N+1).
///
/// S has leading term 1, so ratios S(p+2)/S(p) stay well-conditioned where
/// λ itself underflows (p beyond a few hundred). D is −dS/ds, used for the
/// Newton polish of the p* solver.
pub(crate) fn lambda_scaled(s: f64, n: u32, rel_tol: f64) -> (f64, f64) {
    let w = 2.0 / (2.0 * n as f64 + 1.0);
    let mut sum = series::Kahan::default();
    let mut dsum = series::Kahan::default();
    let mut i = 0u64;
    loop {
        for _ in 0..16 {
            let lr = math::ln_1p(w * i as f64);
            let t = math::exp(-s * lr);
            sum.add(t);
            dsum.add(lr * t);
            i += 1;
        }
        // Midpoint tails in the index variable: f(i) = r(i)^-s, r = 1 + w i.
        let m = i as f64 - 0.5;
        let r = 1.0 + w * m;
        let lr = math::ln(r);
        let est = math::exp((1.0 - s) * lr) / (w * (s - 1.0));
        let err = (s * (s + 1.0) * w * w * math::exp((-s - 2.0) * lr)
            + s * w * math::exp((-s - 1.0) * lr))
            / 24.0;
        if err <= rel_tol * (sum.value() + est) {
            let d_est =
                math::exp((1.0 - s) * lr) * ((s - 1.0) * lr + 1.0) / (w * (s - 1.0) * (s - 1.0));
            return (sum.value() + est, dsum.value() + d_est);
        }
    }
}
