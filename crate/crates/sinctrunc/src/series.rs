//! Shared engine for series of inverse powers with certified tails.
//!
//! Every infinite sum in this crate reduces to Σ_{k≥k0} (k−c)^(−s) for one or
//! two centers c. Terms are summed explicitly (compensated) until the
//! remainder, estimated by the midpoint integral ∫_{m+1/2−c}^∞ t^(−s) dt, has
//! a rigorous error bound below the target. The midpoint-rule error on each
//! cell [k−1/2, k+1/2] is f″(ξ)/24, so the remainder estimate carries the
//! bound (s(s+1) t^(−s−2) + s t^(−s−1)) / 24 evaluated at t = m+1/2−c.
//! Stopping on the estimate rather than the raw integral bound is what makes
//! exponents close to 1 affordable: the raw bound decays like m^(1−s) while
//! the estimate error decays like m^(−s−1).

use crate::error::{Error, Result};
use crate::math;

/// Relative accuracy floor applied on top of any absolute tolerance.
pub(crate) const REL_TARGET: f64 = 1e-13;

const BLOCK: u64 = 32;
const MAX_TERMS: u64 = 40_000_000;

/// Compensated (Kahan) accumulator.
#[derive(Clone, Copy, Default)]
pub(crate) struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    pub fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum
    }
}

/// Midpoint-corrected tail of Σ_{k>m} (k−c)^(−s): returns (estimate, error bound).
pub(crate) fn power_tail(c: f64, s: f64, m: f64) -> (f64, f64) {
    let t = m + 0.5 - c;
    let est = math::powf(t, 1.0 - s) / (s - 1.0);
    let err = (s * (s + 1.0) * math::powf(t, -s - 2.0) + s * math::powf(t, -s - 1.0)) / 24.0;
    (est, err)
}

/// weight · Σ_{c ∈ centers} Σ_{k≥start} (k−c)^(−s), stopping once the tail
/// error bound satisfies both `abs_tol` (on the weighted value) and `rel_tol`.
///
/// Returns (value, tail_bound, explicit terms summed).
pub(crate) fn weighted_power_sum(
    s: f64,
    centers: &[f64],
    start: u64,
    weight: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<(f64, f64, u64)> {
    if weight == 0.0 {
        return Ok((0.0, 0.0, 0));
    }
    let mut acc = Kahan::default();
    let mut k = start;
    loop {
        for _ in 0..BLOCK {
            let kf = k as f64;
            for &c in centers {
                acc.add(math::powf(kf - c, -s));
            }
            k += 1;
        }
        let m = (k - 1) as f64;
        let mut est = 0.0;
        let mut err = 0.0;
        for &c in centers {
            let (e, b) = power_tail(c, s, m);
            est += e;
            err += b;
        }
        let value = weight * (acc.value() + est);
        let bound = weight.abs() * err;
        if bound <= abs_tol && bound <= rel_tol * value.abs() {
            return Ok((value, bound, (k - start) * centers.len() as u64));
        }
        if (k - start) * centers.len() as u64 > MAX_TERMS {
            return Err(Error::ToleranceNotReached {
                achieved: bound,
                requested: abs_tol,
            });
        }
    }
}

/// Tail Σ_{k≥start} k^(−s) of the Riemann/Hurwitz series, same midpoint scheme.
pub(crate) fn zeta_tail(s: f64, start: u64, rel_tol: f64) -> Result<f64> {
    let (v, _, _) = weighted_power_sum(s, &[0.0], start, 1.0, f64::INFINITY, rel_tol)?;
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kahan_compensates() {
        let mut acc = Kahan::default();
        for _ in 0..10_000_000u64 {
            acc.add(0.1);
        }
        assert!((acc.value() - 1e6).abs() < 1e-7);
    }

    #[test]
    fn basel_tail() {
        // Σ_{k≥1} k^-2 = π²/6
        let v = zeta_tail(2.0, 1, 1e-13).unwrap();
        assert!((v - core::f64::consts::PI.powi(2) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn slow_exponent_reaches_tight_tolerance() {
        // Σ_{k≥1} k^-1.5 = ζ(3/2) = 2.612375348685488...
        let (v, bound, terms) = weighted_power_sum(1.5, &[0.0], 1, 1.0, 1e-11, REL_TARGET).unwrap();
        assert!(bound <= 1e-11);
        assert!(
            (v - 2.612_375_348_685_488_3).abs() < 5e-12,
            "v = {v}, terms = {terms}"
        );
    }

    #[test]
    fn tail_bound_is_sound() {
        // Coarse and fine evaluations must agree within the coarse bound.
        let (v1, b1, _) = weighted_power_sum(2.0, &[0.25], 1, 1.0, 1e-6, 1e-6).unwrap();
        let (v2, _, _) = weighted_power_sum(2.0, &[0.25], 1, 1.0, 1e-14, REL_TARGET).unwrap();
        assert!((v1 - v2).abs() <= b1 + 1e-15);
    }
}
