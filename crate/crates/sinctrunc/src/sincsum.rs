//! Sinc power sums: the full-line sum Σ_{n∈ℤ} |sinc(x−n)|^p, the truncated
//! tail sum 𝔥_{p,N}(x) = Σ_{n∉𝔍_x} |sinc(x−n)|^p over the time-shifted window
//! 𝔍_x = {n : |x−n| ≤ N}, and the term functions ψ_k driving the extremum
//! analysis.
//!
//! 𝔥_{p,N} is 1-periodic, symmetric about x = 1/2 and vanishes at integers,
//! so every evaluation first folds x into the canonical strip [1/2, 1). There
//! the tail sum collapses to
//!
//! ```text
//! 𝔥_{p,N}(x) = (sin(πx)/π)^p · Σ_{k≥N+1} [ (k−x)^(−p) + (k+x−1)^(−p) ]
//! ```
//!
//! and at x = 1/2 it equals the sharp bound 2(2/π)^p λ(p;N) exactly.

use crate::error::{ensure_finite, Error, Result};
use crate::math;
use crate::series::{self, REL_TARGET};
use crate::specfun::{lambda_scaled, sinc_value, SumEvaluation};
use core::f64::consts::PI;

/// Parameters shared by the power-sum operations: exponent `p` (> 1),
/// truncation size `n` (≥ 1) and absolute tolerance `tol`.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PowerSumParams {
    p: f64,
    n: u32,
    tol: f64,
}

impl PowerSumParams {
    pub fn new(p: f64, n: u32, tol: f64) -> Result<Self> {
        ensure_finite("p", p)?;
        if p <= 1.0 {
            return Err(Error::Divergent {
                name: "p",
                value: p,
                min: 1.0,
            });
        }
        if n < 1 {
            return Err(Error::TooSmall {
                name: "N",
                value: n as i64,
                min: 1,
            });
        }
        if tol.is_nan() || tol <= 0.0 {
            return Err(Error::NonPositiveTolerance { value: tol });
        }
        Ok(Self { p, n, tol })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn tol(&self) -> f64 {
        self.tol
    }
}

/// Folds x onto the canonical strip: returns None when x is an integer
/// (where the tail sum is exactly zero), otherwise x′ ∈ [1/2, 1) with
/// 𝔥(x′) = 𝔥(x) by periodicity and symmetry.
fn fold(x: f64) -> Option<f64> {
    let frac = x - math::floor(x);
    if frac == 0.0 {
        return None;
    }
    Some(if frac < 0.5 { 1.0 - frac } else { frac })
}

/// Full-line sinc power sum Σ_{n∈ℤ} |sinc(x−n)|^p.
///
/// Exactly 1 at integer x (single surviving term) and identically 1 for
/// p = 2. `params.n` plays no role here: the window/tail split is chosen
/// internally and the tail reuses the 𝔥 machinery.
pub fn full_power_sum(params: &PowerSumParams, x: f64) -> Result<SumEvaluation> {
    ensure_finite("x", x)?;
    let p = params.p;
    let xf = match fold(x) {
        None => {
            return Ok(SumEvaluation {
                value: 1.0,
                tail_bound: 0.0,
                terms_used: 1,
            });
        }
        Some(xf) => xf,
    };
    const SPLIT: u32 = 8;
    let mut window = series::Kahan::default();
    let lo = math::ceil(xf - SPLIT as f64) as i64;
    let hi = math::floor(xf + SPLIT as f64) as i64;
    for n in lo..=hi {
        window.add(math::powf(math::abs(sinc_value(xf - n as f64)), p));
    }
    let tail = h_sum_with(p, SPLIT, xf, params.tol, REL_TARGET)?;
    Ok(SumEvaluation {
        value: window.value() + tail.value,
        tail_bound: tail.tail_bound,
        terms_used: (hi - lo + 1) as u64 + tail.terms_used,
    })
}

/// Truncated-tail sum 𝔥_{p,N}(x) = Σ_{n∉𝔍_x} |sinc(x−n)|^p.
pub fn h_sum(params: &PowerSumParams, x: f64) -> Result<SumEvaluation> {
    ensure_finite("x", x)?;
    h_sum_with(params.p, params.n, x, params.tol, REL_TARGET)
}

/// Engine entry with explicit absolute/relative targets (the grid scan in
/// [`crate::extrema`] runs with loose targets, the public API with tight).
pub(crate) fn h_sum_with(
    p: f64,
    n: u32,
    x: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<SumEvaluation> {
    let xf = match fold(x) {
        None => {
            return Ok(SumEvaluation {
                value: 0.0,
                tail_bound: 0.0,
                terms_used: 0,
            })
        }
        Some(xf) => xf,
    };
    let weight = math::powf(math::sin_pi_strip(xf) / PI, p);
    let (value, tail_bound, terms_used) =
        series::weighted_power_sum(p, &[xf, 1.0 - xf], (n + 1) as u64, weight, abs_tol, rel_tol)?;
    Ok(SumEvaluation {
        value,
        tail_bound,
        terms_used,
    })
}

fn check_term_domain(params: &PowerSumParams, k: i64, x: f64) -> Result<()> {
    ensure_finite("x", x)?;
    if k < (params.n as i64) + 1 {
        return Err(Error::TermIndex { k, n: params.n });
    }
    if !(0.5..=1.0).contains(&x) {
        return Err(Error::OutOfRange {
            name: "x",
            value: x,
            lo: 0.5,
            hi: 1.0,
        });
    }
    Ok(())
}

/// k-th term of the canonical-strip expansion of 𝔥_{p,N}:
/// ψ_k(x) = (sin(πx)/π)^p [ (k−x)^(−p) + (k+x−1)^(−p) ], k ≥ N+1, x ∈ [1/2, 1].
pub fn psi_term(params: &PowerSumParams, k: i64, x: f64) -> Result<f64> {
    check_term_domain(params, k, x)?;
    let p = params.p;
    let kf = k as f64;
    let weight = math::powf(math::sin_pi_strip(x) / PI, p);
    Ok(weight * (math::powf(kf - x, -p) + math::powf(kf + x - 1.0, -p)))
}

/// Closed-form derivative ψ_k′(x) on the canonical strip:
///
/// ```text
/// ψ_k′(x) = π^(−p) p sin^(p−1)(πx) [ π cos(πx) ((k−x)^(−p) + (k+x−1)^(−p))
///                                   + sin(πx) ((k−x)^(−p−1) − (k+x−1)^(−p−1)) ]
/// ```
///
/// Vanishes at x = 1/2 (cosine zero and antisymmetric bracket) and at x = 1.
pub fn psi_term_derivative(params: &PowerSumParams, k: i64, x: f64) -> Result<f64> {
    check_term_domain(params, k, x)?;
    let p = params.p;
    let kf = k as f64;
    let s = math::sin_pi_strip(x);
    let c = math::cos_pi_strip(x);
    let bracket = PI * c * (math::powf(kf - x, -p) + math::powf(kf + x - 1.0, -p))
        + s * (math::powf(kf - x, -p - 1.0) - math::powf(kf + x - 1.0, -p - 1.0));
    Ok(math::powf(PI, -p) * p * math::powf(s, p - 1.0) * bracket)
}

/// Scaled residual of the p*-defining equation,
/// g(p) = 4(p+1) λ(p+2;N)/λ(p;N) − π², computed through S(s) = (2N+1)^s λ(s;N)
/// so it stays finite for exponents where λ itself underflows.
/// sign(g) = sign(𝔥″_{p,N}(1/2)).
pub(crate) fn curvature_residual(p: f64, n: u32, rel_tol: f64) -> f64 {
    let (s_p, _) = lambda_scaled(p, n, rel_tol);
    let (s_p2, _) = lambda_scaled(p + 2.0, n, rel_tol);
    let w = 2.0 * n as f64 + 1.0;
    4.0 * (p + 1.0) / (w * w) * (s_p2 / s_p) - PI * PI
}

/// Second derivative of 𝔥_{p,N} at x = 1/2:
///
/// ```text
/// 𝔥″_{p,N}(1/2) = 2p (2/π)^p ( 4(p+1) λ(p+2;N) − π² λ(p;N) )
/// ```
///
/// evaluated in log space so only genuine underflow (far beyond the p range
/// of interest) flushes the magnitude to zero; the sign is always exact.
pub fn h_second_derivative_at_half(p: f64, n: u32) -> Result<f64> {
    ensure_finite("p", p)?;
    if p <= 1.0 {
        return Err(Error::Divergent {
            name: "p",
            value: p,
            min: 1.0,
        });
    }
    if n < 1 {
        return Err(Error::TooSmall {
            name: "N",
            value: n as i64,
            min: 1,
        });
    }
    let g = curvature_residual(p, n, 1e-13);
    if g == 0.0 {
        return Ok(0.0);
    }
    let (s_p, _) = lambda_scaled(p, n, 1e-13);
    let w = 2.0 * n as f64 + 1.0;
    // 2p (2/π)^p (2N+1)^(−p) S(p) g
    let log_mag = math::ln(2.0 * p)
        + p * (core::f64::consts::LN_2 - math::ln(PI) - math::ln(w))
        + math::ln(s_p)
        + math::ln(math::abs(g));
    let mag = math::exp(log_mag);
    Ok(if g < 0.0 { -mag } else { mag })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(p: f64, n: u32) -> PowerSumParams {
        PowerSumParams::new(p, n, 1e-12).unwrap()
    }

    #[test]
    fn rejects_divergent_exponent() {
        assert!(PowerSumParams::new(1.0, 1, 1e-10).is_err());
        assert!(PowerSumParams::new(0.5, 1, 1e-10).is_err());
        assert!(PowerSumParams::new(2.0, 0, 1e-10).is_err());
    }

    #[test]
    fn full_sum_is_one_for_p_two() {
        let r = full_power_sum(&params(2.0, 1), 0.37).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12, "got {}", r.value);
    }

    #[test]
    fn full_sum_at_integers_is_exactly_one() {
        for &x in &[0.0, 1.0, -4.0, 12.0] {
            let r = full_power_sum(&params(5.0, 1), x).unwrap();
            assert_eq!(r.value, 1.0);
            assert_eq!(r.tail_bound, 0.0);
        }
    }

    #[test]
    fn full_sum_reference_values() {
        // mpmath (sin(πx)/π)^p (ζ(p,x)+ζ(p,1−x)) references
        let cases = [
            (1.5, 0.5, 1.715_609_407_446_044_5),
            (3.0, 0.3, 0.697_678_595_545_449_26),
            (1.1, 0.37, 6.350_040_448_420_225_3),
        ];
        for &(p, x, want) in &cases {
            let r = full_power_sum(&params(p, 1), x).unwrap();
            assert!(
                (r.value - want).abs() < 1e-10 * want,
                "full({p},{x}) = {} want {want}",
                r.value
            );
            assert!(r.tail_bound <= 1e-12);
        }
    }

    #[test]
    fn h_vanishes_at_integers() {
        let r = h_sum(&params(3.0, 2), 1.0).unwrap();
        assert_eq!(r.value, 0.0);
        assert_eq!(r.tail_bound, 0.0);
    }

    #[test]
    fn h_reference_values() {
        let cases = [
            (2.0, 2, 0.5, 0.099_367_256_512_553_14),
            (5.0, 3, 0.7, 6.681_943_817_252_925e-6),
            (2.0, 2, 0.68, 0.071_365_570_698_904_06),
            (1.5, 1, 0.5, 0.699_711_232_498_189_03),
            (27.0, 2, 0.5, 1.360_355_738_350_344_8e-24),
        ];
        for &(p, n, x, want) in &cases {
            let r = h_sum(&PowerSumParams::new(p, n, 1e-15).unwrap(), x).unwrap();
            assert!(
                (r.value - want).abs() < 1e-12 * want,
                "h({p},{n},{x}) = {:.17e} want {want:.17e}",
                r.value
            );
        }
    }

    #[test]
    fn h_periodicity_and_symmetry() {
        let pr = params(2.7, 2);
        for i in 1..40 {
            let x = 0.5 + i as f64 / 83.0;
            let a = h_sum(&pr, x).unwrap().value;
            let b = h_sum(&pr, x + 1.0).unwrap().value;
            let c = h_sum(&pr, 1.0 - x).unwrap().value;
            assert!((a - b).abs() <= 1e-12 * a.max(1e-300));
            assert!((a - c).abs() <= 1e-12 * a.max(1e-300));
        }
    }

    #[test]
    fn psi_reference_values() {
        // sine factor vanishes at x = 1
        assert_eq!(psi_term(&params(2.0, 1), 2, 1.0).unwrap(), 0.0);
        // (sin(π/2)/π)² · 2 · (3/2)^(−2) = 8/(9π²)
        let v = psi_term(&params(2.0, 1), 2, 0.5).unwrap();
        assert!((v - 8.0 / (9.0 * PI * PI)).abs() < 1e-15);
        // brute-force sinc oracle: |sinc(0.75−3)|⁴ + |sinc(0.75+2)|⁴
        let v = psi_term(&params(4.0, 1), 3, 0.75).unwrap();
        let oracle =
            math::abs(sinc_value(0.75 - 3.0)).powi(4) + math::abs(sinc_value(0.75 + 2.0)).powi(4);
        assert!(v > 0.0);
        assert!((v - oracle).abs() < 1e-13 * oracle);
    }

    #[test]
    fn psi_rejects_bad_domain() {
        assert!(matches!(
            psi_term(&params(2.0, 3), 3, 0.7),
            Err(Error::TermIndex { .. })
        ));
        assert!(psi_term(&params(2.0, 1), 2, 0.3).is_err());
        assert!(psi_term(&params(2.0, 1), 2, 1.2).is_err());
    }

    #[test]
    fn psi_derivative_at_half_and_sign() {
        let d = psi_term_derivative(&params(2.0, 1), 2, 0.5).unwrap();
        assert!(d.abs() < 1e-15);
        let d = psi_term_derivative(&params(2.0, 1), 2, 0.9).unwrap();
        assert!(d < 0.0);
    }

    #[test]
    fn psi_derivative_matches_finite_differences() {
        let step = 1e-6;
        for &(p, n, k, x) in &[
            (2.0, 1u32, 2i64, 0.9),
            (30.0, 1, 2, 0.55),
            (4.5, 2, 5, 0.75),
            (12.0, 3, 4, 0.62),
        ] {
            let pr = params(p, n);
            let d = psi_term_derivative(&pr, k, x).unwrap();
            let fd = (psi_term(&pr, k, x + step).unwrap() - psi_term(&pr, k, x - step).unwrap())
                / (2.0 * step);
            assert!(
                (d - fd).abs() <= 1e-6 * d.abs().max(fd.abs()),
                "p={p} k={k} x={x}: closed {d} vs fd {fd}"
            );
        }
    }

    #[test]
    fn decomposition_window_plus_tail() {
        // full = Σ_{n∈𝔍_x} + 𝔥 for the declared window size
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut rng = move || {
            state = state.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = state;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            (z ^ (z >> 31)) as f64 / u64::MAX as f64
        };
        for _ in 0..50 {
            let p = 1.5 + 8.0 * rng();
            let n = 1 + (rng() * 5.0) as u32;
            let x = 4.0 * rng() - 2.0;
            let pr = PowerSumParams::new(p, n, 1e-13).unwrap();
            let full = full_power_sum(&pr, x).unwrap().value;
            let tail = h_sum(&pr, x).unwrap().value;
            let mut window = 0.0;
            let lo = math::ceil(x - n as f64) as i64;
            let hi = math::floor(x + n as f64) as i64;
            for m in lo..=hi {
                window += math::powf(math::abs(sinc_value(x - m as f64)), p);
            }
            assert!(
                (full - (window + tail)).abs() < 1e-10,
                "p={p} n={n} x={x}: {full} vs {}",
                window + tail
            );
        }
    }

    #[test]
    fn term_sum_consistency() {
        // 𝔥 = Σ_{k=N+1}^{K} ψ_k + tail, within the reported tail bound.
        let pr = PowerSumParams::new(2.5, 2, 1e-9).unwrap();
        let x = 0.73;
        let cutoff = 400_000i64;
        let h = h_sum(&pr, x).unwrap();
        let mut acc = 0.0;
        for k in 3..=cutoff {
            acc += psi_term(&pr, k, x).unwrap();
        }
        // remainder of the explicit sum: 2 w ∫_K (t−x)^(−p) dt
        let w = math::powf(math::sin_pi_strip(x) / PI, 2.5);
        let remaining = 2.0 * w * math::powf(cutoff as f64 - x, -1.5) / 1.5;
        assert!(acc <= h.value + h.tail_bound + 1e-15);
        assert!((h.value - acc).abs() <= remaining + h.tail_bound + 1e-15);
    }

    #[test]
    fn second_derivative_reference_values() {
        // mpmath: 2p(2/π)^p (4(p+1)λ(p+2;N) − π²λ(p;N))
        let v = h_second_derivative_at_half(2.0, 1).unwrap();
        assert!((v - (-3.453_667_259_33)).abs() < 1e-9 * 3.45);
        let v = h_second_derivative_at_half(30.0, 1).unwrap();
        assert!((v - 1.488_987_319_28e-18).abs() < 1e-8 * 1.49e-18);
        assert!(h_second_derivative_at_half(2.0, 5).unwrap() < 0.0);
        assert!(h_second_derivative_at_half(25.0, 1).unwrap() > 0.0);
    }
}
