//! Extremum analysis of the tail sinc power sum 𝔥_{p,N} at x = 1/2.
//!
//! For each N there is a unique exponent p* where the point x = 1/2 switches
//! from local maximum (p < p*) to local minimum (p > p*); p* is the root of
//!
//! ```text
//! 4(p+1) λ(p+2;N) − π² λ(p;N) = 0
//! ```
//!
//! Closed-form lower/upper brackets for p* come with the analysis, as does
//! the per-term picture: ψ_k can only have an interior extremum on
//! (1/2, A_k), where A_k solves cot(πx) = −1/(π(k−x)), and each admissible
//! abscissa corresponds to exactly one exponent p̃.

use crate::error::{ensure_finite, Error, Result};
use crate::math;
use crate::sincsum::{curvature_residual, h_second_derivative_at_half, h_sum_with};
use crate::specfun::lambda_scaled;
use core::f64::consts::PI;

/// Root of the p*-defining equation together with its bracket and the raw
/// residual at the root.
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PstarResult {
    pub value: f64,
    pub bracket: (f64, f64),
    pub residual: f64,
}

/// Nature of a critical point of 𝔥_{p,N}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum ExtremumKind {
    LocalMax,
    LocalMin,
    Degenerate,
}

/// A classified critical point (or scan maximum) of 𝔥_{p,N} on [1/2, 1).
#[derive(Debug, Clone, Copy, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct ExtremumReport {
    pub abscissa: f64,
    pub value: f64,
    pub kind: ExtremumKind,
    pub second_derivative: f64,
}

fn check_n(n: u32) -> Result<()> {
    if n < 1 {
        return Err(Error::TooSmall {
            name: "N",
            value: n as i64,
            min: 1,
        });
    }
    Ok(())
}

/// Closed-form lower bound for p*:
/// (1/8)(π²(2N+1)² − 12 + √((π²(2N+1)²−12)² − 128)).
pub fn pstar_lower_bound(n: u32) -> Result<f64> {
    check_n(n)?;
    let y = PI * PI * (2.0 * n as f64 + 1.0) * (2.0 * n as f64 + 1.0) - 12.0;
    Ok((y + math::sqrt(y * y - 128.0)) / 8.0)
}

/// Closed-form upper bound for p*:
/// (1/4)√(72π²(N+1)²(2π²(N+1)²−2−π²) + 4 + 36π² + 9π⁴) + 3π²(N+1)² − (3/4)(2+π²).
pub fn pstar_upper_bound(n: u32) -> Result<f64> {
    check_n(n)?;
    let m = (n as f64 + 1.0) * (n as f64 + 1.0);
    let pi2 = PI * PI;
    let radicand =
        72.0 * pi2 * m * (2.0 * pi2 * m - 2.0 - pi2) + 4.0 + 36.0 * pi2 + 9.0 * pi2 * pi2;
    Ok(math::sqrt(radicand) / 4.0 + 3.0 * pi2 * m - 0.75 * (2.0 + pi2))
}

/// Exponent limit π²(N+1/2)²−1 below which the sharp tail bound holds
/// (and which p* approaches from above).
pub fn sharpness_threshold(n: u32) -> f64 {
    let a = n as f64 + 0.5;
    PI * PI * a * a - 1.0
}

/// Solves 4(p+1)λ(p+2;N) = π²λ(p;N) for p* inside the closed-form bracket.
///
/// Bisection (≤ 200 iterations) on the scaled residual
/// g(p) = 4(p+1)λ(p+2;N)/λ(p;N) − π², which stays O(1) where both λ values
/// underflow, followed by one Newton polish with the term-wise derivative.
/// `tol` is the relative abscissa tolerance.
pub fn solve_pstar(n: u32, tol: f64) -> Result<PstarResult> {
    check_n(n)?;
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NonPositiveTolerance { value: tol });
    }
    let lo0 = pstar_lower_bound(n)?;
    let hi0 = pstar_upper_bound(n)?;
    let g = |p: f64| curvature_residual(p, n, 1e-13);
    let (mut lo, mut hi) = (lo0, hi0);
    let (g_lo, g_hi) = (g(lo), g(hi));
    if !(g_lo < 0.0 && g_hi > 0.0) {
        return Err(Error::BracketFailure {
            lo,
            hi,
            f_lo: g_lo,
            f_hi: g_hi,
        });
    }
    let mut mid = 0.5 * (lo + hi);
    for _ in 0..200 {
        mid = 0.5 * (lo + hi);
        if hi - lo <= tol * math::abs(mid) || hi - lo <= f64::EPSILON * math::abs(mid) * 4.0 {
            break;
        }
        if g(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // Newton polish: g'(p) from S' = −D term-wise.
    let w = 2.0 * n as f64 + 1.0;
    let (s_p, d_p) = lambda_scaled(mid, n, 1e-13);
    let (s_p2, d_p2) = lambda_scaled(mid + 2.0, n, 1e-13);
    let ratio = s_p2 / s_p;
    let g_mid = 4.0 * (mid + 1.0) / (w * w) * ratio - PI * PI;
    let ratio_prime = (-d_p2 * s_p + s_p2 * d_p) / (s_p * s_p);
    let g_prime = 4.0 / (w * w) * (ratio + (mid + 1.0) * ratio_prime);
    let polished = mid - g_mid / g_prime;
    let value = if polished.is_finite() && polished > lo0 && polished < hi0 {
        polished
    } else {
        mid
    };
    // Raw residual for the report; underflows to ~0 for large N, which is
    // the honest magnitude of 4(p+1)λ(p+2;N) − π²λ(p;N) there.
    let lam_p = math::exp(math::ln(lambda_scaled(value, n, 1e-13).0) - value * math::ln(w));
    let residual = lam_p * curvature_residual(value, n, 1e-13);
    Ok(PstarResult {
        value,
        bracket: (lo0, hi0),
        residual,
    })
}

/// Scale-aware degeneracy cutoff for the curvature sign. The residual is
/// measured against π² (it is O(1) by construction), so the cutoff does not
/// collapse when 𝔥″ itself underflows like (N+1/2)^(−p).
fn degenerate_cutoff(p: f64) -> f64 {
    1e-9 * (1.0 + math::abs(p))
}

/// Classifies x = 1/2 as local max/min of 𝔥_{p,N} by the sign of 𝔥″(1/2).
pub fn classify_half_point(p: f64, n: u32) -> Result<ExtremumReport> {
    ensure_finite("p", p)?;
    if p <= 1.0 {
        return Err(Error::Divergent {
            name: "p",
            value: p,
            min: 1.0,
        });
    }
    check_n(n)?;
    let g = curvature_residual(p, n, 1e-13);
    let kind = if math::abs(g) < degenerate_cutoff(p) {
        ExtremumKind::Degenerate
    } else if g < 0.0 {
        ExtremumKind::LocalMax
    } else {
        ExtremumKind::LocalMin
    };
    let value = h_sum_with(p, n, 0.5, f64::INFINITY, 1e-13)?.value;
    let second_derivative = h_second_derivative_at_half(p, n)?;
    Ok(ExtremumReport {
        abscissa: 0.5,
        value,
        kind,
        second_derivative,
    })
}

/// Smallest N for which x = 1/2 is guaranteed a local maximum at exponent p:
/// N ≥ √((p+2)(1+1/p))/π − 1/2.
pub fn corollary_min_n_for_max(p: f64) -> Result<u32> {
    ensure_finite("p", p)?;
    if p <= 1.0 {
        return Err(Error::Divergent {
            name: "p",
            value: p,
            min: 1.0,
        });
    }
    let t = math::sqrt((p + 2.0) * (1.0 + 1.0 / p)) / PI - 0.5;
    let n = math::ceil(t);
    Ok(if n < 1.0 { 1 } else { n as u32 })
}

/// Unique solution A_k ∈ (1/2, 1) of cot(πx) = −1/(π(k−x)), k ≥ 2.
///
/// cot(π/2) = 0 exceeds the right side at 1/2 while cot(πx) → −∞ at 1, so
/// bisection on the residual always brackets the root.
pub fn solve_a_k(k: u32, tol: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::TooSmall {
            name: "k",
            value: k as i64,
            min: 2,
        });
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NonPositiveTolerance { value: tol });
    }
    let f = |x: f64| math::cot_pi(x) + 1.0 / (PI * (k as f64 - x));
    let (mut lo, mut hi): (f64, f64) = (0.5, 1.0 - 1e-15);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= tol.min(1e-15) * mid.max(1.0) || hi - lo <= 4.0 * f64::EPSILON {
            break;
        }
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The unique exponent p̃ for which ψ_k has a critical point at x* ∈ (1/2, A_k):
///
/// ```text
/// p̃ = ln[ (1 − π cot(πx*)(k+x*−1)) / (π cot(πx*)(k+x*−1) − 1 + (2k−1)/(k−x*)) ]
///     / ln[ (k+x*−1)/(k−x*) ]
/// ```
///
/// The denominator of the inner ratio is positive exactly on (1/2, A_k);
/// beyond A_k the argument of the logarithm is non-positive and the request
/// is rejected.
pub fn tilde_p(k: u32, x_star: f64) -> Result<f64> {
    if k < 2 {
        return Err(Error::TooSmall {
            name: "k",
            value: k as i64,
            min: 2,
        });
    }
    ensure_finite("x_star", x_star)?;
    if x_star <= 0.5 || x_star >= 1.0 {
        return Err(Error::OutOfRange {
            name: "x_star",
            value: x_star,
            lo: 0.5,
            hi: 1.0,
        });
    }
    let kf = k as f64;
    let cot = math::cot_pi(x_star);
    let num = 1.0 - PI * cot * (kf + x_star - 1.0);
    let den = PI * cot * (kf + x_star - 1.0) - 1.0 + (2.0 * kf - 1.0) / (kf - x_star);
    if den <= 0.0 {
        // x* is at or beyond A_k
        let a_k = solve_a_k(k, 1e-14)?;
        return Err(Error::OutOfRange {
            name: "x_star",
            value: x_star,
            lo: 0.5,
            hi: a_k,
        });
    }
    Ok(math::ln(num / den) / math::ln((kf + x_star - 1.0) / (kf - x_star)))
}

/// Global maximum of 𝔥_{p,N} over [1/2, 1): grid scan (ties resolved to the
/// smaller abscissa) followed by golden-section refinement of the bracketing
/// cell to 1e-10 in the abscissa.
pub fn scan_max(p: f64, n: u32, grid_points: u32) -> Result<ExtremumReport> {
    ensure_finite("p", p)?;
    if p <= 1.0 {
        return Err(Error::Divergent {
            name: "p",
            value: p,
            min: 1.0,
        });
    }
    check_n(n)?;
    if grid_points < 64 {
        return Err(Error::TooSmall {
            name: "grid_points",
            value: grid_points as i64,
            min: 64,
        });
    }
    let g = grid_points as f64;
    let coarse = |x: f64| h_sum_with(p, n, x, f64::INFINITY, 1e-8).map(|e| e.value);
    let mut best_i = 0u32;
    let mut best_v = f64::NEG_INFINITY;
    for i in 0..grid_points {
        let x = 0.5 + 0.5 * i as f64 / g;
        let v = coarse(x)?;
        if v > best_v {
            best_v = v;
            best_i = i;
        }
    }
    let lo = 0.5 + 0.5 * best_i.saturating_sub(1) as f64 / g;
    let hi = 0.5 + 0.5 * (best_i + 1).min(grid_points - 1) as f64 / g;
    let abscissa = golden_max(&coarse, lo, hi, 1e-10)?;
    let value = h_sum_with(p, n, abscissa, f64::INFINITY, 1e-13)?.value;
    // Curvature at the maximizer: analytic at the symmetry point, central
    // differences elsewhere. The degeneracy cutoff is taken on the scale of
    // the maximum itself — 𝔥 can sit at 1e-60 and below.
    if abscissa - 0.5 < 1e-6 {
        let half = classify_half_point(p, n)?;
        return Ok(ExtremumReport {
            abscissa,
            value,
            ..half
        });
    }
    let h = 1e-5;
    let fp = h_sum_with(p, n, abscissa + h, f64::INFINITY, 1e-13)?.value;
    let fm = h_sum_with(p, n, abscissa - h, f64::INFINITY, 1e-13)?.value;
    let second_derivative = (fp - 2.0 * value + fm) / (h * h);
    let kind = if math::abs(second_derivative) < degenerate_cutoff(p) * value {
        ExtremumKind::Degenerate
    } else if second_derivative < 0.0 {
        ExtremumKind::LocalMax
    } else {
        ExtremumKind::LocalMin
    };
    Ok(ExtremumReport {
        abscissa,
        value,
        kind,
        second_derivative,
    })
}

fn golden_max(f: &dyn Fn(f64) -> Result<f64>, mut a: f64, mut b: f64, tol: f64) -> Result<f64> {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while b - a > tol {
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
        }
    }
    Ok(0.5 * (a + b))
}
