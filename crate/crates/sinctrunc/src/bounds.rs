//! Closed-form constants and bound formulas for truncated cardinal-series
//! restoration: the full-line sum bound 𝔠_p, the multidimensional
//! Plancherel–Pólya constant 𝔅_{d,r}, the sharp tail bound 2(2/π)^p λ(p;N),
//! the universal truncation constant C(N,d,q), the sharp L² bound, and the
//! λ-decay estimate behind the O(Ñ^(−1/q)) convergence rate.

use crate::error::{ensure_finite, Error, Result};
use crate::extrema::sharpness_threshold;
use crate::math;
use crate::specfun::lambda_tight;
use alloc::vec::Vec;
use core::f64::consts::PI;

/// Per-axis exponential types σ_ℓ and separations δ_ℓ of a separated
/// sampling set in d dimensions.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct SamplingGeometry {
    sigmas: Vec<f64>,
    deltas: Vec<f64>,
}

impl SamplingGeometry {
    pub fn new(sigmas: &[f64], deltas: &[f64]) -> Result<Self> {
        if sigmas.is_empty() {
            return Err(Error::Empty { what: "sigmas" });
        }
        if sigmas.len() != deltas.len() {
            return Err(Error::DimensionMismatch {
                expected: sigmas.len(),
                got: deltas.len(),
            });
        }
        for &s in sigmas {
            ensure_finite("sigma", s)?;
            if s <= 0.0 {
                return Err(Error::OutOfRange {
                    name: "sigma",
                    value: s,
                    lo: 0.0,
                    hi: f64::INFINITY,
                });
            }
        }
        for &d in deltas {
            ensure_finite("delta", d)?;
            if d <= 0.0 {
                return Err(Error::OutOfRange {
                    name: "delta",
                    value: d,
                    lo: 0.0,
                    hi: f64::INFINITY,
                });
            }
        }
        Ok(Self {
            sigmas: sigmas.into(),
            deltas: deltas.into(),
        })
    }

    /// Regular grid ℤ^d: σ_ℓ = π, δ_ℓ = 1.
    pub fn regular(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Empty { what: "dimension" });
        }
        Ok(Self {
            sigmas: alloc::vec![PI; d],
            deltas: alloc::vec![1.0; d],
        })
    }

    pub fn dimension(&self) -> usize {
        self.sigmas.len()
    }
}

/// Truncation sizes N_j per axis plus the Hölder exponent q of the bound.
///
/// Construction enforces the feasibility hypothesis
/// q ≥ 1 + 1/(π²(Ñ+1/2)²−2), Ñ = min_j N_j — equivalently, the conjugate
/// p = q/(q−1) satisfies p ≤ π²(Ñ+1/2)²−1 on every axis.
#[derive(Debug, Clone, PartialEq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct TruncationConfig {
    ns: Vec<u32>,
    q: f64,
}

impl TruncationConfig {
    pub fn new(ns: &[u32], q: f64) -> Result<Self> {
        if ns.is_empty() {
            return Err(Error::Empty { what: "Ns" });
        }
        for &n in ns {
            if n < 1 {
                return Err(Error::TooSmall {
                    name: "N",
                    value: n as i64,
                    min: 1,
                });
            }
        }
        ensure_finite("q", q)?;
        let n_min = *ns.iter().min().expect("non-empty");
        let threshold = feasibility_threshold(n_min);
        if q < threshold {
            return Err(Error::HolderBelowThreshold {
                q,
                n_min,
                threshold,
            });
        }
        Ok(Self { ns: ns.into(), q })
    }

    pub fn ns(&self) -> &[u32] {
        &self.ns
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn dimension(&self) -> usize {
        self.ns.len()
    }

    /// Conjugate kernel exponent p = q/(q−1).
    pub fn holder_p(&self) -> f64 {
        self.q / (self.q - 1.0)
    }
}

/// Feasibility threshold q*(Ñ) = 1 + 1/(π²(Ñ+1/2)²−2).
pub fn feasibility_threshold(n_min: u32) -> f64 {
    let a = n_min as f64 + 0.5;
    1.0 + 1.0 / (PI * PI * a * a - 2.0)
}

/// Uniform bound 𝔠_p on the full-line sinc power sum:
/// 1 + (2/π)^p p/(p−1) for 1 < p < 2, and 1 for p ≥ 2.
pub fn cp_constant(p: f64) -> Result<f64> {
    ensure_finite("p", p)?;
    if p <= 1.0 {
        return Err(Error::Divergent {
            name: "p",
            value: p,
            min: 1.0,
        });
    }
    Ok(if p < 2.0 {
        1.0 + math::powf(2.0 / PI, p) * p / (p - 1.0)
    } else {
        1.0
    })
}

/// Multidimensional Plancherel–Pólya constant
/// 𝔅_{d,r} = (8/(rπ))^d ∏_ℓ (e^(rδ_ℓσ_ℓ/2) − 1)/(σ_ℓ δ_ℓ²), r ≥ 1.
///
/// The exponential factor uses exp_m1 so the σ → 0 limit (rδ/2 per axis)
/// is reached without cancellation.
pub fn pp_constant(geom: &SamplingGeometry, r: f64) -> Result<f64> {
    ensure_finite("r", r)?;
    if r < 1.0 {
        return Err(Error::OutOfRange {
            name: "r",
            value: r,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let d = geom.dimension();
    let mut prod = math::powf(8.0 / (r * PI), d as i32 as f64);
    for (&sigma, &delta) in geom.sigmas.iter().zip(&geom.deltas) {
        prod *= math::exp_m1(r * delta * sigma / 2.0) / (sigma * delta * delta);
    }
    Ok(prod)
}

/// Sharp tail bound 2(2/π)^p λ(p;N) for Σ_{n∉𝔍_x} |sinc(x−n)|^p, valid
/// (and attained at x = 1/2) for 1 < p ≤ π²(N+1/2)²−1.
pub fn sharp_tail_bound(p: f64, n: u32) -> Result<f64> {
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
    let threshold = sharpness_threshold(n);
    if p > threshold {
        return Err(Error::AboveSharpnessThreshold { p, n, threshold });
    }
    Ok(2.0 * math::powf(2.0 / PI, p) * lambda_tight(p, n)?)
}

/// Universal truncation constant of the sup-norm error bound on the regular
/// grid (σ_ℓ = π, δ_ℓ = 1):
///
/// ```text
/// C(N,d,q) = 2^(2−1/q)/π · 𝔠_{q/(q−1)}^((d−1)(1−1/q)) · 𝔅_{d,q}^(1/q)
///            · (Σ_j λ(q/(q−1); N_j))^(1−1/q)
/// ```
pub fn truncation_constant(cfg: &TruncationConfig) -> Result<f64> {
    let d = cfg.dimension();
    let q = cfg.q();
    let p = cfg.holder_p();
    let b = pp_constant(&SamplingGeometry::regular(d)?, q)?;
    let mut lam_sum = 0.0;
    for &nj in cfg.ns() {
        lam_sum += lambda_tight(p, nj)?;
    }
    Ok(math::powf(2.0, 2.0 - 1.0 / q) / PI
        * math::powf(cp_constant(p)?, (d as f64 - 1.0) * (1.0 - 1.0 / q))
        * math::powf(b, 1.0 / q)
        * math::powf(lam_sum, 1.0 - 1.0 / q))
}

/// Sharp L² truncation bound √(1 − ∏_j (1 − (8/π²) λ(2;N_j))), valid for
/// every N ∈ ℕ^d at p = q = 2.
pub fn l2_truncation_bound(ns: &[u32]) -> Result<f64> {
    if ns.is_empty() {
        return Err(Error::Empty { what: "Ns" });
    }
    let mut prod = 1.0;
    for &nj in ns {
        if nj < 1 {
            return Err(Error::TooSmall {
                name: "N",
                value: nj as i64,
                min: 1,
            });
        }
        prod *= 1.0 - 8.0 / (PI * PI) * lambda_tight(2.0, nj)?;
    }
    Ok(math::sqrt(1.0 - prod))
}

/// Decay estimate λ(p;N) ≤ (2N+1)^(1−p) (1/(2N+1) + 1/(2(p−1))), the driver
/// of the O(Ñ^(−1+1/p)) = O(Ñ^(−1/q)) convergence rate.
pub fn lambda_decay_bound(p: f64, n: u32) -> Result<f64> {
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
    let w = 2.0 * n as f64 + 1.0;
    Ok(math::powf(w, 1.0 - p) * (1.0 / w + 0.5 / (p - 1.0)))
}
