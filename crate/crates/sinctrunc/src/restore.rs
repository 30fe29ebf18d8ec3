//! Truncated cardinal-series reconstruction on time-shifted index sets,
//! plus a corpus of Bernstein-class test signals with trusted norms.
//!
//! The restoration sum for a signal f with samples on ℤ^d is
//!
//! ```text
//! Y(f; x) = Σ_{n ∈ 𝔍_x} f(n) ∏_j sinc(x_j − n_j),
//! 𝔍_x = { n : |x_j − n_j| ≤ N_j for every axis j }
//! ```
//!
//! — the window travels with the evaluation point, so the truncation error
//! is uniform in x. Boundary ties |x_j − n_j| = N_j are included (closed
//! inequality).
//!
//! Corpus signals are products of one-axis factors of exponential type ≤ π,
//! which keeps every L^q norm a one-dimensional integral (see the norm
//! machinery) and gives closed-form samples. The random combination kind
//! draws rational coefficients from a splitmix64 stream, re-drawing until
//! the alternating sum stays away from zero so the norm tails are
//! well-conditioned.

use crate::error::{ensure_finite, Error, Result};
use crate::math;
use crate::norms::{combo_power_integral, sinc_power_integral};
use crate::specfun::sinc_value;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use alloc::{format, vec};

/// Time-shifted truncation window: per-axis integer ranges
/// [⌈x_j − N_j⌉, ⌊x_j + N_j⌋].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexSet {
    ranges: Vec<(i64, i64)>,
}

/// Builds 𝔍_x for the point x and per-axis window sizes `ns`.
pub fn index_set(x: &[f64], ns: &[u32]) -> Result<IndexSet> {
    if x.is_empty() {
        return Err(Error::Empty { what: "x" });
    }
    if x.len() != ns.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            got: ns.len(),
        });
    }
    let mut ranges = Vec::with_capacity(x.len());
    for (&xj, &nj) in x.iter().zip(ns) {
        ensure_finite("x", xj)?;
        if nj < 1 {
            return Err(Error::TooSmall {
                name: "N",
                value: nj as i64,
                min: 1,
            });
        }
        let lo = math::ceil(xj - nj as f64) as i64;
        let hi = math::floor(xj + nj as f64) as i64;
        ranges.push((lo, hi));
    }
    Ok(IndexSet { ranges })
}

impl IndexSet {
    pub fn dimension(&self) -> usize {
        self.ranges.len()
    }

    pub fn axis_range(&self, axis: usize) -> (i64, i64) {
        self.ranges[axis]
    }

    /// Number of grid points in the window.
    pub fn len(&self) -> u64 {
        self.ranges
            .iter()
            .map(|&(lo, hi)| (hi - lo + 1) as u64)
            .product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, n: &[i64]) -> bool {
        n.len() == self.ranges.len()
            && n.iter()
                .zip(&self.ranges)
                .all(|(&nj, &(lo, hi))| lo <= nj && nj <= hi)
    }

    /// Odometer walk over the window, first axis fastest.
    pub fn for_each_point(&self, mut f: impl FnMut(&[i64])) {
        let d = self.ranges.len();
        let mut point: Vec<i64> = self.ranges.iter().map(|&(lo, _)| lo).collect();
        loop {
            f(&point);
            let mut axis = 0;
            loop {
                if axis == d {
                    return;
                }
                point[axis] += 1;
                if point[axis] <= self.ranges[axis].1 {
                    break;
                }
                point[axis] = self.ranges[axis].0;
                axis += 1;
            }
        }
    }

    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.len() as usize);
        self.for_each_point(|p| out.push(p.to_vec()));
        out
    }
}

/// One-axis factor of a corpus signal.
#[derive(Debug, Clone, PartialEq)]
enum AxisFactor {
    /// sinc(x − a)
    ShiftedSinc { a: f64 },
    /// sinc²(x/2)
    SincSquaredHalf,
    /// sinc^m(b x)
    DilatedSincPower { m: u32, b: f64 },
    /// Σ_n c_n sinc(x − n)
    Combination { coeffs: Vec<f64> },
}

impl AxisFactor {
    fn evaluate(&self, x: f64) -> f64 {
        match self {
            AxisFactor::ShiftedSinc { a } => sinc_value(x - a),
            AxisFactor::SincSquaredHalf => {
                let s = sinc_value(0.5 * x);
                s * s
            }
            AxisFactor::DilatedSincPower { m, b } => math::powi(sinc_value(b * x), *m as i32),
            AxisFactor::Combination { coeffs } => {
                let mut acc = 0.0;
                for (n, &c) in coeffs.iter().enumerate() {
                    acc += c * sinc_value(x - n as f64);
                }
                acc
            }
        }
    }

    fn sample(&self, n: i64) -> f64 {
        match self {
            AxisFactor::Combination { coeffs } => {
                if n >= 0 && (n as usize) < coeffs.len() {
                    coeffs[n as usize]
                } else {
                    0.0
                }
            }
            // sinc is exact at integer offsets, so sampling through evaluate
            // keeps sample(n) == evaluate(n) bit-for-bit.
            other => other.evaluate(n as f64),
        }
    }

    /// ∫ |factor|^q over the axis.
    fn power_integral(&self, q: f64) -> Result<f64> {
        match self {
            AxisFactor::ShiftedSinc { .. } => sinc_power_integral(q),
            AxisFactor::SincSquaredHalf => Ok(2.0 * sinc_power_integral(2.0 * q)?),
            AxisFactor::DilatedSincPower { m, b } => {
                let beta = *m as f64 * q;
                if beta <= 1.0 {
                    return Err(Error::NotIntegrable {
                        what: "dilated sinc power",
                        q,
                    });
                }
                Ok(sinc_power_integral(beta)? / b)
            }
            AxisFactor::Combination { coeffs } => combo_power_integral(coeffs, q),
        }
    }

    /// Exact ∫ |factor|² where a closed form exists.
    fn l2_integral(&self) -> f64 {
        match self {
            AxisFactor::ShiftedSinc { .. } => 1.0,
            AxisFactor::SincSquaredHalf => 4.0 / 3.0,
            AxisFactor::DilatedSincPower { m, b } => {
                let closed = match m {
                    1 => Some(1.0),
                    2 => Some(2.0 / 3.0),
                    3 => Some(11.0 / 20.0),
                    4 => Some(151.0 / 315.0),
                    _ => None,
                };
                match closed {
                    Some(v) => v / b,
                    None => sinc_power_integral(2.0 * *m as f64).expect("2m > 1") / b,
                }
            }
            AxisFactor::Combination { coeffs } => coeffs.iter().map(|c| c * c).sum(),
        }
    }
}

/// A member of the Bernstein class B_π^q with evaluation, exact-sample and
/// L^q-norm oracles. All corpus signals are separable products, so norms
/// reduce to per-axis integrals.
#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitedSignal {
    axes: Vec<AxisFactor>,
    label: String,
}

impl BandlimitedSignal {
    /// f(x) = ∏_j sinc(x_j − a_j); ‖f‖₂ = 1.
    pub fn shifted_sinc_product(shifts: &[f64]) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::Empty { what: "shifts" });
        }
        for &a in shifts {
            ensure_finite("shift", a)?;
        }
        let label = format!("shifted_sinc_product(a={shifts:?})");
        Ok(Self {
            axes: shifts
                .iter()
                .map(|&a| AxisFactor::ShiftedSinc { a })
                .collect(),
            label,
        })
    }

    /// f(x) = ∏_j sinc²(x_j/2); type π per axis, ‖f‖₂ = (4/3)^(d/2).
    pub fn sinc_squared_half(d: usize) -> Result<Self> {
        if d == 0 {
            return Err(Error::Empty { what: "dimension" });
        }
        Ok(Self {
            axes: vec![AxisFactor::SincSquaredHalf; d],
            label: format!("sinc_squared_half(d={d})"),
        })
    }

    /// f(x) = ∏_j sinc^m(b x_j); requires m·b ≤ 1 so the type stays ≤ π.
    pub fn dilated_sinc_power(d: usize, m: u32, b: f64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Empty { what: "dimension" });
        }
        ensure_finite("b", b)?;
        if m < 1 {
            return Err(Error::TooSmall {
                name: "m",
                value: m as i64,
                min: 1,
            });
        }
        if b <= 0.0 || m as f64 * b > 1.0 + 1e-12 {
            return Err(Error::BandLimitExceeded { m, b });
        }
        Ok(Self {
            axes: vec![AxisFactor::DilatedSincPower { m, b }; d],
            label: format!("dilated_sinc_power(m={m}, b={b})"),
        })
    }

    /// Tensor product of per-axis finite sinc combinations: sample(n) equals
    /// the coefficient product, ‖f‖₂² = ∏_j Σ_n c_{j,n}².
    pub fn finite_sinc_combination(axis_coeffs: &[Vec<f64>]) -> Result<Self> {
        if axis_coeffs.is_empty() {
            return Err(Error::Empty {
                what: "axis coefficients",
            });
        }
        for coeffs in axis_coeffs {
            if coeffs.is_empty() {
                return Err(Error::Empty {
                    what: "coefficients",
                });
            }
            for &c in coeffs {
                ensure_finite("coefficient", c)?;
            }
        }
        let label = format!("finite_sinc_combination(c={axis_coeffs:?})");
        Ok(Self {
            axes: axis_coeffs
                .iter()
                .map(|c| AxisFactor::Combination { coeffs: c.clone() })
                .collect(),
            label,
        })
    }

    /// Random finite combination with rational coefficients k/8,
    /// k ∈ {−8..8}\{0}, re-drawn until the alternating sum Σ c_n(−1)^n is
    /// bounded away from zero (keeps the decay tail of the norm integrals
    /// first-order dominated).
    pub fn random_sinc_combination(d: usize, len: usize, seed: u64) -> Result<Self> {
        if d == 0 {
            return Err(Error::Empty { what: "dimension" });
        }
        if len == 0 {
            return Err(Error::Empty {
                what: "coefficients",
            });
        }
        let mut state = seed ^ 0x517c_c1b7_2722_0a95;
        let mut axes = Vec::with_capacity(d);
        for _ in 0..d {
            loop {
                let coeffs: Vec<f64> = (0..len)
                    .map(|_| {
                        let mut k;
                        loop {
                            k = (splitmix64(&mut state) % 17) as i64 - 8;
                            if k != 0 {
                                break;
                            }
                        }
                        k as f64 / 8.0
                    })
                    .collect();
                let alt: f64 = coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, &c)| if n % 2 == 0 { c } else { -c })
                    .sum();
                let mass: f64 = coeffs.iter().map(|c| math::abs(*c)).sum();
                if math::abs(alt) >= 0.3 * mass {
                    axes.push(coeffs);
                    break;
                }
            }
        }
        let mut sig = Self::finite_sinc_combination(&axes)?;
        sig.label = format!("finite_sinc_combination(seed={seed}, len={len}, d={d})");
        Ok(sig)
    }

    pub fn dimension(&self) -> usize {
        self.axes.len()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Point evaluation; `x.len()` must equal the dimension.
    pub fn evaluate(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.axes.len(), "evaluation point dimension");
        self.axes
            .iter()
            .zip(x)
            .map(|(axis, &xj)| axis.evaluate(xj))
            .product()
    }

    /// Exact sample at an integer grid point.
    pub fn sample(&self, n: &[i64]) -> f64 {
        assert_eq!(n.len(), self.axes.len(), "sample point dimension");
        self.axes
            .iter()
            .zip(n)
            .map(|(axis, &nj)| axis.sample(nj))
            .product()
    }

    /// ‖f‖_q, exact where closed forms exist (q = 2), semi-analytic
    /// quadrature plus moment tails otherwise.
    pub fn norm_q(&self, q: f64) -> Result<f64> {
        ensure_finite("q", q)?;
        if q <= 1.0 {
            return Err(Error::NotIntegrable {
                what: "corpus signal",
                q,
            });
        }
        if q == 2.0 {
            let prod: f64 = self.axes.iter().map(|a| a.l2_integral()).product();
            return Ok(math::sqrt(prod));
        }
        let mut prod = 1.0;
        for axis in &self.axes {
            prod *= axis.power_integral(q)?;
        }
        Ok(math::powf(prod, 1.0 / q))
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Builds a signal from one corpus description line:
/// `<kind> key=value ...`, e.g. `shifted_sinc_product a=0.25,0.1` or
/// `finite_sinc_combination len=5 seed=42`. Unknown keys are rejected.
pub fn make_signal(descriptor: &str, d: usize) -> Result<BandlimitedSignal> {
    if d == 0 {
        return Err(Error::Empty { what: "dimension" });
    }
    let mut tokens = descriptor.split_whitespace();
    let kind = tokens.next().ok_or(Error::Empty {
        what: "signal descriptor",
    })?;
    const KINDS: [&str; 4] = [
        "shifted_sinc_product",
        "sinc_squared_half",
        "dilated_sinc_power",
        "finite_sinc_combination",
    ];
    if !KINDS.contains(&kind) {
        return Err(Error::UnknownSignalKind {
            kind: kind.to_string(),
        });
    }
    let mut a: Option<Vec<f64>> = None;
    let mut c: Option<Vec<f64>> = None;
    let mut m: Option<u32> = None;
    let mut b: Option<f64> = None;
    let mut len: Option<usize> = None;
    let mut seed: Option<u64> = None;
    for tok in tokens {
        let (key, value) = tok.split_once('=').ok_or_else(|| Error::ParseSignal {
            message: format!("expected key=value, got `{tok}`"),
        })?;
        match key {
            "a" => {
                a = Some(parse_list(key, value)?);
            }
            "c" => {
                c = Some(parse_list(key, value)?);
            }
            "m" => m = Some(parse_scalar(key, value)?),
            "b" => b = Some(parse_scalar(key, value)?),
            "len" => len = Some(parse_scalar(key, value)?),
            "seed" => seed = Some(parse_scalar(key, value)?),
            other => {
                return Err(Error::ParseSignal {
                    message: format!("unknown key `{other}`"),
                })
            }
        }
    }
    match kind {
        "shifted_sinc_product" => {
            let shifts = match a {
                None => vec![0.0; d],
                Some(one) if one.len() == 1 => vec![one[0]; d],
                Some(list) if list.len() == d => list,
                Some(list) => {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: list.len(),
                    })
                }
            };
            BandlimitedSignal::shifted_sinc_product(&shifts)
        }
        "sinc_squared_half" => BandlimitedSignal::sinc_squared_half(d),
        "dilated_sinc_power" => {
            let m = m.ok_or_else(|| Error::ParseSignal {
                message: "dilated_sinc_power requires m=...".to_string(),
            })?;
            let b = b.ok_or_else(|| Error::ParseSignal {
                message: "dilated_sinc_power requires b=...".to_string(),
            })?;
            BandlimitedSignal::dilated_sinc_power(d, m, b)
        }
        "finite_sinc_combination" => match (c, len) {
            (Some(coeffs), None) => BandlimitedSignal::finite_sinc_combination(&vec![coeffs; d]),
            (None, Some(len)) => {
                BandlimitedSignal::random_sinc_combination(d, len, seed.unwrap_or(0))
            }
            _ => Err(Error::ParseSignal {
                message: "finite_sinc_combination takes either c=... or len=... [seed=...]"
                    .to_string(),
            }),
        },
        _ => unreachable!("kind checked above"),
    }
}

fn parse_list(key: &str, value: &str) -> Result<Vec<f64>> {
    value
        .split(',')
        .map(|v| v.trim().parse::<f64>())
        .collect::<core::result::Result<_, _>>()
        .map_err(|_| Error::ParseSignal {
            message: format!("bad value for `{key}`: `{value}`"),
        })
}

fn parse_scalar<T: core::str::FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::ParseSignal {
        message: format!("bad value for `{key}`: `{value}`"),
    })
}

/// The built-in validation corpus: one signal of each kind.
pub fn default_corpus(d: usize, seed: u64) -> Result<Vec<BandlimitedSignal>> {
    Ok(vec![
        BandlimitedSignal::shifted_sinc_product(&vec![0.25; d])?,
        BandlimitedSignal::sinc_squared_half(d)?,
        BandlimitedSignal::dilated_sinc_power(d, 3, 1.0 / 3.0)?,
        BandlimitedSignal::random_sinc_combination(d, 5, seed)?,
    ])
}

/// Truncated restoration sum Y(f; x) over the time-shifted window.
pub fn truncated_wks(f: &BandlimitedSignal, x: &[f64], ns: &[u32]) -> Result<f64> {
    if x.len() != f.dimension() {
        return Err(Error::DimensionMismatch {
            expected: f.dimension(),
            got: x.len(),
        });
    }
    let window = index_set(x, ns)?;
    let d = x.len();
    let mut kernels: Vec<Vec<f64>> = Vec::with_capacity(d);
    for (j, &xj) in x.iter().enumerate() {
        let (lo, hi) = window.axis_range(j);
        kernels.push((lo..=hi).map(|n| sinc_value(xj - n as f64)).collect());
    }
    let mut acc = 0.0;
    window.for_each_point(|n| {
        let mut k = f.sample(n);
        for j in 0..d {
            k *= kernels[j][(n[j] - window.axis_range(j).0) as usize];
        }
        acc += k;
    });
    Ok(acc)
}

/// Sup restoration error max_x |f(x) − Y(f;x)| over the probe set.
pub fn measure_error(f: &BandlimitedSignal, probes: &[Vec<f64>], ns: &[u32]) -> Result<f64> {
    if probes.is_empty() {
        return Err(Error::Empty { what: "probe set" });
    }
    let mut worst = 0.0f64;
    for x in probes {
        let err = math::abs(f.evaluate(x) - truncated_wks(f, x, ns)?);
        if err > worst {
            worst = err;
        }
    }
    Ok(worst)
}

const HALTON_BASES: [u64; 6] = [2, 3, 5, 7, 11, 13];

/// Deterministic low-discrepancy probe points: a seeded Halton sequence
/// mapped into [lo, hi]^d.
pub fn low_discrepancy_probes(
    d: usize,
    count: usize,
    seed: u64,
    lo: f64,
    hi: f64,
) -> Result<Vec<Vec<f64>>> {
    if d == 0 || d > HALTON_BASES.len() {
        return Err(Error::OutOfRange {
            name: "dimension",
            value: d as f64,
            lo: 1.0,
            hi: HALTON_BASES.len() as f64,
        });
    }
    if count == 0 {
        return Err(Error::Empty { what: "probe set" });
    }
    let span = hi - lo;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let index = seed.wrapping_add(i as u64).wrapping_add(1);
        let point = (0..d)
            .map(|j| lo + span * radical_inverse(index, HALTON_BASES[j]))
            .collect();
        out.push(point);
    }
    Ok(out)
}

fn radical_inverse(mut index: u64, base: u64) -> f64 {
    let mut inv = 0.0;
    let mut scale = 1.0 / base as f64;
    while index > 0 {
        inv += (index % base) as f64 * scale;
        index /= base;
        scale /= base as f64;
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_examples() {
        let s = index_set(&[0.3], &[2]).unwrap();
        assert_eq!(s.points(), vec![vec![-1], vec![0], vec![1], vec![2]]);
        let s = index_set(&[0.5], &[1]).unwrap();
        assert_eq!(s.points(), vec![vec![0], vec![1]]);
        let s = index_set(&[0.0, 0.0], &[1, 1]).unwrap();
        assert_eq!(s.len(), 9);
        assert!(s.contains(&[-1, 1]));
        assert!(!s.contains(&[2, 0]));
    }

    #[test]
    fn index_set_cardinality_is_2n_or_2n_plus_1() {
        for i in 0..200 {
            let x = -3.0 + i as f64 * 0.031;
            for n in 1..=4u32 {
                let s = index_set(&[x], &[n]).unwrap();
                let card = s.len();
                assert!(
                    card == 2 * n as u64 || card == 2 * n as u64 + 1,
                    "x={x} N={n}: {card}"
                );
            }
        }
    }

    #[test]
    fn index_set_boundary_ties_included() {
        // |x − n| = N exactly on both sides
        let s = index_set(&[2.0], &[2]).unwrap();
        assert_eq!(s.axis_range(0), (0, 4));
    }

    #[test]
    fn samples_match_evaluation_at_integers() {
        for sig in default_corpus(2, 7).unwrap() {
            for n0 in -6..=6i64 {
                for n1 in -6..=6i64 {
                    let s = sig.sample(&[n0, n1]);
                    let e = sig.evaluate(&[n0 as f64, n1 as f64]);
                    assert!(
                        (s - e).abs() <= 1e-14 * e.abs().max(1.0),
                        "{}: n=({n0},{n1}) sample {s} vs eval {e}",
                        sig.label()
                    );
                }
            }
        }
    }

    #[test]
    fn wks_is_exact_at_integer_points() {
        for sig in default_corpus(1, 3).unwrap() {
            for n in -4..=4i64 {
                let y = truncated_wks(&sig, &[n as f64], &[2]).unwrap();
                assert_eq!(y, sig.sample(&[n]), "{}", sig.label());
            }
        }
        let sig = BandlimitedSignal::sinc_squared_half(2).unwrap();
        let y = truncated_wks(&sig, &[1.0, -2.0], &[3, 3]).unwrap();
        assert_eq!(y, sig.sample(&[1, -2]));
    }

    #[test]
    fn wks_rejects_dimension_mismatch() {
        let sig = BandlimitedSignal::sinc_squared_half(2).unwrap();
        assert!(matches!(
            truncated_wks(&sig, &[0.5], &[2]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn shifted_sinc_reconstruction_converges() {
        // f = sinc, f(0.5) = 2/π; the N = 20 window stays within the sharp
        // L² bound
        let sig = BandlimitedSignal::shifted_sinc_product(&[0.0]).unwrap();
        let y = truncated_wks(&sig, &[0.5], &[20]).unwrap();
        let f = sig.evaluate(&[0.5]);
        let bound = crate::bounds::l2_truncation_bound(&[20]).unwrap();
        assert!((f - y).abs() <= bound, "err {} vs {}", (f - y).abs(), bound);
        assert!((f - 2.0 / core::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn error_decreases_with_window_size() {
        let sig = BandlimitedSignal::shifted_sinc_product(&[0.25]).unwrap();
        let probes = low_discrepancy_probes(1, 200, 0, -2.0, 2.0).unwrap();
        let mut prev = f64::INFINITY;
        for n in [2u32, 4, 8, 16] {
            let e = measure_error(&sig, &probes, &[n]).unwrap();
            assert!(e < prev, "N={n}: {e} vs {prev}");
            prev = e;
        }
    }

    #[test]
    fn measure_error_zero_on_integer_probes() {
        let sig = BandlimitedSignal::sinc_squared_half(1).unwrap();
        let probes: Vec<Vec<f64>> = (-5..=5).map(|n| vec![n as f64]).collect();
        assert_eq!(measure_error(&sig, &probes, &[3]).unwrap(), 0.0);
        assert!(measure_error(&sig, &[], &[3]).is_err());
    }

    #[test]
    fn corpus_norms() {
        // shifted sinc: ‖f‖₂ = 1 per construction
        let sig = BandlimitedSignal::shifted_sinc_product(&[0.0, 0.0]).unwrap();
        assert_eq!(sig.norm_q(2.0).unwrap(), 1.0);
        // sinc²(x/2): ∫ f² = 4/3 per axis
        let sig = BandlimitedSignal::sinc_squared_half(1).unwrap();
        assert!((sig.norm_q(2.0).unwrap() - math::sqrt(4.0 / 3.0)).abs() < 1e-15);
        let sig2 = BandlimitedSignal::sinc_squared_half(2).unwrap();
        assert!((sig2.norm_q(2.0).unwrap() - 4.0 / 3.0).abs() < 1e-15);
        // quadrature route agrees with the closed form
        let quad = sig.norm_q(2.0 + 1e-12).unwrap();
        assert!((quad - math::sqrt(4.0 / 3.0)).abs() < 1e-8);
        // combination: ‖f‖₂² = Σ c²
        let sig = BandlimitedSignal::finite_sinc_combination(&[vec![0.5, -0.25, 0.75]]).unwrap();
        assert!((sig.norm_q(2.0).unwrap() - 0.935_414_346_693_485_3).abs() < 1e-12);
        assert!(sig.norm_q(1.0).is_err());
    }

    #[test]
    fn combination_samples_are_the_coefficients() {
        let sig = BandlimitedSignal::finite_sinc_combination(&[vec![0.5, -0.25, 0.75]]).unwrap();
        assert_eq!(sig.sample(&[0]), 0.5);
        assert_eq!(sig.sample(&[1]), -0.25);
        assert_eq!(sig.sample(&[2]), 0.75);
        assert_eq!(sig.sample(&[3]), 0.0);
        assert_eq!(sig.sample(&[-1]), 0.0);
        assert_eq!(sig.evaluate(&[1.0]), -0.25);
    }

    #[test]
    fn dilated_band_limit_gate() {
        assert!(BandlimitedSignal::dilated_sinc_power(1, 3, 1.0 / 3.0).is_ok());
        assert!(matches!(
            BandlimitedSignal::dilated_sinc_power(1, 3, 0.4),
            Err(Error::BandLimitExceeded { .. })
        ));
    }

    #[test]
    fn random_combination_is_deterministic_and_rational() {
        let a = BandlimitedSignal::random_sinc_combination(2, 5, 42).unwrap();
        let b = BandlimitedSignal::random_sinc_combination(2, 5, 42).unwrap();
        assert_eq!(a, b);
        let c = BandlimitedSignal::random_sinc_combination(2, 5, 43).unwrap();
        assert_ne!(a, c);
        match &a.axes[0] {
            AxisFactor::Combination { coeffs } => {
                for &v in coeffs {
                    let eighth = v * 8.0;
                    assert_eq!(eighth, math::round(eighth), "rational k/8 coefficient");
                    assert!(v != 0.0 && math::abs(v) <= 1.0);
                }
            }
            other => panic!("unexpected axis {other:?}"),
        }
    }

    #[test]
    fn make_signal_descriptor_grammar() {
        assert!(make_signal("shifted_sinc_product a=0.25,0.1", 2).is_ok());
        assert!(make_signal("shifted_sinc_product a=0.25", 2).is_ok());
        assert!(make_signal("sinc_squared_half", 1).is_ok());
        assert!(make_signal("dilated_sinc_power m=3 b=0.3333333333333333", 1).is_ok());
        assert!(make_signal("finite_sinc_combination c=0.5,-0.25,0.75", 1).is_ok());
        assert!(make_signal("finite_sinc_combination len=5 seed=9", 2).is_ok());
        assert!(matches!(
            make_signal("gaussian sigma=1", 1),
            Err(Error::UnknownSignalKind { .. })
        ));
        assert!(make_signal("dilated_sinc_power m=3", 1).is_err());
        assert!(make_signal("shifted_sinc_product a=0.1,0.2,0.3", 2).is_err());
        assert!(make_signal("sinc_squared_half what=1", 1).is_err());
    }

    #[test]
    fn halton_probes_are_deterministic_and_in_range() {
        let a = low_discrepancy_probes(2, 100, 5, -2.0, 2.0).unwrap();
        let b = low_discrepancy_probes(2, 100, 5, -2.0, 2.0).unwrap();
        assert_eq!(a, b);
        let c = low_discrepancy_probes(2, 100, 6, -2.0, 2.0).unwrap();
        assert_ne!(a, c);
        for p in &a {
            assert!(p.iter().all(|&v| (-2.0..=2.0).contains(&v)));
        }
        let mean: f64 = a.iter().map(|p| p[0]).sum::<f64>() / 100.0;
        assert!(mean.abs() < 0.3);
    }
}
