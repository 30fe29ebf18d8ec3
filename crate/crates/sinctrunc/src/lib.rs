//! Truncation-error analysis for cardinal-series (Whittaker–Kotel'nikov–Shannon)
//! sampling restoration of Bernstein-class functions.
//!
//! When a bandlimited signal is restored from its samples by the truncated
//! cardinal series, the restoration error at a point is controlled by tail sums
//! of powers of the sinc kernel. This crate evaluates those sums with rigorous
//! tail bounds and provides every closed-form constant of the associated
//! universal (decay-free) error bounds:
//!
//! - [`specfun`] — the sinc kernel and the incomplete Lambda function
//!   λ(s;a) = Σ_{n≥1} (2(n+a)−1)^(−s) with certified series tails.
//! - [`sincsum`] — the full-line sinc power sum Σ_n |sinc(x−n)|^p, the
//!   truncated-tail sum 𝔥_{p,N}(x), its term functions ψ_k and derivatives.
//! - [`extrema`] — the exponent p* at which x = 1/2 flips from local maximum
//!   to local minimum of 𝔥_{p,N}, closed-form brackets for p*, extremum
//!   classification, and a global maximum scan.
//! - [`bounds`] — the constants 𝔠_p and 𝔅_{d,r} (Plancherel–Pólya), the sharp
//!   tail bound 2(2/π)^p λ(p;N), the universal truncation constant C(N,d,q),
//!   the sharp L² bound, and the λ-decay estimate.
//! - [`restore`] — multidimensional truncated reconstruction on time-shifted
//!   index sets, a corpus of Bernstein-class test signals with trusted L^q
//!   norms, and sup-error measurement on low-discrepancy probes.
//! - [`harness`] — reproduction of the reference numerical tables, figure
//!   data, the bound-validation campaign, and convergence-rate fits.
//!
//! The crate is `no_std`-compatible (with `alloc`); enable the `libm` feature
//! instead of the default `std` for builds without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]
#![deny(unsafe_code)]

#[cfg(not(any(feature = "std", feature = "libm")))]
compile_error!("sinctrunc requires either the `std` or the `libm` feature");

extern crate alloc;

mod error;
mod math;
mod norms;
mod series;

pub mod bounds;
pub mod extrema;
pub mod harness;
pub mod restore;
pub mod sincsum;
pub mod specfun;

pub use error::{Error, Result};
pub use specfun::SumEvaluation;
