use alloc::string::String;
use core::fmt;

/// Error type shared by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Input was NaN or infinite.
    NonFinite { name: &'static str, value: f64 },
    /// Series exponent at or below its divergence threshold.
    Divergent {
        name: &'static str,
        value: f64,
        min: f64,
    },
    /// Tolerance must be strictly positive.
    NonPositiveTolerance { value: f64 },
    /// Integer parameter below its admissible minimum.
    TooSmall {
        name: &'static str,
        value: i64,
        min: i64,
    },
    /// Real parameter outside its admissible range.
    OutOfRange {
        name: &'static str,
        value: f64,
        lo: f64,
        hi: f64,
    },
    /// Term index k must exceed the truncation size N.
    TermIndex { k: i64, n: u32 },
    /// Hölder exponent q below the feasibility threshold.
    HolderBelowThreshold { q: f64, n_min: u32, threshold: f64 },
    /// Kernel exponent p above π²(N+1/2)²−1, where the sharp tail bound
    /// is not established.
    AboveSharpnessThreshold { p: f64, n: u32, threshold: f64 },
    /// Root-finder bracket endpoints do not straddle a sign change.
    BracketFailure {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    /// Mismatched dimension between a signal and its arguments.
    DimensionMismatch { expected: usize, got: usize },
    /// A collection that must be non-empty was empty.
    Empty { what: &'static str },
    /// Unrecognised signal kind in a corpus description.
    UnknownSignalKind { kind: String },
    /// Dilated kernel would exceed exponential type π.
    BandLimitExceeded { m: u32, b: f64 },
    /// Signal is not in L^q for the requested exponent.
    NotIntegrable { what: &'static str, q: f64 },
    /// Series did not reach the requested tolerance within the term cap.
    ToleranceNotReached { achieved: f64, requested: f64 },
    /// Malformed corpus configuration text.
    ParseSignal { message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NonFinite { name, value } => {
                write!(f, "{name} must be finite, got {value}")
            }
            Error::Divergent { name, value, min } => {
                write!(
                    f,
                    "series diverges: {name} = {value} requires {name} > {min}"
                )
            }
            Error::NonPositiveTolerance { value } => {
                write!(f, "tolerance must be > 0, got {value}")
            }
            Error::TooSmall { name, value, min } => {
                write!(f, "{name} = {value} is below the minimum {min}")
            }
            Error::OutOfRange {
                name,
                value,
                lo,
                hi,
            } => {
                write!(
                    f,
                    "{name} = {value} outside the admissible range ({lo}, {hi})"
                )
            }
            Error::TermIndex { k, n } => {
                write!(f, "term index k = {k} must satisfy k >= N+1 = {}", n + 1)
            }
            Error::HolderBelowThreshold {
                q,
                n_min,
                threshold,
            } => {
                write!(
                    f,
                    "q = {q} violates q >= 1 + 1/(pi^2*(N~+1/2)^2 - 2) = {threshold} for N~ = {n_min}"
                )
            }
            Error::AboveSharpnessThreshold { p, n, threshold } => {
                write!(
                    f,
                    "p = {p} violates p <= pi^2*(N+1/2)^2 - 1 = {threshold} for N = {n}; \
                     the sharp tail bound is not established there"
                )
            }
            Error::BracketFailure { lo, hi, f_lo, f_hi } => {
                write!(
                    f,
                    "no sign change on bracket [{lo}, {hi}]: f(lo) = {f_lo}, f(hi) = {f_hi}"
                )
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::Empty { what } => write!(f, "{what} must not be empty"),
            Error::UnknownSignalKind { kind } => write!(f, "unknown signal kind `{kind}`"),
            Error::BandLimitExceeded { m, b } => {
                write!(
                    f,
                    "sinc^{m}({b}*x) has exponential type {}*pi > pi",
                    *m as f64 * b
                )
            }
            Error::NotIntegrable { what, q } => {
                write!(f, "{what} is not in L^q for q = {q}")
            }
            Error::ToleranceNotReached {
                achieved,
                requested,
            } => {
                write!(
                    f,
                    "series tail bound {achieved} did not reach the requested tolerance {requested}"
                )
            }
            Error::ParseSignal { message } => write!(f, "signal config: {message}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn ensure_finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite { name, value })
    }
}
