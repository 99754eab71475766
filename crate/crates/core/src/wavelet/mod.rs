//! Compactly supported orthonormal scaling functions and their periodizations
//! on the unit interval.
//!
//! A [`WaveletFilter`] holds the low-pass filter `h` together with the two
//! refinement matrices used by the Daubechies–Lagarias evaluator and the values
//! of `phi` at the integers. Evaluation is exact at dyadic abscissae whose
//! binary expansion terminates within the requested depth; elsewhere the error
//! is bounded by `C * 2^(-depth * alpha)` where `alpha` is the Hölder exponent
//! of `phi` (about 0.55 for `daubechies2`, 1.08 for `daubechies3`, 1.6 for
//! `daubechies4`, increasing roughly by 0.2 per additional vanishing moment).

mod catalog;
mod eval;
mod periodic;

pub use periodic::{BasisRow, PeriodizedIndex};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Default number of binary digits consumed by the matrix-product evaluator.
///
/// 64 exceeds the mantissa width of `f64`, so every representable abscissa in
/// the support has a terminating expansion and is evaluated exactly up to
/// rounding.
pub const DEFAULT_DEPTH: u32 = 64;

/// Tolerance used when validating catalog filters.
pub const QMF_TOLERANCE: f64 = 1e-12;

/// Names accepted by [`WaveletFilter::load`].
pub fn catalog() -> impl Iterator<Item = &'static str> {
    catalog::CATALOG.iter().map(|(name, _)| *name)
}

fn supported_list() -> String {
    catalog().collect::<Vec<_>>().join(", ")
}

/// Orthonormal scaling filter with precomputed evaluation machinery.
#[derive(Debug, Clone, PartialEq)]
pub struct WaveletFilter<T> {
    name: String,
    h: Vec<T>,
    /// Row-major `(L-1) x (L-1)` matrices `T0[i][j] = sqrt2 h[2i-j]` and
    /// `T1[i][j] = sqrt2 h[2i+1-j]`.
    t0: Vec<T>,
    t1: Vec<T>,
    /// `phi(0), phi(1), ..., phi(L-2)`.
    integer_values: Vec<T>,
}

impl<T: Real> WaveletFilter<T> {
    /// Loads a filter from the built-in catalog.
    ///
    /// Names are case-insensitive; `db<N>`, `sym<N>` and `coif<N>` are accepted
    /// as short forms.
    pub fn load(name: &str) -> Result<Self> {
        let canonical = canonical_name(name);
        let (name, coeffs) = catalog::CATALOG
            .iter()
            .find(|(n, _)| *n == canonical)
            .ok_or_else(|| Error::UnknownFilter {
                name: name.to_string(),
                supported: supported_list(),
            })?;
        // Tables are re-validated in f64 before narrowing.
        validate_qmf(name, coeffs, QMF_TOLERANCE)?;
        let h = coeffs.iter().map(|&c| T::lit(c)).collect();
        Ok(Self::build(name.to_string(), h))
    }

    /// Builds a filter from arbitrary low-pass coefficients, checking the
    /// normalization and orthonormality conditions.
    pub fn from_coefficients(name: &str, h: Vec<T>) -> Result<Self> {
        let as_f64: Vec<f64> = h.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let tol = QMF_TOLERANCE.max(1e3 * T::epsilon().to_f64().unwrap_or(0.0));
        validate_qmf(name, &as_f64, tol)?;
        Ok(Self::build(name.to_string(), h))
    }

    fn build(name: String, h: Vec<T>) -> Self {
        let n = h.len() - 1;
        let sqrt2 = T::lit(2.0).sqrt();
        let tap = |idx: isize| -> T {
            if idx >= 0 && (idx as usize) < h.len() {
                // haar taps give exactly one; keep it exact so phi stays 1
                let v = sqrt2 * h[idx as usize];
                let r = v.round();
                if r != T::zero() && (v - r).abs() <= T::lit(4.0) * T::epsilon() {
                    r
                } else {
                    v
                }
            } else {
                T::zero()
            }
        };
        let mut t0 = vec![T::zero(); n * n];
        let mut t1 = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let (ii, jj) = (i as isize, j as isize);
                t0[i * n + j] = tap(2 * ii - jj);
                t1[i * n + j] = tap(2 * ii + 1 - jj);
            }
        }
        let integer_values = eval::integer_values(&t0, n);
        Self {
            name,
            h,
            t0,
            t1,
            integer_values,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Low-pass coefficients.
    pub fn coefficients(&self) -> &[T] {
        &self.h
    }

    /// Number of taps `L`.
    pub fn support_length(&self) -> usize {
        self.h.len()
    }

    /// Closed support `[0, L-1]` of `phi`.
    pub fn support(&self) -> (T, T) {
        (T::zero(), T::from_count(self.h.len() - 1))
    }

    /// Values of `phi` at `0, 1, ..., L-2`.
    pub fn integer_values(&self) -> &[T] {
        &self.integer_values
    }
}

/// Loads a catalog filter in `f64`.
pub fn load_filter(name: &str) -> Result<WaveletFilter<f64>> {
    WaveletFilter::load(name)
}

fn canonical_name(name: &str) -> String {
    let mut lower = name.trim().to_ascii_lowercase();
    for (short, long) in [("db", "daubechies"), ("sym", "symmlet"), ("coif", "coiflet")] {
        if let Some(rest) = lower.strip_prefix(short) {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                lower = format!("{long}{rest}");
                break;
            }
        }
    }
    if lower == "daubechies1" {
        lower = "haar".to_string();
    }
    lower
}

fn validate_qmf(name: &str, h: &[f64], tol: f64) -> Result<()> {
    let fail = |reason: String| Error::InvalidFilter {
        name: name.to_string(),
        reason,
    };
    let len = h.len();
    if len < 2 || len % 2 != 0 {
        return Err(fail(format!("length {len} must be even and at least 2")));
    }
    if h.iter().any(|c| !c.is_finite()) {
        return Err(fail("non-finite coefficient".into()));
    }
    let sum: f64 = h.iter().sum();
    if (sum - std::f64::consts::SQRT_2).abs() > tol {
        return Err(fail(format!("sum of taps {sum} differs from sqrt(2)")));
    }
    for m in 0..len / 2 {
        let dot: f64 = (2 * m..len).map(|r| h[r] * h[r - 2 * m]).sum();
        let target = if m == 0 { 1.0 } else { 0.0 };
        if (dot - target).abs() > tol {
            return Err(fail(format!(
                "shift-{m} autocorrelation {dot:e} differs from {target}"
            )));
        }
    }
    Ok(())
}
