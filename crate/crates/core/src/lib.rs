//! Linear wavelet density estimation for right-censored lifetime data.
//!
//! The estimator projects an unknown lifetime density onto the span of
//! periodized scaling functions `phi_{J,k}` on `[0, 1]`. Empirical
//! coefficients are formed from the uncensored observations, each weighted by
//! the inverse of the Kaplan–Meier estimate of the censoring survival
//! function. A complete-data variant that uses every observation is provided
//! for comparison, together with a Monte-Carlo harness that reproduces the
//! AMSE study over five normal-mixture baselines.
//!
//! All numerical code is generic over the scalar type. The aliases at the
//! crate root fix the scalar to `f64`, which is what the simulation harness and
//! the CLI use.

pub mod censoring;
pub mod error;
pub mod estimator;
pub mod oracle;
pub mod scalar;
pub mod simulation;
pub mod stats;
pub mod wavelet;

pub use censoring::{
    ipcw_weights, km_censoring, km_event, rank_sample, CensoredSample, KaplanMeierCurve,
    KmTarget, RankedSample,
};
pub use error::{Error, Result};
pub use estimator::{
    fit_complete, fit_partial, normalize, pointwise_variance, select_level, select_level_with,
    DensityEstimate, EstimatorKind, LogConvention, PostProcess, VarianceEstimate,
};
pub use scalar::{Field, Real};
pub use wavelet::{PeriodizedIndex, WaveletFilter};

/// Censored sample with `f64` times.
pub type Sample = CensoredSample<f64>;
/// Ranked sample with `f64` times.
pub type Ranked = RankedSample<f64>;
/// Kaplan–Meier curve over `f64`.
pub type KmCurve = KaplanMeierCurve<f64>;
/// Scaling filter evaluated in `f64`.
pub type Filter = WaveletFilter<f64>;
/// Density estimate with `f64` coefficients.
pub type Estimate = DensityEstimate<f64>;
/// Exact rational scalar used by the brute-force Kaplan–Meier checks.
pub type Rational = num_rational::Ratio<i128>;
