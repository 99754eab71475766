//! Linear wavelet density estimators for right-censored samples.
//!
//! Both estimators share the form `f(x) = sum_k c_k phi^per_{J,k}(x)` on the
//! normalized time axis and differ only in the per-observation weight applied
//! inside the empirical coefficients:
//!
//! * partial data: `d_i / (1 - G(Y_i-))`, nonzero only at observed events;
//! * complete data: `(1 - [d_i = 0] (1 - F(Y_i))) / (1 - G(Y_i-))`.
//!
//! `G` and `F` are the Kaplan–Meier estimates from [`crate::censoring`]. The
//! censoring survival is always taken as the left limit at the observation, so
//! the weights stay finite at the largest event.

use crate::censoring::{
    censoring_survival_before, ipcw_weights, km_event, rank_sample, CensoredSample, RankedSample,
};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::wavelet::{BasisRow, WaveletFilter};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Largest supported resolution level.
pub const MAX_LEVEL: u32 = 16;

/// Minimum number of trapezoid points used by renormalization.
pub const RENORM_POINTS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EstimatorKind {
    Partial,
    Complete,
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EstimatorKind::Partial => "partial",
            EstimatorKind::Complete => "complete",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PostProcess {
    #[default]
    Raw,
    Clip,
    ClipRenorm,
}

/// Base of the inner logarithm in the level rule.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LogConvention {
    #[default]
    Natural,
    Base2,
}

/// Fitted estimator on the normalized axis `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityEstimate<T> {
    pub level: u32,
    pub coeffs: Vec<T>,
    pub filter: WaveletFilter<T>,
    pub tau: T,
    pub kind: EstimatorKind,
    pub postprocess: PostProcess,
    /// Divisor applied after clipping; one unless renormalized.
    pub renorm: T,
}

/// Normalizes times by their maximum, recording it as `tau`.
pub fn normalize<T: Real>(s: &CensoredSample<T>) -> Result<CensoredSample<T>> {
    let tau = s
        .times()
        .iter()
        .copied()
        .fold(T::zero(), |a, b| if b > a { b } else { a });
    if tau <= T::zero() {
        return Err(Error::AllZeroSample);
    }
    let times = s.times().iter().map(|&t| t / tau).collect();
    CensoredSample::new(times, s.events().to_vec())?.with_tau(tau)
}

/// `J = floor(log2 N - log2 ln N)`, clamped to `[0, 16]`.
pub fn select_level(n: usize) -> Result<u32> {
    select_level_with(n, LogConvention::Natural)
}

pub fn select_level_with(n: usize, convention: LogConvention) -> Result<u32> {
    if n < 2 {
        return Err(Error::InvalidSampleSize(n));
    }
    let nf = n as f64;
    let inner = match convention {
        LogConvention::Natural => nf.ln(),
        LogConvention::Base2 => nf.log2(),
    };
    let j = (nf.log2() - inner.log2()).floor();
    Ok(j.clamp(0.0, MAX_LEVEL as f64) as u32)
}

fn check_fit_input<T: Real>(s: &CensoredSample<T>, level: u32) -> Result<()> {
    if s.tau().is_none() {
        return Err(Error::NotNormalized);
    }
    if level > MAX_LEVEL {
        return Err(Error::InvalidLevel(level));
    }
    Ok(())
}

/// `(1/N) sum_i weights[i] * phi^per_{J,k}(points[i])` for every `k`.
pub(crate) fn weighted_coefficients<T: Real>(
    filter: &WaveletFilter<T>,
    level: u32,
    points: &[T],
    weights: &[T],
) -> Vec<T> {
    let n = points.len();
    let mut coeffs = vec![T::zero(); 1usize << level];
    let width = filter.support_length() - 1;
    let mut window = vec![T::zero(); width];
    let mut scratch = vec![T::zero(); width];
    let mut entries = Vec::with_capacity(width);
    for (&y, &w) in points.iter().zip(weights) {
        if w == T::zero() {
            continue;
        }
        filter.periodized_row_into(level, y, &mut window, &mut scratch, &mut entries);
        for &(k, v) in &entries {
            coeffs[k] = coeffs[k] + w * v;
        }
    }
    let inv = T::one() / T::from_count(n);
    coeffs.iter_mut().for_each(|c| *c = *c * inv);
    coeffs
}

/// Per-observation weights of the complete-data estimator, in ranked order.
pub fn complete_weights<T: Real>(r: &RankedSample<T>) -> Result<Vec<T>> {
    let f = km_event(r);
    let survival = censoring_survival_before(r);
    r.events
        .iter()
        .enumerate()
        .map(|(i, &event)| {
            let s = survival[i];
            if s <= T::zero() {
                return Err(Error::DegenerateWeight(i));
            }
            let numerator = if event {
                T::one()
            } else {
                T::one() - (T::one() - f.cdf[i])
            };
            Ok(numerator / s)
        })
        .collect()
}

/// Partial-data estimator: IPCW-weighted uncensored observations.
pub fn fit_partial<T: Real>(
    s: &CensoredSample<T>,
    filter: &WaveletFilter<T>,
    level: u32,
) -> Result<DensityEstimate<T>> {
    check_fit_input(s, level)?;
    let r = rank_sample(s);
    let w = ipcw_weights(&r)?;
    Ok(DensityEstimate {
        level,
        coeffs: weighted_coefficients(filter, level, &r.times, &w),
        filter: filter.clone(),
        tau: *s.tau().expect("checked"),
        kind: EstimatorKind::Partial,
        postprocess: PostProcess::Raw,
        renorm: T::one(),
    })
}

/// Complete-data estimator: every observation contributes through the
/// Kaplan–Meier corrected weight.
pub fn fit_complete<T: Real>(
    s: &CensoredSample<T>,
    filter: &WaveletFilter<T>,
    level: u32,
) -> Result<DensityEstimate<T>> {
    check_fit_input(s, level)?;
    let r = rank_sample(s);
    let w = complete_weights(&r)?;
    Ok(DensityEstimate {
        level,
        coeffs: weighted_coefficients(filter, level, &r.times, &w),
        filter: filter.clone(),
        tau: *s.tau().expect("checked"),
        kind: EstimatorKind::Complete,
        postprocess: PostProcess::Raw,
        renorm: T::one(),
    })
}

pub fn fit<T: Real>(
    kind: EstimatorKind,
    s: &CensoredSample<T>,
    filter: &WaveletFilter<T>,
    level: u32,
) -> Result<DensityEstimate<T>> {
    match kind {
        EstimatorKind::Partial => fit_partial(s, filter, level),
        EstimatorKind::Complete => fit_complete(s, filter, level),
    }
}

/// Coefficients of the complete-data estimator after `steps` rounds of the
/// iterative bias correction.
///
/// Round `m` subtracts `[d_i = 0] F(1 - F) (1 + F + ... + F^m) / (1 - G)` from
/// each complete-data weight. The remainder relative to the partial-data
/// weight is `[d_i = 0] F^{m+2} / (1 - G)`, so the sequence converges to the
/// partial-data coefficients geometrically in `max F` over censored points.
pub fn bias_corrected_coefficients<T: Real>(
    s: &CensoredSample<T>,
    filter: &WaveletFilter<T>,
    level: u32,
    steps: usize,
) -> Result<Vec<T>> {
    check_fit_input(s, level)?;
    let r = rank_sample(s);
    let f = km_event(&r);
    let survival = censoring_survival_before(&r);
    let weights: Vec<T> = r
        .events
        .iter()
        .enumerate()
        .map(|(i, &event)| {
            let inv = T::one() / survival[i];
            if event {
                return inv;
            }
            let fi = f.cdf[i];
            let mut series = T::zero();
            let mut power = T::one();
            for _ in 0..=steps {
                series = series + power;
                power = power * fi;
            }
            inv - (T::one() - fi) * inv - fi * (T::one() - fi) * series * inv
        })
        .collect();
    Ok(weighted_coefficients(filter, level, &r.times, &weights))
}

impl<T: Real> DensityEstimate<T> {
    pub fn basis_row(&self, x: T) -> BasisRow<T> {
        self.filter.periodized_row(self.level, x)
    }

    /// Unprocessed projection `sum_k c_k phi^per_{J,k}(x)`.
    pub fn raw_at(&self, x: T) -> T {
        self.basis_row(x).dot(&self.coeffs)
    }

    pub fn at(&self, x: T) -> T {
        let v = self.raw_at(x);
        match self.postprocess {
            PostProcess::Raw => v,
            PostProcess::Clip => v.max(T::zero()),
            PostProcess::ClipRenorm => v.max(T::zero()) / self.renorm,
        }
    }

    /// Estimate at each normalized abscissa.
    pub fn evaluate(&self, xs: &[T]) -> Vec<T> {
        let width = self.filter.support_length() - 1;
        let mut window = vec![T::zero(); width];
        let mut scratch = vec![T::zero(); width];
        let mut entries = Vec::with_capacity(width);
        xs.iter()
            .map(|&x| {
                self.filter
                    .periodized_row_into(self.level, x, &mut window, &mut scratch, &mut entries);
                let v = entries
                    .iter()
                    .fold(T::zero(), |acc, &(k, p)| acc + self.coeffs[k] * p);
                match self.postprocess {
                    PostProcess::Raw => v,
                    PostProcess::Clip => v.max(T::zero()),
                    PostProcess::ClipRenorm => v.max(T::zero()) / self.renorm,
                }
            })
            .collect()
    }

    /// Density in original time units: `f(t / tau) / tau` on `[0, tau]`, zero
    /// elsewhere.
    pub fn denormalize_grid(&self, ts: &[T]) -> Vec<T> {
        let xs: Vec<T> = ts.iter().map(|&t| t / self.tau).collect();
        self.evaluate(&xs)
            .into_iter()
            .zip(ts)
            .map(|(v, &t)| {
                if t < T::zero() || t > self.tau {
                    T::zero()
                } else {
                    v / self.tau
                }
            })
            .collect()
    }

    /// `2^{-J/2} sum_k c_k`, the exact integral of the raw projection over `[0, 1]`.
    pub fn mass(&self) -> T {
        let sum = self.coeffs.iter().fold(T::zero(), |a, &c| a + c);
        sum * T::lit(2.0).powf(-T::lit(self.level as f64) / T::lit(2.0))
    }

    /// Trapezoid integral over `[0, 1]` of the (post-processed) estimate on
    /// `points + 1` equispaced abscissae.
    pub fn integral(&self, points: usize) -> T {
        let grid = uniform_grid::<T>(points + 1);
        trapezoid(&self.evaluate(&grid), T::one() / T::from_count(points))
    }

    /// Applies a post-processing mode to the raw projection.
    pub fn postprocess(&self, mode: PostProcess) -> Result<Self> {
        let mut out = self.clone();
        out.postprocess = mode;
        out.renorm = T::one();
        if mode == PostProcess::ClipRenorm {
            let mut clipped = out.clone();
            clipped.postprocess = PostProcess::Clip;
            let points = RENORM_POINTS.max(1usize << (self.level + 4));
            let mass = clipped.integral(points);
            if mass < T::lit(1e-12) {
                return Err(Error::ZeroMass);
            }
            out.renorm = mass;
        }
        Ok(out)
    }
}

/// `n` equispaced points from 0 to 1 inclusive.
pub fn uniform_grid<T: Real>(n: usize) -> Vec<T> {
    if n == 1 {
        return vec![T::zero()];
    }
    let step = T::one() / T::from_count(n - 1);
    (0..n).map(|i| T::from_count(i) * step).collect()
}

pub fn trapezoid<T: Real>(values: &[T], step: T) -> T {
    if values.len() < 2 {
        return T::zero();
    }
    let inner = values[1..values.len() - 1]
        .iter()
        .fold(T::zero(), |a, &v| a + v);
    let ends = (values[0] + values[values.len() - 1]) / T::lit(2.0);
    (inner + ends) * step
}

/// Plug-in variance of the partial-data estimate at one point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceEstimate<T> {
    pub x: T,
    pub value: T,
    /// `(1/N) sum_k s_kk phi_k(x)^2`.
    pub diagonal: T,
    /// `(2/N) sum_{k<l} s_kl phi_k(x) phi_l(x)`.
    pub cross: T,
}

impl<T: Real> VarianceEstimate<T> {
    /// Value clamped at zero for reporting.
    pub fn reported(&self) -> T {
        self.value.max(T::zero())
    }
}

/// Precomputed state for evaluating the plug-in variance on many points.
///
/// The coefficient covariance is estimated by the empirical second moment
/// `s_kl = (1/N) sum_i w_i^2 phi_k(Y_i) phi_l(Y_i) - c_k c_l`.
#[derive(Debug, Clone)]
pub struct VarianceModel<'a, T> {
    estimate: &'a DensityEstimate<T>,
    n: usize,
    /// `(w_i, row(Y_i))` for observations with nonzero weight.
    rows: Vec<(T, BasisRow<T>)>,
}

impl<'a, T: Real> VarianceModel<'a, T> {
    pub fn new(s: &CensoredSample<T>, e: &'a DensityEstimate<T>) -> Result<Self> {
        if e.kind != EstimatorKind::Partial {
            return Err(Error::KindMismatch {
                expected: EstimatorKind::Partial.to_string(),
                found: e.kind.to_string(),
            });
        }
        if s.tau().is_none() {
            return Err(Error::NotNormalized);
        }
        let r = rank_sample(s);
        let w = ipcw_weights(&r)?;
        let rows = r
            .times
            .iter()
            .zip(&w)
            .filter(|(_, &wi)| wi != T::zero())
            .map(|(&y, &wi)| (wi, e.filter.periodized_row(e.level, y)))
            .collect();
        Ok(Self {
            estimate: e,
            n: r.len(),
            rows,
        })
    }

    pub fn at(&self, x: T) -> VarianceEstimate<T> {
        let target = self.estimate.basis_row(x);
        let support = &target.entries;
        let m = support.len();
        // second moments over the support of row(x)
        let mut moments = vec![T::zero(); m * m];
        let mut local = vec![T::zero(); m];
        for (w, row) in &self.rows {
            let mut any = false;
            for (a, &(k, _)) in support.iter().enumerate() {
                local[a] = row.value(k);
                any |= local[a] != T::zero();
            }
            if !any {
                continue;
            }
            let w2 = *w * *w;
            for a in 0..m {
                if local[a] == T::zero() {
                    continue;
                }
                for b in a..m {
                    moments[a * m + b] = moments[a * m + b] + w2 * local[a] * local[b];
                }
            }
        }
        let inv_n = T::one() / T::from_count(self.n);
        let c = &self.estimate.coeffs;
        let mut diagonal = T::zero();
        let mut cross = T::zero();
        for (a, &(k, pk)) in support.iter().enumerate() {
            for (b, &(l, pl)) in support.iter().enumerate().skip(a) {
                let sigma = moments[a * m + b] * inv_n - c[k] * c[l];
                if a == b {
                    diagonal = diagonal + sigma * pk * pk;
                } else {
                    cross = cross + T::lit(2.0) * sigma * pk * pl;
                }
            }
        }
        diagonal = diagonal * inv_n;
        cross = cross * inv_n;
        VarianceEstimate {
            x,
            value: diagonal + cross,
            diagonal,
            cross,
        }
    }
}

/// Plug-in variance of a partial-data estimate at `x`.
pub fn pointwise_variance<T: Real>(
    s: &CensoredSample<T>,
    e: &DensityEstimate<T>,
    x: T,
) -> Result<VarianceEstimate<T>> {
    Ok(VarianceModel::new(s, e)?.at(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::{catalog, load_filter};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn sample(times: &[f64], delta: &[u8]) -> CensoredSample<f64> {
        CensoredSample::from_indicators(times.to_vec(), delta).unwrap()
    }

    fn three_point() -> CensoredSample<f64> {
        normalize(&sample(&[1.0, 2.0, 3.0], &[1, 0, 1])).unwrap()
    }

    /// Classic orthogonal-series coefficients, evaluated term by term.
    fn classic(s: &CensoredSample<f64>, f: &WaveletFilter<f64>, level: u32) -> Vec<f64> {
        let n = s.len() as f64;
        (0..1usize << level)
            .map(|k| {
                let idx = crate::wavelet::PeriodizedIndex::new(level, k).unwrap();
                s.times().iter().map(|&y| f.eval_periodized(idx, y)).sum::<f64>() / n
            })
            .collect()
    }

    fn random_sample(rng: &mut ChaCha8Rng, n: usize, censor_p: f64) -> CensoredSample<f64> {
        let times: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * 3.0).collect();
        let events: Vec<bool> = (0..n).map(|_| rng.random::<f64>() >= censor_p).collect();
        normalize(&CensoredSample::new(times, events).unwrap()).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let s = normalize(&sample(&[2.0, 4.0, 8.0], &[1, 1, 0])).unwrap();
        assert_eq!(s.times(), &[0.25, 0.5, 1.0]);
        assert_eq!(s.tau(), Some(&8.0));
        let one = normalize(&sample(&[1.0], &[1])).unwrap();
        assert_eq!(one.times(), &[1.0]);
        assert_eq!(one.tau(), Some(&1.0));
        assert_eq!(
            normalize(&sample(&[0.0, 0.0], &[1, 0])).unwrap_err(),
            Error::AllZeroSample
        );
    }

    #[test]
    fn level_rule() {
        // log2(100) = 6.6439, log2(ln 100) = 2.2031
        assert_eq!(select_level(100).unwrap(), 4);
        // 9.9658 - 2.7882
        assert_eq!(select_level(1000).unwrap(), 7);
        // 1 - log2(0.6931) = 1.5288
        assert_eq!(select_level(2).unwrap(), 1);
        assert_eq!(select_level_with(2, LogConvention::Base2).unwrap(), 1);
        // 6.6439 - log2(6.6439) = 3.91
        assert_eq!(select_level_with(100, LogConvention::Base2).unwrap(), 3);
        assert_eq!(select_level(1).unwrap_err(), Error::InvalidSampleSize(1));
        assert_eq!(select_level(usize::MAX).unwrap(), MAX_LEVEL);
    }

    #[test]
    fn requires_normalized_sample() {
        let f = load_filter("haar").unwrap();
        let raw = sample(&[1.0, 2.0], &[1, 1]);
        assert_eq!(fit_partial(&raw, &f, 0).unwrap_err(), Error::NotNormalized);
        let s = normalize(&raw).unwrap();
        assert_eq!(fit_partial(&s, &f, 17).unwrap_err(), Error::InvalidLevel(17));
    }

    #[test]
    fn haar_three_point_partial() {
        let f = load_filter("haar").unwrap();
        let e = fit_partial(&three_point(), &f, 0).unwrap();
        // (1/3)(1 + 0 + 2)
        assert_abs_diff_eq!(e.coeffs[0], 1.0, epsilon = 1e-15);
        assert_eq!(e.kind, EstimatorKind::Partial);
    }

    #[test]
    fn haar_three_point_complete() {
        let f = load_filter("haar").unwrap();
        let s = three_point();
        // left-limit censoring survival (1, 1, 1/2); F at the censored point 1/3
        let w = complete_weights(&rank_sample(&s)).unwrap();
        assert_abs_diff_eq!(w[0], 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[1], 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(w[2], 2.0, epsilon = 1e-15);
        let e = fit_complete(&s, &f, 0).unwrap();
        assert_abs_diff_eq!(e.coeffs[0], 10.0 / 9.0, epsilon = 1e-15);
    }

    #[test]
    fn all_censored_complete_is_zero() {
        let f = load_filter("daubechies3").unwrap();
        let s = normalize(&sample(&[0.2, 0.5, 0.9, 0.4], &[0, 0, 0, 0])).unwrap();
        let w = complete_weights(&rank_sample(&s)).unwrap();
        assert!(w.iter().all(|&v| v == 0.0));
        let e = fit_complete(&s, &f, 2).unwrap();
        assert!(e.coeffs.iter().all(|&c| c == 0.0));
    }

    #[test]
    fn uncensored_estimators_reduce_to_classic() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for name in ["haar", "daubechies4", "symmlet5", "coiflet2"] {
            let f = load_filter(name).unwrap();
            for level in [0, 2, 5] {
                let s = random_sample(&mut rng, 37, 0.0);
                let want = classic(&s, &f, level);
                let p = fit_partial(&s, &f, level).unwrap();
                let c = fit_complete(&s, &f, level).unwrap();
                for k in 0..want.len() {
                    assert_abs_diff_eq!(p.coeffs[k], want[k], epsilon = 1e-12);
                    assert_abs_diff_eq!(c.coeffs[k], want[k], epsilon = 1e-12);
                }
            }
        }
    }

    #[test]
    fn uniform_coefficients_near_partition_value() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let n = 5000;
        let times: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
        let s = CensoredSample::new(times, vec![true; n]).unwrap().with_tau(1.0).unwrap();
        for name in ["daubechies2", "daubechies6"] {
            let f = load_filter(name).unwrap();
            let e = fit_partial(&s, &f, 4).unwrap();
            for k in 0..16 {
                let idx = crate::wavelet::PeriodizedIndex::new(4, k).unwrap();
                let vals: Vec<f64> = s.times().iter().map(|&y| f.eval_periodized(idx, y)).collect();
                let mean = vals.iter().sum::<f64>() / n as f64;
                let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
                let se = (var / n as f64).sqrt();
                assert!((e.coeffs[k] - 0.25).abs() <= 3.0 * se, "{name} k={k}");
            }
        }
    }

    #[test]
    fn partial_mass_matches_km_total() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for name in catalog() {
            let f = load_filter(name).unwrap();
            for level in [0, 3, 6] {
                let s = random_sample(&mut rng, 25, 0.4);
                let e = fit_partial(&s, &f, level).unwrap();
                let total = km_event(&rank_sample(&s)).total_mass();
                assert_abs_diff_eq!(e.mass(), total, epsilon = 1e-10);
            }
        }
    }

    #[test]
    fn partial_equals_km_integral() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = load_filter("symmlet6").unwrap();
        let s = random_sample(&mut rng, 40, 0.35);
        let r = rank_sample(&s);
        let jumps = km_event(&r).jumps;
        let e = fit_partial(&s, &f, 4).unwrap();
        for k in 0..16 {
            let idx = crate::wavelet::PeriodizedIndex::new(4, k).unwrap();
            let integral: f64 = r
                .times
                .iter()
                .zip(&jumps)
                .map(|(&y, &dj)| dj * f.eval_periodized(idx, y))
                .sum();
            assert_abs_diff_eq!(e.coeffs[k], integral, epsilon = 1e-12);
        }
    }

    #[test]
    fn scale_equivariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f = load_filter("coiflet1").unwrap();
        let times: Vec<f64> = (0..30).map(|_| rng.random::<f64>() * 10.0).collect();
        let events: Vec<bool> = (0..30).map(|_| rng.random::<f64>() > 0.3).collect();
        let base = CensoredSample::new(times.clone(), events.clone()).unwrap();
        let a = fit_partial(&normalize(&base).unwrap(), &f, 3).unwrap();
        for c in [0.5, 3.0, 1024.0] {
            let scaled = CensoredSample::new(times.iter().map(|t| t * c).collect(), events.clone()).unwrap();
            let b = fit_partial(&normalize(&scaled).unwrap(), &f, 3).unwrap();
            for (x, y) in a.coeffs.iter().zip(&b.coeffs) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn bias_correction_series_approaches_partial() {
        let f = load_filter("daubechies3").unwrap();
        let s = normalize(&sample(
            &[0.1, 0.2, 0.25, 0.4, 0.5, 0.6, 0.7, 0.9],
            &[1, 0, 1, 0, 1, 0, 0, 0],
        ))
        .unwrap();
        let partial = fit_partial(&s, &f, 2).unwrap().coeffs;
        let complete = fit_complete(&s, &f, 2).unwrap().coeffs;
        let mut prev = f64::INFINITY;
        for steps in [0usize, 4, 16, 64] {
            let c = bias_corrected_coefficients(&s, &f, 2, steps).unwrap();
            let gap = c.iter().zip(&partial).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
            assert!(gap <= prev);
            prev = gap;
        }
        assert!(prev < 1e-12);
        let gap0 = complete.iter().zip(&partial).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        assert!(gap0 > 1e-3);
    }

    #[test]
    fn evaluate_basics() {
        let haar = load_filter("haar").unwrap();
        let grid = uniform_grid::<f64>(11);
        let mut e = fit_partial(&three_point(), &haar, 0).unwrap();
        for v in e.evaluate(&grid) {
            assert_abs_diff_eq!(v, 1.0, epsilon = 1e-15);
        }
        e.coeffs = vec![0.0];
        assert!(e.evaluate(&grid).iter().all(|&v| v == 0.0));
    }

    #[test]
    fn integral_equals_mass() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for name in ["daubechies2", "symmlet8", "coiflet3"] {
            let f = load_filter(name).unwrap();
            let s = random_sample(&mut rng, 50, 0.3);
            let e = fit_partial(&s, &f, 5).unwrap();
            assert_abs_diff_eq!(e.integral(1 << 14), e.mass(), epsilon = 1e-6);
        }
    }

    #[test]
    fn denormalized_density() {
        let haar = load_filter("haar").unwrap();
        let s = normalize(&sample(&[2.5, 5.0, 10.0], &[1, 1, 1])).unwrap();
        let e = fit_partial(&s, &haar, 0).unwrap();
        assert_eq!(e.tau, 10.0);
        for v in e.denormalize_grid(&[0.0, 3.0, 7.5, 9.99]) {
            assert_abs_diff_eq!(v, 0.1, epsilon = 1e-15);
        }
        assert_eq!(e.denormalize_grid(&[10.5])[0], 0.0);

        let unit = normalize(&sample(&[0.3, 1.0, 0.6], &[1, 0, 1])).unwrap();
        let f = load_filter("daubechies4").unwrap();
        let e = fit_partial(&unit, &f, 3).unwrap();
        let xs = uniform_grid::<f64>(33);
        assert_eq!(e.denormalize_grid(&xs), e.evaluate(&xs));
    }

    #[test]
    fn denormalized_mass_is_preserved() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = load_filter("symmlet4").unwrap();
        let times: Vec<f64> = (0..60).map(|_| rng.random::<f64>() * 7.0).collect();
        let events: Vec<bool> = (0..60).map(|_| rng.random::<f64>() > 0.3).collect();
        let s = normalize(&CensoredSample::new(times, events).unwrap()).unwrap();
        let e = fit_partial(&s, &f, 4).unwrap();
        let m = 1 << 14;
        let ts: Vec<f64> = (0..=m).map(|i| e.tau * i as f64 / m as f64).collect();
        let orig = trapezoid(&e.denormalize_grid(&ts), e.tau / m as f64);
        assert_abs_diff_eq!(orig, e.integral(m), epsilon = 1e-8);
    }

    #[test]
    fn postprocess_modes() {
        let haar = load_filter("haar").unwrap();
        let e = fit_partial(&three_point(), &haar, 0).unwrap();
        let clipped = e.postprocess(PostProcess::Clip).unwrap();
        let grid = uniform_grid::<f64>(17);
        assert_eq!(clipped.evaluate(&grid), e.evaluate(&grid));

        let mut zero = e.clone();
        zero.coeffs = vec![0.0];
        assert_eq!(zero.postprocess(PostProcess::ClipRenorm).unwrap_err(), Error::ZeroMass);

        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let f = load_filter("daubechies5").unwrap();
        let s = random_sample(&mut rng, 30, 0.5);
        let raw = fit_partial(&s, &f, 5).unwrap();
        let vals = raw.evaluate(&uniform_grid::<f64>(2049));
        assert!(vals.iter().any(|&v| v < 0.0), "expected a mixed-sign estimate");
        let renorm = raw.postprocess(PostProcess::ClipRenorm).unwrap();
        assert_abs_diff_eq!(renorm.integral(1 << 13), 1.0, epsilon = 1e-6);
        assert!(renorm.evaluate(&uniform_grid::<f64>(513)).iter().all(|&v| v >= 0.0));
    }

    #[test]
    fn variance_rejects_complete_kind() {
        let haar = load_filter("haar").unwrap();
        let s = three_point();
        let e = fit_complete(&s, &haar, 0).unwrap();
        assert!(matches!(
            pointwise_variance(&s, &e, 0.5),
            Err(Error::KindMismatch { .. })
        ));
    }

    #[test]
    fn variance_of_degenerate_sample_is_zero() {
        let haar = load_filter("haar").unwrap();
        let s = normalize(&sample(&[0.7, 0.7, 0.7, 0.7], &[1, 1, 1, 1])).unwrap();
        let e = fit_partial(&s, &haar, 0).unwrap();
        let v = pointwise_variance(&s, &e, 0.3).unwrap();
        assert_abs_diff_eq!(v.value, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn variance_matches_kernel_form() {
        // (1/N) [ (1/N) sum w^2 K(Y,x)^2 - f(x)^2 ]
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let f = load_filter("symmlet5").unwrap();
        let s = random_sample(&mut rng, 80, 0.3);
        let e = fit_partial(&s, &f, 3).unwrap();
        let r = rank_sample(&s);
        let w = ipcw_weights(&r).unwrap();
        let n = s.len() as f64;
        for x in [0.1, 0.45, 0.8] {
            let row_x = f.periodized_row(3, x).to_dense();
            let second: f64 = r
                .times
                .iter()
                .zip(&w)
                .map(|(&y, &wi)| {
                    let ry = f.periodized_row(3, y).to_dense();
                    let k: f64 = ry.iter().zip(&row_x).map(|(a, b)| a * b).sum();
                    wi * wi * k * k
                })
                .sum::<f64>()
                / n;
            let fx = e.raw_at(x);
            let want = (second - fx * fx) / n;
            let got = pointwise_variance(&s, &e, x).unwrap();
            assert_abs_diff_eq!(got.value, want, epsilon = 1e-12);
            assert!(got.value >= -1e-9);
            assert_abs_diff_eq!(got.value, got.diagonal + got.cross, epsilon = 1e-15);
        }
    }

    #[test]
    fn variance_scales_inversely_with_n() {
        let f = load_filter("daubechies4").unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let mut mean_var = |n: usize| {
            let reps = 20;
            (0..reps)
                .map(|_| {
                    let times: Vec<f64> = (0..n).map(|_| rng.random::<f64>()).collect();
                    let s = CensoredSample::new(times, vec![true; n]).unwrap().with_tau(1.0).unwrap();
                    let e = fit_partial(&s, &f, 4).unwrap();
                    pointwise_variance(&s, &e, 0.5).unwrap().value
                })
                .sum::<f64>()
                / reps as f64
        };
        for n in [2000usize, 8000] {
            let ratio = mean_var(2 * n) / mean_var(n);
            assert!((0.3..=0.8).contains(&ratio), "n={n} ratio={ratio}");
        }
    }
}
