//! Brute-force reference computations used to check the production code:
//! quadrature projections of known densities, direct rational evaluation of
//! the Kaplan–Meier sums, and a cascade evaluation of the scaling function.

use crate::censoring::{km_censoring, km_event, rank_sample, CensoredSample};
use crate::error::{Error, Result};
use crate::scalar::Field;
use crate::wavelet::WaveletFilter;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

type Q = Ratio<i128>;

/// Largest sample size accepted by [`exhaustive_km_check`].
pub const EXHAUSTIVE_MAX_N: usize = 6;

/// Doubling tolerance of [`true_coefficients`].
pub const NONCONVERGENCE_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadratureRule {
    Trapezoid,
    Simpson,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Number of subintervals of `[0, 1]`.
    pub points: usize,
    pub rule: QuadratureRule,
}

impl QuadratureSpec {
    pub fn new(points: usize, rule: QuadratureRule) -> Result<Self> {
        if points < 1024 {
            return Err(Error::InvalidConfig(format!(
                "quadrature needs at least 1024 points, got {points}"
            )));
        }
        if rule == QuadratureRule::Simpson && points % 2 != 0 {
            return Err(Error::InvalidConfig(
                "simpson rule needs an even number of subintervals".into(),
            ));
        }
        Ok(Self { points, rule })
    }

    /// `max(1024, 2^{J+10})` points.
    pub fn for_level(level: u32, rule: QuadratureRule) -> Self {
        Self {
            points: 1024usize.max(1usize << (level + 10)),
            rule,
        }
    }

    fn weights(&self) -> Vec<f64> {
        let m = self.points;
        let step = 1.0 / m as f64;
        match self.rule {
            QuadratureRule::Trapezoid => (0..=m)
                .map(|i| if i == 0 || i == m { step / 2.0 } else { step })
                .collect(),
            QuadratureRule::Simpson => (0..=m)
                .map(|i| {
                    let c = if i == 0 || i == m {
                        1.0
                    } else if i % 2 == 1 {
                        4.0
                    } else {
                        2.0
                    };
                    c * step / 3.0
                })
                .collect(),
        }
    }

    fn abscissae(&self) -> impl Iterator<Item = f64> + '_ {
        let m = self.points;
        (0..=m).map(move |i| i as f64 / m as f64)
    }
}

fn project<F: Fn(f64) -> f64>(
    pdf: &F,
    filter: &WaveletFilter<f64>,
    level: u32,
    quad: &QuadratureSpec,
) -> Vec<f64> {
    let mut coeffs = vec![0.0; 1usize << level];
    for (x, w) in quad.abscissae().zip(quad.weights()) {
        let fx = pdf(x);
        if fx == 0.0 {
            continue;
        }
        for (k, v) in filter.periodized_row(level, x).entries {
            coeffs[k] += w * fx * v;
        }
    }
    coeffs
}

/// `c_{J,k} = int_0^1 f(x) phi^per_{J,k}(x) dx` by composite quadrature.
///
/// The rule is applied at `quad.points` and again at twice that resolution;
/// the finer result is returned unless the two differ by more than `1e-6`.
pub fn true_coefficients<F: Fn(f64) -> f64>(
    pdf: F,
    filter: &WaveletFilter<f64>,
    level: u32,
    quad: QuadratureSpec,
) -> Result<Vec<f64>> {
    let coarse = project(&pdf, filter, level, &quad);
    let fine_spec = QuadratureSpec {
        points: quad.points * 2,
        rule: quad.rule,
    };
    let fine = project(&pdf, filter, level, &fine_spec);
    let change = coarse
        .iter()
        .zip(&fine)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    if change > NONCONVERGENCE_TOLERANCE {
        return Err(Error::NonConvergent(change));
    }
    Ok(fine)
}

/// `|| f - P_J f ||_2` on `[0, 1]` by quadrature.
pub fn projection_error<F: Fn(f64) -> f64>(
    pdf: F,
    filter: &WaveletFilter<f64>,
    level: u32,
    quad: QuadratureSpec,
) -> Result<f64> {
    let coeffs = true_coefficients(&pdf, filter, level, quad)?;
    let fine = QuadratureSpec {
        points: quad.points * 2,
        rule: quad.rule,
    };
    let sq: f64 = fine
        .abscissae()
        .zip(fine.weights())
        .map(|(x, w)| {
            let approx = filter.periodized_row(level, x).dot(&coeffs);
            let d = pdf(x) - approx;
            w * d * d
        })
        .sum();
    Ok(sq.max(0.0).sqrt())
}

/// Outcome of [`exhaustive_km_check`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KmCheckReport {
    pub max_n: usize,
    /// Number of indicator patterns examined.
    pub cases: usize,
    /// Largest absolute difference between the module's curves and the
    /// rational reference, over both exact and `f64` arithmetic.
    pub max_discrepancy: f64,
    /// Cases where the exact-arithmetic curves were not identical.
    pub exact_mismatches: usize,
}

impl KmCheckReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.exact_mismatches == 0 && self.max_discrepancy <= tol
    }
}

/// Direct evaluation of the product-limit sums
/// `sum_{k<=i} d_k/(N-k+1) prod_{j<k} (1 - d_j/(N-j+1))` for the given
/// indicator sequence in time order.
pub fn km_sum_reference(delta: &[bool]) -> Vec<Q> {
    let n = delta.len() as i128;
    let d = |b: bool| if b { Q::one() } else { Q::zero() };
    (1..=delta.len())
        .map(|i| {
            let mut total = Q::zero();
            for k in 1..=i {
                let mut prod = Q::one();
                for j in 1..k {
                    prod *= Q::one() - d(delta[j - 1]) / Q::from_integer(n - j as i128 + 1);
                }
                total += d(delta[k - 1]) / Q::from_integer(n - k as i128 + 1) * prod;
            }
            total
        })
        .collect()
}

/// Enumerates every indicator pattern of length `1..=max_n` over the fixed
/// times `1, 2, ..., n` and compares both Kaplan–Meier curves against
/// [`km_sum_reference`]. The censoring curve uses the flipped indicators.
pub fn exhaustive_km_check(max_n: usize) -> Result<KmCheckReport> {
    if max_n > EXHAUSTIVE_MAX_N {
        return Err(Error::InvalidSampleSize(max_n));
    }
    let mut report = KmCheckReport {
        max_n,
        cases: 0,
        max_discrepancy: 0.0,
        exact_mismatches: 0,
    };
    for n in 1..=max_n {
        for mask in 0u32..(1 << n) {
            let delta: Vec<bool> = (0..n).map(|i| mask >> i & 1 == 1).collect();
            let flipped: Vec<bool> = delta.iter().map(|d| !d).collect();
            let want_f = km_sum_reference(&delta);
            let want_g = km_sum_reference(&flipped);

            let times_q: Vec<Q> = (1..=n).map(|t| Q::from_count(t)).collect();
            let rq = rank_sample(&CensoredSample::new(times_q, delta.clone())?);
            let (fq, gq) = (km_event(&rq), km_censoring(&rq));
            if fq.cdf != want_f || gq.cdf != want_g {
                report.exact_mismatches += 1;
            }

            let times_f: Vec<f64> = (1..=n).map(|t| t as f64).collect();
            let rf = rank_sample(&CensoredSample::new(times_f, delta.clone())?);
            let (ff, gf) = (km_event(&rf), km_censoring(&rf));
            for i in 0..n {
                for (got_q, got_f, want) in [
                    (fq.cdf[i], ff.cdf[i], want_f[i]),
                    (gq.cdf[i], gf.cdf[i], want_g[i]),
                ] {
                    let w = want.to_f64().unwrap_or(f64::NAN);
                    let dq = (got_q - want).abs().to_f64().unwrap_or(f64::INFINITY);
                    let df = (got_f - w).abs();
                    report.max_discrepancy = report.max_discrepancy.max(dq).max(df);
                }
            }
            report.cases += 1;
        }
    }
    Ok(report)
}

/// `phi(0), ..., phi(L-2)` by power iteration on the refinement operator
/// restricted to the integers.
pub fn integer_values_power(h: &[f64], iterations: usize) -> Vec<f64> {
    let n = h.len() - 1;
    let s2 = std::f64::consts::SQRT_2;
    let mut v = vec![1.0 / n as f64; n];
    for _ in 0..iterations {
        let mut next = vec![0.0; n];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, &vj) in v.iter().enumerate() {
                let r = 2 * i as isize - j as isize;
                if r >= 0 && (r as usize) < h.len() {
                    *slot += s2 * h[r as usize] * vj;
                }
            }
        }
        let s: f64 = next.iter().sum();
        v = next.into_iter().map(|x| x / s).collect();
    }
    v
}

/// `phi(m / 2^R)` for `m = 0, ..., (L-1) 2^R` by repeated dyadic refinement
/// from the integer values.
pub fn cascade_values(h: &[f64], resolution: u32) -> Vec<f64> {
    let len = h.len();
    let s2 = std::f64::consts::SQRT_2;
    let mut values = integer_values_power(h, 2000);
    values.push(0.0);
    for level in 1..=resolution {
        let count = (len - 1) * (1usize << level) + 1;
        let prev = &values;
        let next: Vec<f64> = (0..count)
            .map(|m| {
                if m % 2 == 0 {
                    return prev[m / 2];
                }
                // phi(m/2^level) = sqrt2 sum_r h_r phi((m - r 2^{level-1}) / 2^{level-1})
                let step = 1isize << (level - 1);
                (0..len)
                    .map(|r| {
                        let idx = m as isize - r as isize * step;
                        if idx >= 0 && (idx as usize) < prev.len() {
                            s2 * h[r] * prev[idx as usize]
                        } else {
                            0.0
                        }
                    })
                    .sum()
            })
            .collect();
        values = next;
    }
    values
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::wavelet::load_filter;
    use approx::assert_abs_diff_eq;

    #[test]
    fn reference_three_point() {
        let f = km_sum_reference(&[true, false, true]);
        assert_eq!(f, vec![Q::new(1, 3), Q::new(1, 3), Q::one()]);
        assert_eq!(km_sum_reference(&[true]), vec![Q::one()]);
        assert_eq!(km_sum_reference(&[false]), vec![Q::zero()]);
    }

    #[test]
    fn exhaustive_small() {
        let r = exhaustive_km_check(3).unwrap();
        assert_eq!(r.cases, 2 + 4 + 8);
        assert!(r.passed(1e-12), "{r:?}");
        assert!(exhaustive_km_check(7).is_err());
    }

    #[test]
    fn quadrature_spec_limits() {
        assert!(QuadratureSpec::new(512, QuadratureRule::Trapezoid).is_err());
        assert!(QuadratureSpec::new(1025, QuadratureRule::Simpson).is_err());
        assert_eq!(QuadratureSpec::for_level(3, QuadratureRule::Simpson).points, 1 << 13);
        assert_eq!(QuadratureSpec::for_level(0, QuadratureRule::Trapezoid).points, 1024);
    }

    #[test]
    fn uniform_density_coefficients() {
        for name in ["haar", "daubechies2", "symmlet5"] {
            let f = load_filter(name).unwrap();
            for level in [0, 3] {
                let quad = QuadratureSpec::for_level(level, QuadratureRule::Trapezoid);
                let c = true_coefficients(|_| 1.0, &f, level, quad).unwrap();
                for v in c {
                    assert_abs_diff_eq!(v, 2f64.powf(-(level as f64) / 2.0), epsilon = 1e-10);
                }
                let e = projection_error(|_| 1.0, &f, level, quad).unwrap();
                assert!(e < 1e-8, "{name} {e}");
            }
        }
        let f = load_filter("daubechies3").unwrap();
        let quad = QuadratureSpec::for_level(2, QuadratureRule::Simpson);
        assert!(true_coefficients(|_| 0.0, &f, 2, quad).unwrap().iter().all(|&c| c == 0.0));
    }

    #[test]
    fn haar_coefficient_is_interval_probability() {
        use statrs::distribution::{ContinuousCDF, Normal};
        let n = Normal::new(0.5, 0.15).unwrap();
        let pdf = |x: f64| (-(x - 0.5f64).powi(2) / (2.0 * 0.0225)).exp() / (0.15 * (2.0 * std::f64::consts::PI).sqrt());
        let f = load_filter("haar").unwrap();
        // first-order convergence across the jumps, so use a fine grid
        let quad = QuadratureSpec::new(1 << 20, QuadratureRule::Trapezoid).unwrap();
        let c = true_coefficients(pdf, &f, 3, quad).unwrap();
        let want = 2f64.powf(1.5) * (n.cdf(0.625) - n.cdf(0.5));
        assert_abs_diff_eq!(c[4], want, epsilon = 1e-6);
        // the jumps of the haar basis defeat the simpson weights
        let simpson = QuadratureSpec::for_level(3, QuadratureRule::Simpson);
        assert!(matches!(
            true_coefficients(pdf, &f, 3, simpson),
            Err(Error::NonConvergent(_))
        ));
    }

    #[test]
    fn rules_agree() {
        let pdf = |x: f64| 6.0 * x * (1.0 - x);
        let f = load_filter("coiflet2").unwrap();
        for level in [2, 4] {
            let a = true_coefficients(pdf, &f, level, QuadratureSpec::for_level(level, QuadratureRule::Trapezoid)).unwrap();
            let b = true_coefficients(pdf, &f, level, QuadratureSpec::for_level(level, QuadratureRule::Simpson)).unwrap();
            for (x, y) in a.iter().zip(&b) {
                assert_abs_diff_eq!(x, y, epsilon = 1e-7);
            }
        }
    }

    #[test]
    fn cascade_matches_integer_values() {
        let f = load_filter("daubechies2").unwrap();
        let v = cascade_values(f.coefficients(), 3);
        assert_eq!(v.len(), 3 * 8 + 1);
        assert_abs_diff_eq!(v[8], (1.0 + 3f64.sqrt()) / 2.0, epsilon = 1e-12);
        assert_abs_diff_eq!(v[4], f.eval(0.5), epsilon = 1e-12);
        assert!(v.iter().all(|x| x.is_finite()));
    }
}
