//! Summary statistics and the Anderson–Darling normality test.

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

pub fn mean(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return f64::NAN;
    }
    xs.iter().sum::<f64>() / xs.len() as f64
}

/// Sample standard deviation with the `n - 1` divisor; zero for fewer than
/// two values.
pub fn std_dev(xs: &[f64]) -> f64 {
    if xs.len() < 2 {
        return 0.0;
    }
    let m = mean(xs);
    let ss: f64 = xs.iter().map(|x| (x - m) * (x - m)).sum();
    (ss / (xs.len() - 1) as f64).sqrt()
}

/// Empirical quantile with linear interpolation between order statistics
/// (`(n - 1) p` positioning). `sorted` must be ascending.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    match sorted.len() {
        0 => f64::NAN,
        1 => sorted[0],
        n => {
            let pos = p.clamp(0.0, 1.0) * (n - 1) as f64;
            let lo = pos.floor() as usize;
            let hi = (lo + 1).min(n - 1);
            let frac = pos - lo as f64;
            sorted[lo] + frac * (sorted[hi] - sorted[lo])
        }
    }
}

pub fn quantile(xs: &[f64], p: f64) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(f64::total_cmp);
    quantile_sorted(&v, p)
}

/// Anderson–Darling test of normality with mean and variance estimated from
/// the data.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AndersonDarling {
    pub n: usize,
    /// Raw `A^2`.
    pub statistic: f64,
    /// `A^2 (1 + 0.75/n + 2.25/n^2)`.
    pub adjusted: f64,
    pub alpha: f64,
    pub critical_value: f64,
    pub reject: bool,
}

/// Critical values of the adjusted statistic, composite normal case.
const AD_CRITICAL: [(f64, f64); 5] = [
    (0.15, 0.576),
    (0.10, 0.656),
    (0.05, 0.787),
    (0.025, 0.918),
    (0.01, 1.035),
];

/// Critical value for the closest tabulated level not larger than `alpha`.
pub fn anderson_darling_critical(alpha: f64) -> f64 {
    AD_CRITICAL
        .iter()
        .find(|(a, _)| *a <= alpha + 1e-12)
        .map(|&(_, c)| c)
        .unwrap_or(AD_CRITICAL[AD_CRITICAL.len() - 1].1)
}

pub fn anderson_darling_normal(xs: &[f64], alpha: f64) -> Option<AndersonDarling> {
    let n = xs.len();
    if n < 8 {
        return None;
    }
    let m = mean(xs);
    let s = std_dev(xs);
    if !(s > 0.0) || !s.is_finite() {
        return None;
    }
    let mut z: Vec<f64> = xs.iter().map(|x| (x - m) / s).collect();
    z.sort_by(f64::total_cmp);
    let std = Normal::new(0.0, 1.0).expect("unit normal");
    let nf = n as f64;
    let mut acc = 0.0;
    for i in 0..n {
        let lo = std.cdf(z[i]).clamp(1e-300, 1.0);
        let hi = (1.0 - std.cdf(z[n - 1 - i])).clamp(1e-300, 1.0);
        acc += (2.0 * (i + 1) as f64 - 1.0) * (lo.ln() + hi.ln());
    }
    let statistic = -nf - acc / nf;
    let adjusted = statistic * (1.0 + 0.75 / nf + 2.25 / (nf * nf));
    let critical_value = anderson_darling_critical(alpha);
    Some(AndersonDarling {
        n,
        statistic,
        adjusted,
        alpha,
        critical_value,
        reject: adjusted > critical_value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, Exp, Normal as NormalDist};

    #[test]
    fn moments() {
        let xs = [2.0, 4.0, 4.0, 4.0, 5.0, 5.0, 7.0, 9.0];
        assert_abs_diff_eq!(mean(&xs), 5.0);
        assert_abs_diff_eq!(std_dev(&xs), (32.0f64 / 7.0).sqrt(), epsilon = 1e-15);
        assert_eq!(std_dev(&[1.0]), 0.0);
    }

    #[test]
    fn quantiles_interpolate() {
        let xs = [3.0, 1.0, 2.0, 4.0, 5.0];
        assert_eq!(quantile(&xs, 0.0), 1.0);
        assert_eq!(quantile(&xs, 1.0), 5.0);
        assert_eq!(quantile(&xs, 0.5), 3.0);
        assert_abs_diff_eq!(quantile(&xs, 0.1), 1.4, epsilon = 1e-15);
    }

    #[test]
    fn known_statistic() {
        // reference value from a direct evaluation of the defining sum
        let xs = [-1.2, -0.5, 0.1, 0.3, 0.8, 1.4, 2.2, -0.9, 0.0, 0.6];
        let r = anderson_darling_normal(&xs, 0.05).unwrap();
        let m = mean(&xs);
        let s = std_dev(&xs);
        let mut z: Vec<f64> = xs.iter().map(|x| (x - m) / s).collect();
        z.sort_by(f64::total_cmp);
        let phi = |x: f64| 0.5 * (1.0 + erf_approx(x / 2f64.sqrt()));
        let n = z.len() as f64;
        let sum: f64 = (0..z.len())
            .map(|i| (2.0 * i as f64 + 1.0) * (phi(z[i]).ln() + (1.0 - phi(z[z.len() - 1 - i])).ln()))
            .sum();
        assert_abs_diff_eq!(r.statistic, -n - sum / n, epsilon = 1e-6);
        assert!(!r.reject);
    }

    // Abramowitz–Stegun 7.1.26, accurate to 1.5e-7
    fn erf_approx(x: f64) -> f64 {
        let t = 1.0 / (1.0 + 0.3275911 * x.abs());
        let y = 1.0
            - t * (0.254829592
                + t * (-0.284496736 + t * (1.421413741 + t * (-1.453152027 + t * 1.061405429))))
                * (-x * x).exp();
        y.copysign(x)
    }

    #[test]
    fn accepts_normal_rejects_exponential() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let normal = NormalDist::new(3.0, 2.0).unwrap();
        let xs: Vec<f64> = (0..1000).map(|_| normal.sample(&mut rng)).collect();
        assert!(!anderson_darling_normal(&xs, 0.01).unwrap().reject);
        let exp = Exp::new(1.0).unwrap();
        let ys: Vec<f64> = (0..1000).map(|_| exp.sample(&mut rng)).collect();
        assert!(anderson_darling_normal(&ys, 0.01).unwrap().reject);
    }

    #[test]
    fn critical_table() {
        assert_eq!(anderson_darling_critical(0.01), 1.035);
        assert_eq!(anderson_darling_critical(0.05), 0.787);
        assert!(anderson_darling_normal(&[1.0; 20], 0.05).is_none());
    }
}
