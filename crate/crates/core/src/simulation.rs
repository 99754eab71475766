//! Replication studies under exponential censoring.
//!
//! Each replication draws `X` from a normal mixture and `T ~ Exp(lambda)`,
//! observes `Y = min(X, T)` and `d = [X <= T]`, normalizes by the sample
//! maximum and fits the requested estimators. Replication `b` uses the ChaCha20
//! stream `b` of the study seed, so results do not depend on scheduling.

use crate::censoring::CensoredSample;
use crate::error::{Error, Result};
use crate::estimator::{
    fit, normalize, select_level_with, uniform_grid, EstimatorKind, LogConvention,
};
use crate::stats::{self, AndersonDarling};
use crate::wavelet::WaveletFilter;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, Exp, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::io::Write;
use std::path::Path;

/// Grid size used when none is given.
pub const DEFAULT_GRID_POINTS: usize = 512;

/// Replication count used when none is given.
pub const DEFAULT_REPLICATIONS: usize = 1000;

pub const BASELINES: [&str; 5] = ["delta", "normal", "bimodal", "strata", "multimodal"];

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub weight: f64,
    pub mean: f64,
    pub std_dev: f64,
}

impl MixtureComponent {
    pub fn pdf(&self, x: f64) -> f64 {
        let z = (x - self.mean) / self.std_dev;
        (-0.5 * z * z).exp() / (self.std_dev * (2.0 * std::f64::consts::PI).sqrt())
    }
}

/// Normal mixture lifetime distribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BaselineDistribution {
    pub name: String,
    pub components: Vec<MixtureComponent>,
}

impl BaselineDistribution {
    pub fn new(name: &str, components: Vec<(f64, f64, f64)>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidConfig("mixture has no components".into()));
        }
        let mut total = 0.0;
        for &(w, _, s) in &components {
            if !(w > 0.0) || !(s > 0.0) {
                return Err(Error::InvalidConfig(format!(
                    "component weight {w} and std dev {s} must be positive"
                )));
            }
            total += w;
        }
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidConfig(format!("weights sum to {total}")));
        }
        Ok(Self {
            name: name.to_string(),
            components: components
                .into_iter()
                .map(|(weight, mean, std_dev)| MixtureComponent {
                    weight,
                    mean,
                    std_dev,
                })
                .collect(),
        })
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.components.iter().map(|c| c.weight * c.pdf(x)).sum()
    }

    /// One lifetime: pick a component by weight, then draw from it. Negative
    /// draws are rejected so lifetimes stay nonnegative.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        loop {
            let u: f64 = rng.random();
            let mut acc = 0.0;
            let mut chosen = self.components.len() - 1;
            for (i, c) in self.components.iter().enumerate() {
                acc += c.weight;
                if u < acc {
                    chosen = i;
                    break;
                }
            }
            let c = &self.components[chosen];
            let x = Normal::new(c.mean, c.std_dev)
                .expect("validated std dev")
                .sample(rng);
            if x >= 0.0 {
                return x;
            }
        }
    }
}

pub fn make_baseline(name: &str) -> Result<BaselineDistribution> {
    let third = 1.0 / 3.0;
    let components = match name.trim().to_ascii_lowercase().as_str() {
        "delta" => vec![(1.0, 0.5, 0.02)],
        "normal" => vec![(1.0, 0.5, 0.15)],
        "bimodal" => vec![(0.5, 0.4, 0.12), (0.5, 0.7, 0.08)],
        "strata" => vec![(0.5, 0.2, 0.06), (0.5, 0.7, 0.08)],
        "multimodal" => vec![(third, 0.2, 0.06), (third, 0.5, 0.05), (third, 0.7, 0.05)],
        _ => return Err(Error::UnknownBaseline(name.to_string())),
    };
    let mut b = BaselineDistribution::new(name.trim(), components)?;
    b.name = b.name.to_ascii_lowercase();
    Ok(b)
}

pub fn baseline_pdf(b: &BaselineDistribution, x: f64) -> f64 {
    b.pdf(x)
}

/// Where the per-replication squared error is averaged.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorPoints {
    /// The fixed evaluation grid.
    #[default]
    Grid,
    /// The replication's own normalized observations.
    Sample,
}

/// Axis on which estimate and truth are compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TruthScale {
    /// The estimate on the normalized axis against the mixture pdf at the
    /// same abscissa.
    #[default]
    Normalized,
    /// The estimate mapped back by `f(x / tau) / tau`, zero beyond `tau`.
    Original,
}

/// How `lambda` parameterizes the exponential censoring law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CensoringScale {
    /// `lambda` is the mean of `T`. With `lambda = 0.8` this censors about 45%
    /// of the normal baseline.
    #[default]
    Mean,
    /// `lambda` is the rate of `T`; 0.8 censors about 32% of the normal baseline.
    Rate,
}

impl CensoringScale {
    pub fn rate(self, lambda: f64) -> f64 {
        match self {
            CensoringScale::Mean => 1.0 / lambda,
            CensoringScale::Rate => lambda,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub baseline: BaselineDistribution,
    pub n: usize,
    pub replications: usize,
    pub lambda: f64,
    #[serde(default)]
    pub censoring_scale: CensoringScale,
    pub filter: String,
    pub seed: u64,
    pub grid: Vec<f64>,
    pub estimator_kinds: Vec<EstimatorKind>,
    /// Fixed resolution level; chosen from `n` when absent.
    #[serde(default)]
    pub level: Option<u32>,
    #[serde(default)]
    pub log_convention: LogConvention,
    #[serde(default)]
    pub error_points: ErrorPoints,
    #[serde(default)]
    pub truth_scale: TruthScale,
    /// Abscissae at which every replication's estimate is recorded.
    #[serde(default)]
    pub probes: Vec<f64>,
}

impl SimulationConfig {
    /// Both estimators, symmlet5, 512-point grid, 1000 replications.
    pub fn new(baseline: BaselineDistribution, n: usize, lambda: f64, seed: u64) -> Self {
        Self {
            baseline,
            n,
            replications: DEFAULT_REPLICATIONS,
            lambda,
            censoring_scale: CensoringScale::Mean,
            filter: "symmlet5".into(),
            seed,
            grid: uniform_grid(DEFAULT_GRID_POINTS),
            estimator_kinds: vec![EstimatorKind::Partial, EstimatorKind::Complete],
            level: None,
            log_convention: LogConvention::Natural,
            error_points: ErrorPoints::Grid,
            truth_scale: TruthScale::Normalized,
            probes: Vec::new(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidConfig(m));
        if self.n < 2 {
            return bad(format!("sample size {} must be at least 2", self.n));
        }
        if self.replications < 1 {
            return bad("at least one replication is required".into());
        }
        if !(self.lambda > 0.0) || !self.lambda.is_finite() {
            return bad(format!("censoring parameter {} must be positive", self.lambda));
        }
        if self.grid.is_empty() {
            return bad("evaluation grid is empty".into());
        }
        if self.grid.windows(2).any(|w| !(w[0] <= w[1])) {
            return bad("evaluation grid must be sorted".into());
        }
        if self
            .grid
            .iter()
            .chain(&self.probes)
            .any(|x| !(0.0..=1.0).contains(x))
        {
            return bad("grid and probe points must lie in [0, 1]".into());
        }
        if self.estimator_kinds.is_empty() {
            return bad("no estimator kinds requested".into());
        }
        if let Some(j) = self.level {
            if j > crate::estimator::MAX_LEVEL {
                return Err(Error::InvalidLevel(j));
            }
        }
        WaveletFilter::<f64>::load(&self.filter)?;
        Ok(())
    }

    pub fn resolved_level(&self) -> Result<u32> {
        match self.level {
            Some(j) => Ok(j),
            None => select_level_with(self.n, self.log_convention),
        }
    }
}

fn replication_rng(seed: u64, replication: usize) -> ChaCha20Rng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(replication as u64);
    rng
}

/// Draws one unnormalized censored sample.
pub fn generate_replication(cfg: &SimulationConfig, replication: usize) -> Result<CensoredSample<f64>> {
    let exp = Exp::new(cfg.censoring_scale.rate(cfg.lambda))
        .map_err(|e| Error::InvalidConfig(format!("censoring rate: {e}")))?;
    let mut rng = replication_rng(cfg.seed, replication);
    let mut times = Vec::with_capacity(cfg.n);
    let mut events = Vec::with_capacity(cfg.n);
    for _ in 0..cfg.n {
        let x = cfg.baseline.sample(&mut rng);
        let t: f64 = exp.sample(&mut rng);
        times.push(x.min(t));
        events.push(x <= t);
    }
    CensoredSample::new(times, events)
}

/// Produces estimate values at normalized abscissae for one replication.
pub trait CurveEstimator: Sync {
    fn curve(
        &self,
        sample: &CensoredSample<f64>,
        kind: EstimatorKind,
        points: &[f64],
    ) -> Result<Vec<f64>>;
}

impl<F> CurveEstimator for F
where
    F: Fn(&CensoredSample<f64>, EstimatorKind, &[f64]) -> Result<Vec<f64>> + Sync,
{
    fn curve(&self, s: &CensoredSample<f64>, kind: EstimatorKind, points: &[f64]) -> Result<Vec<f64>> {
        self(s, kind, points)
    }
}

/// Linear wavelet estimator with raw (unclipped) output.
#[derive(Debug, Clone)]
pub struct WaveletCurve {
    pub filter: WaveletFilter<f64>,
    pub level: u32,
}

impl CurveEstimator for WaveletCurve {
    fn curve(&self, s: &CensoredSample<f64>, kind: EstimatorKind, points: &[f64]) -> Result<Vec<f64>> {
        Ok(fit(kind, s, &self.filter, self.level)?.evaluate(points))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmseSummary {
    pub mean: f64,
    pub std_dev: f64,
    pub min: f64,
    pub max: f64,
}

/// Estimates recorded at one probe abscissa.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProbeSeries {
    pub x: f64,
    pub true_pdf: f64,
    pub values: Vec<f64>,
    pub mean: f64,
    pub std_dev: f64,
    /// Normality of the standardized values at the 1% level.
    pub anderson_darling: Option<AndersonDarling>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KindReport {
    pub kind: EstimatorKind,
    pub amse: AmseSummary,
    pub replication_mse: Vec<f64>,
    pub mean_curve: Vec<f64>,
    pub q025: Vec<f64>,
    pub q975: Vec<f64>,
    pub best_replication: usize,
    pub best_curve: Vec<f64>,
    pub probes: Vec<ProbeSeries>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimulationReport {
    pub baseline: String,
    pub n: usize,
    pub replications: usize,
    pub lambda: f64,
    pub censoring_scale: CensoringScale,
    pub filter: String,
    pub level: u32,
    /// Study seed; replication `b` used ChaCha20 stream `b`.
    pub seed: u64,
    pub error_points: ErrorPoints,
    pub truth_scale: TruthScale,
    pub grid: Vec<f64>,
    pub true_pdf: Vec<f64>,
    /// Mean fraction of censored observations across replications.
    pub censoring_proportion: f64,
    pub kinds: Vec<KindReport>,
}

impl SimulationReport {
    pub fn kind(&self, kind: EstimatorKind) -> Option<&KindReport> {
        self.kinds.iter().find(|k| k.kind == kind)
    }
}

struct Replication {
    censored: f64,
    /// Per kind: (mse, grid values, probe values).
    fits: Vec<(f64, Vec<f64>, Vec<f64>)>,
}

pub fn run_study(cfg: &SimulationConfig) -> Result<SimulationReport> {
    cfg.validate()?;
    let estimator = WaveletCurve {
        filter: WaveletFilter::load(&cfg.filter)?,
        level: cfg.resolved_level()?,
    };
    run_study_with(cfg, &estimator)
}

/// Runs a study with an arbitrary curve estimator.
pub fn run_study_with<E: CurveEstimator>(cfg: &SimulationConfig, estimator: &E) -> Result<SimulationReport> {
    cfg.validate()?;
    let level = cfg.resolved_level()?;
    let truth = |x: f64| cfg.baseline.pdf(x);

    let one = |b: usize| -> Result<Replication> {
        let raw = generate_replication(cfg, b)?;
        let s = normalize(&raw)?;
        let tau = *s.tau().expect("normalized");
        let error_at: Vec<f64> = match cfg.error_points {
            ErrorPoints::Grid => cfg.grid.clone(),
            ErrorPoints::Sample => s.times().to_vec(),
        };
        let mut points = cfg.grid.clone();
        points.extend_from_slice(&cfg.probes);
        if cfg.error_points == ErrorPoints::Sample {
            points.extend_from_slice(&error_at);
        }
        let (mapped, keep): (Vec<f64>, Vec<bool>) = match cfg.truth_scale {
            TruthScale::Normalized => (points.clone(), vec![true; points.len()]),
            TruthScale::Original => points
                .iter()
                .map(|&x| ((x / tau).min(1.0), x <= tau))
                .unzip(),
        };
        let scale = match cfg.truth_scale {
            TruthScale::Normalized => 1.0,
            TruthScale::Original => 1.0 / tau,
        };
        let mut fits = Vec::with_capacity(cfg.estimator_kinds.len());
        for &kind in &cfg.estimator_kinds {
            let values: Vec<f64> = estimator
                .curve(&s, kind, &mapped)?
                .into_iter()
                .zip(&keep)
                .map(|(v, &k)| if k { v * scale } else { 0.0 })
                .collect();
            let g = cfg.grid.len();
            let p = cfg.probes.len();
            let err_values = match cfg.error_points {
                ErrorPoints::Grid => &values[..g],
                ErrorPoints::Sample => &values[g + p..],
            };
            let mse = err_values
                .iter()
                .zip(&error_at)
                .map(|(v, &x)| (truth(x) - v).powi(2))
                .sum::<f64>()
                / error_at.len() as f64;
            fits.push((mse, values[..g].to_vec(), values[g..g + p].to_vec()));
        }
        Ok(Replication {
            censored: s.censored_fraction(),
            fits,
        })
    };

    let reps: Vec<Replication> = (0..cfg.replications)
        .into_par_iter()
        .map(one)
        .collect::<Result<_>>()?;

    let true_pdf: Vec<f64> = cfg.grid.iter().map(|&x| truth(x)).collect();
    let censoring_proportion = reps.iter().map(|r| r.censored).sum::<f64>() / reps.len() as f64;
    let mut kinds = Vec::new();
    for (ki, &kind) in cfg.estimator_kinds.iter().enumerate() {
        let mses: Vec<f64> = reps.iter().map(|r| r.fits[ki].0).collect();
        let (best_replication, _) = mses
            .iter()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, &m)| if m < acc.1 { (i, m) } else { acc });
        let g = cfg.grid.len();
        let mut mean_curve = vec![0.0; g];
        let mut q025 = vec![0.0; g];
        let mut q975 = vec![0.0; g];
        let mut column = vec![0.0; reps.len()];
        for j in 0..g {
            for (slot, r) in column.iter_mut().zip(&reps) {
                *slot = r.fits[ki].1[j];
            }
            mean_curve[j] = stats::mean(&column);
            column.sort_by(f64::total_cmp);
            q025[j] = stats::quantile_sorted(&column, 0.025);
            q975[j] = stats::quantile_sorted(&column, 0.975);
        }
        let probes = cfg
            .probes
            .iter()
            .enumerate()
            .map(|(pi, &x)| {
                let values: Vec<f64> = reps.iter().map(|r| r.fits[ki].2[pi]).collect();
                ProbeSeries {
                    x,
                    true_pdf: truth(x),
                    mean: stats::mean(&values),
                    std_dev: stats::std_dev(&values),
                    anderson_darling: stats::anderson_darling_normal(&values, 0.01),
                    values,
                }
            })
            .collect();
        kinds.push(KindReport {
            kind,
            amse: AmseSummary {
                mean: stats::mean(&mses),
                std_dev: stats::std_dev(&mses),
                min: mses.iter().copied().fold(f64::INFINITY, f64::min),
                max: mses.iter().copied().fold(f64::NEG_INFINITY, f64::max),
            },
            best_curve: reps[best_replication].fits[ki].1.clone(),
            best_replication,
            replication_mse: mses,
            mean_curve,
            q025,
            q975,
            probes,
        });
    }
    Ok(SimulationReport {
        baseline: cfg.baseline.name.clone(),
        n: cfg.n,
        replications: cfg.replications,
        lambda: cfg.lambda,
        censoring_scale: cfg.censoring_scale,
        filter: cfg.filter.clone(),
        level,
        seed: cfg.seed,
        error_points: cfg.error_points,
        truth_scale: cfg.truth_scale,
        grid: cfg.grid.clone(),
        true_pdf,
        censoring_proportion,
        kinds,
    })
}

/// `v` with 17 significant digits.
pub fn format_sig17(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn curves_csv(report: &SimulationReport, kind: EstimatorKind) -> Option<String> {
    let k = report.kind(kind)?;
    let mut out = String::from("x,true_pdf,mean_estimate,q025,q975,best_estimate\n");
    for j in 0..report.grid.len() {
        let row = [
            report.grid[j],
            report.true_pdf[j],
            k.mean_curve[j],
            k.q025[j],
            k.q975[j],
            k.best_curve[j],
        ];
        let cells: Vec<String> = row.iter().map(|&v| format_sig17(v)).collect();
        let _ = writeln!(out, "{}", cells.join(","));
    }
    Some(out)
}

/// Writes `report.json` and one `curves_<kind>.csv` per estimator kind.
pub fn write_report(report: &SimulationReport, dir: &Path) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    let json = serde_json::to_string_pretty(report).map_err(std::io::Error::other)?;
    std::fs::File::create(dir.join("report.json"))?.write_all(json.as_bytes())?;
    for k in &report.kinds {
        let csv = curves_csv(report, k.kind).expect("kind present");
        std::fs::write(dir.join(format!("curves_{}.csv", k.kind)), csv)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn small(name: &str, n: usize, b: usize, lambda: f64) -> SimulationConfig {
        let mut cfg = SimulationConfig::new(make_baseline(name).unwrap(), n, lambda, 7);
        cfg.replications = b;
        cfg.grid = uniform_grid(65);
        cfg
    }

    #[test]
    fn baselines() {
        let b = make_baseline("bimodal").unwrap();
        assert_eq!(b.components.len(), 2);
        assert_eq!(b.components[1], MixtureComponent { weight: 0.5, mean: 0.7, std_dev: 0.08 });
        let m = make_baseline("multimodal").unwrap();
        assert_eq!(m.components.len(), 3);
        assert!(m.components.iter().all(|c| (c.weight - 1.0 / 3.0).abs() < 1e-15));
        assert_eq!(
            make_baseline("cauchy").unwrap_err(),
            Error::UnknownBaseline("cauchy".into())
        );
        let n = make_baseline("normal").unwrap();
        assert_abs_diff_eq!(n.pdf(0.5), 1.0 / (0.15 * (2.0 * std::f64::consts::PI).sqrt()), epsilon = 1e-12);
        assert_abs_diff_eq!(n.pdf(0.5), 2.6596, epsilon = 1e-4);
        let want = 0.5 * b.components[0].pdf(0.4) + 0.5 * b.components[1].pdf(0.4);
        assert_eq!(baseline_pdf(&b, 0.4), want);
    }

    #[test]
    fn pdfs_integrate_to_one() {
        for name in BASELINES {
            let b = make_baseline(name).unwrap();
            let m = 200_000;
            let (lo, hi) = (-1.0, 2.0);
            let h = (hi - lo) / m as f64;
            let total: f64 = (0..=m)
                .map(|i| {
                    let w = if i == 0 || i == m { 0.5 } else { 1.0 };
                    w * b.pdf(lo + i as f64 * h)
                })
                .sum::<f64>()
                * h;
            assert_abs_diff_eq!(total, 1.0, epsilon = 1e-8);
        }
    }

    #[test]
    fn invalid_mixtures() {
        assert!(BaselineDistribution::new("x", vec![(0.5, 0.0, 1.0)]).is_err());
        assert!(BaselineDistribution::new("x", vec![(1.0, 0.0, 0.0)]).is_err());
        assert!(BaselineDistribution::new("x", vec![]).is_err());
    }

    #[test]
    fn config_validation() {
        let mut cfg = small("normal", 10, 2, 0.8);
        assert!(cfg.validate().is_ok());
        cfg.n = 1;
        assert!(cfg.validate().is_err());
        let mut cfg = small("normal", 10, 2, 0.0);
        assert!(cfg.validate().is_err());
        cfg.lambda = 1.0;
        cfg.grid = vec![0.5, 0.2];
        assert!(cfg.validate().is_err());
        cfg.grid = vec![];
        assert!(cfg.validate().is_err());
        let mut cfg = small("normal", 10, 0, 1.0);
        assert!(cfg.validate().is_err());
        cfg.replications = 1;
        cfg.filter = "sym99".into();
        assert!(matches!(cfg.validate(), Err(Error::UnknownFilter { .. })));
    }

    #[test]
    fn replication_is_deterministic_and_distinct() {
        let cfg = small("bimodal", 50, 1, 0.8);
        assert_eq!(generate_replication(&cfg, 3).unwrap(), generate_replication(&cfg, 3).unwrap());
        assert_ne!(generate_replication(&cfg, 3).unwrap(), generate_replication(&cfg, 4).unwrap());
    }

    #[test]
    fn censoring_limits() {
        let mut heavy = small("normal", 2000, 1, 1e6);
        heavy.censoring_scale = CensoringScale::Rate;
        assert!(generate_replication(&heavy, 0).unwrap().censored_fraction() > 0.99);
        let mut none = small("normal", 2000, 1, 1e-9);
        none.censoring_scale = CensoringScale::Rate;
        assert_eq!(generate_replication(&none, 0).unwrap().censored_fraction(), 0.0);
        let mut paper = small("normal", 10_000, 1, 0.8);
        let p = generate_replication(&paper, 0).unwrap().censored_fraction();
        assert!((0.35..=0.55).contains(&p), "{p}");
        // 1 - E exp(-0.8 X) for X ~ N(0.5, 0.15^2)
        paper.censoring_scale = CensoringScale::Rate;
        let p = generate_replication(&paper, 0).unwrap().censored_fraction();
        assert!((p - 0.325).abs() < 0.02, "{p}");
    }

    #[test]
    fn stub_estimator_at_truth_has_zero_amse() {
        let mut cfg = small("normal", 20, 1, 0.8);
        cfg.grid = vec![0.5];
        let b = cfg.baseline.clone();
        let exact = move |_: &CensoredSample<f64>, _: EstimatorKind, xs: &[f64]| -> Result<Vec<f64>> {
            Ok(xs.iter().map(|&x| b.pdf(x)).collect())
        };
        let r = run_study_with(&cfg, &exact).unwrap();
        for k in &r.kinds {
            assert_eq!(k.amse.mean, 0.0);
        }
    }

    #[test]
    fn zero_estimator_mse_is_mean_square_truth() {
        let cfg = small("strata", 20, 3, 0.8);
        let zero = |_: &CensoredSample<f64>, _: EstimatorKind, xs: &[f64]| -> Result<Vec<f64>> {
            Ok(vec![0.0; xs.len()])
        };
        let r = run_study_with(&cfg, &zero).unwrap();
        let want = cfg.grid.iter().map(|&x| cfg.baseline.pdf(x).powi(2)).sum::<f64>() / cfg.grid.len() as f64;
        for k in &r.kinds {
            for &m in &k.replication_mse {
                assert_abs_diff_eq!(m, want, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn study_is_deterministic() {
        let mut cfg = small("normal", 100, 8, 0.8);
        cfg.probes = vec![0.7];
        let a = run_study(&cfg).unwrap();
        let b = run_study(&cfg).unwrap();
        assert_eq!(a, b);
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        for k in &a.kinds {
            assert!(k.amse.min <= k.amse.mean && k.amse.mean <= k.amse.max);
            assert!(k.q025.iter().zip(&k.q975).all(|(lo, hi)| lo <= hi));
            assert_eq!(k.probes[0].values.len(), 8);
            assert_eq!(k.best_curve.len(), cfg.grid.len());
        }
        assert_eq!(a.level, 4);
    }

    #[test]
    fn study_options() {
        let mut cfg = small("bimodal", 200, 4, 0.8);
        cfg.error_points = ErrorPoints::Sample;
        cfg.truth_scale = TruthScale::Original;
        cfg.estimator_kinds = vec![EstimatorKind::Partial];
        let r = run_study(&cfg).unwrap();
        assert_eq!(r.kinds.len(), 1);
        assert!(r.kind(EstimatorKind::Complete).is_none());
        assert!(r.kinds[0].amse.mean.is_finite());
    }

    #[test]
    fn csv_layout() {
        let cfg = small("normal", 30, 2, 0.8);
        let r = run_study(&cfg).unwrap();
        let csv = curves_csv(&r, EstimatorKind::Partial).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "x,true_pdf,mean_estimate,q025,q975,best_estimate");
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 6);
        assert_eq!(first[0].parse::<f64>().unwrap(), 0.0);
        assert_eq!(csv.lines().count(), cfg.grid.len() + 1);
        assert_eq!(format_sig17(0.1), "1.0000000000000001e-1");
    }
}
