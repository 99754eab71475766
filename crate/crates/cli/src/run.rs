//! Estimate and simulate drivers.

use crate::config::{LevelChoice, Mode, RunConfig};
use crate::error::CliError;
use crate::ingest::ingest_csv;
use censwave::estimator::{fit, uniform_grid, VarianceModel};
use censwave::simulation::{format_sig17, run_study, write_report};
use censwave::{
    km_event, normalize, rank_sample, select_level_with, EstimatorKind, LogConvention, PostProcess,
    WaveletFilter,
};
use serde::Serialize;
use serde_json::json;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

/// Contents of `meta.json` in estimate mode.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateMeta {
    pub input: PathBuf,
    pub n: usize,
    pub tau: f64,
    pub level: u32,
    pub filter: String,
    pub estimator: EstimatorKind,
    pub postprocess: PostProcess,
    pub log_convention: LogConvention,
    pub grid_points: usize,
    pub censoring_proportion: f64,
    /// `2^{-J/2} sum_k c_k` of the raw estimate.
    pub mass: f64,
    /// Kaplan–Meier mass at the largest observation.
    pub km_mass: f64,
    /// Divisor applied by `clip_renorm`, otherwise 1.
    pub renormalization: f64,
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Executes the configured mode and returns a short JSON summary.
pub fn run(cfg: &RunConfig) -> Result<serde_json::Value, CliError> {
    cfg.validate()?;
    std::fs::create_dir_all(&cfg.output_dir).map_err(|e| CliError::io(&cfg.output_dir, e))?;
    match cfg.mode {
        Mode::Estimate => estimate(cfg),
        Mode::Simulate => simulate(cfg),
    }
}

fn estimate(cfg: &RunConfig) -> Result<serde_json::Value, CliError> {
    let input = cfg.input_path.clone().expect("validated");
    let raw = ingest_csv(&input)?;
    let sample = normalize(&raw)?;
    let tau = *sample.tau().expect("normalized");
    let filter = WaveletFilter::<f64>::load(&cfg.filter)?;
    let level = match cfg.level {
        LevelChoice::Auto => select_level_with(sample.len(), cfg.log_convention)?,
        LevelChoice::Fixed(j) => j,
    };
    let fitted = fit(cfg.estimator, &sample, &filter, level)?;
    let shown = fitted.postprocess(cfg.postprocess)?;
    let variance = match cfg.estimator {
        EstimatorKind::Partial => Some(VarianceModel::new(&sample, &fitted)?),
        EstimatorKind::Complete => None,
    };

    let xs = uniform_grid::<f64>(cfg.grid_points);
    let values = shown.evaluate(&xs);
    let mut csv = String::from("t_original,x_normalized,f_hat,f_hat_original_units,variance\n");
    for (&x, &v) in xs.iter().zip(&values) {
        let var = variance
            .as_ref()
            .map(|m| format_sig17(m.at(x).reported()))
            .unwrap_or_default();
        let _ = writeln!(
            csv,
            "{},{},{},{},{}",
            format_sig17(x * tau),
            format_sig17(x),
            format_sig17(v),
            format_sig17(v / tau),
            var
        );
    }
    write_file(&cfg.output_dir.join("density.csv"), &csv)?;

    let meta = EstimateMeta {
        input,
        n: sample.len(),
        tau,
        level,
        filter: filter.name().to_string(),
        estimator: cfg.estimator,
        postprocess: cfg.postprocess,
        log_convention: cfg.log_convention,
        grid_points: cfg.grid_points,
        censoring_proportion: sample.censored_fraction(),
        mass: fitted.mass(),
        km_mass: km_event(&rank_sample(&sample)).total_mass(),
        renormalization: shown.renorm,
    };
    let text = serde_json::to_string_pretty(&meta).expect("serializable");
    write_file(&cfg.output_dir.join("meta.json"), &text)?;
    Ok(json!({
        "mode": "estimate",
        "output_dir": cfg.output_dir,
        "n": meta.n,
        "level": level,
        "mass": meta.mass,
    }))
}

fn simulate(cfg: &RunConfig) -> Result<serde_json::Value, CliError> {
    let sim = cfg.simulation_config()?;
    let report = run_study(&sim)?;
    write_report(&report, &cfg.output_dir).map_err(|e| CliError::io(&cfg.output_dir, e))?;
    let amse: serde_json::Map<String, serde_json::Value> = report
        .kinds
        .iter()
        .map(|k| (k.kind.to_string(), json!(k.amse.mean)))
        .collect();
    Ok(json!({
        "mode": "simulate",
        "output_dir": cfg.output_dir,
        "level": report.level,
        "censoring_proportion": report.censoring_proportion,
        "mean_amse": amse,
    }))
}
