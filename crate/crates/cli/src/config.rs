//! Run configuration: an optional TOML file plus command-line overrides.
//!
//! ```toml
//! mode = "estimate"            # or "simulate"
//! input_path = "data.csv"
//! filter = "symmlet5"
//! level = "auto"               # or an integer in [0, 16]
//! estimator = "partial"        # or "complete"
//! postprocess = "clip"         # raw | clip | clip_renorm
//! grid_points = 512
//! output_dir = "out"
//! log_convention = "natural"   # or "base2"
//!
//! [simulate]
//! baseline = "normal"
//! n = 100
//! replications = 1000
//! lambda = 0.8
//! censoring_scale = "mean"     # or "rate"
//! seed = 1
//! estimator_kinds = ["partial", "complete"]
//! error_points = "grid"        # or "sample"
//! truth_scale = "normalized"   # or "original"
//! probes = [0.7]
//! ```

use crate::error::CliError;
use censwave::estimator::{uniform_grid, MAX_LEVEL};
use censwave::simulation::{
    make_baseline, CensoringScale, ErrorPoints, SimulationConfig, TruthScale, DEFAULT_GRID_POINTS,
    DEFAULT_REPLICATIONS,
};
use censwave::{EstimatorKind, LogConvention, PostProcess};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Estimate,
    Simulate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LevelChoice {
    Auto,
    Fixed(u32),
}

impl std::str::FromStr for LevelChoice {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("auto") {
            return Ok(LevelChoice::Auto);
        }
        s.parse::<u32>()
            .map(LevelChoice::Fixed)
            .map_err(|_| format!("level must be \"auto\" or an integer, got {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Partial,
    Complete,
}

impl From<KindArg> for EstimatorKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Partial => EstimatorKind::Partial,
            KindArg::Complete => EstimatorKind::Complete,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PostArg {
    Raw,
    Clip,
    ClipRenorm,
}

impl From<PostArg> for PostProcess {
    fn from(p: PostArg) -> Self {
        match p {
            PostArg::Raw => PostProcess::Raw,
            PostArg::Clip => PostProcess::Clip,
            PostArg::ClipRenorm => PostProcess::ClipRenorm,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum LogArg {
    Natural,
    Base2,
}

impl From<LogArg> for LogConvention {
    fn from(l: LogArg) -> Self {
        match l {
            LogArg::Natural => LogConvention::Natural,
            LogArg::Base2 => LogConvention::Base2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScaleArg {
    Mean,
    Rate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ErrorPointsArg {
    Grid,
    Sample,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TruthArg {
    Normalized,
    Original,
}

#[derive(Debug, Parser)]
#[command(name = "censwave", version, about = "Wavelet density estimation for right-censored data")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run whatever mode the configuration file selects.
    Run(Overrides),
    /// Estimate a density from a `time,status` CSV file.
    Estimate(Overrides),
    /// Run a replication study.
    Simulate(Overrides),
}

/// Flags; any flag given replaces the corresponding configuration entry.
#[derive(Debug, Clone, Default, Args)]
pub struct Overrides {
    /// TOML configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub mode: Option<Mode>,
    /// Input CSV (estimate mode).
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub filter: Option<String>,
    /// `auto` or an explicit level in [0, 16].
    #[arg(long)]
    pub level: Option<LevelChoice>,
    #[arg(long, value_enum)]
    pub estimator: Option<KindArg>,
    #[arg(long, value_enum)]
    pub postprocess: Option<PostArg>,
    #[arg(long)]
    pub grid_points: Option<usize>,
    #[arg(long)]
    pub output_dir: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub log_convention: Option<LogArg>,
    #[arg(long)]
    pub baseline: Option<String>,
    /// Sample size per replication.
    #[arg(long = "n")]
    pub n: Option<usize>,
    #[arg(long)]
    pub replications: Option<usize>,
    #[arg(long)]
    pub lambda: Option<f64>,
    #[arg(long, value_enum)]
    pub censoring_scale: Option<ScaleArg>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Estimators to include in a study; repeat or comma-separate.
    #[arg(long, value_enum, value_delimiter = ',')]
    pub kinds: Option<Vec<KindArg>>,
    #[arg(long, value_enum)]
    pub error_points: Option<ErrorPointsArg>,
    #[arg(long, value_enum)]
    pub truth_scale: Option<TruthArg>,
    /// Abscissae recorded in every replication; comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub probes: Option<Vec<f64>>,
}

/// Configuration file contents; every field optional.
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    mode: Option<Mode>,
    input_path: Option<PathBuf>,
    filter: Option<String>,
    level: Option<toml::Value>,
    estimator: Option<EstimatorKind>,
    postprocess: Option<PostProcess>,
    grid_points: Option<usize>,
    output_dir: Option<PathBuf>,
    log_convention: Option<LogConvention>,
    simulate: Option<FileSimulate>,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileSimulate {
    baseline: Option<String>,
    n: Option<usize>,
    replications: Option<usize>,
    lambda: Option<f64>,
    censoring_scale: Option<CensoringScale>,
    seed: Option<u64>,
    estimator_kinds: Option<Vec<EstimatorKind>>,
    error_points: Option<ErrorPoints>,
    truth_scale: Option<TruthScale>,
    probes: Option<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimulateSection {
    pub baseline: String,
    pub n: usize,
    pub replications: usize,
    pub lambda: f64,
    pub censoring_scale: CensoringScale,
    pub seed: u64,
    pub estimator_kinds: Vec<EstimatorKind>,
    pub error_points: ErrorPoints,
    pub truth_scale: TruthScale,
    pub probes: Vec<f64>,
}

impl Default for SimulateSection {
    fn default() -> Self {
        Self {
            baseline: "normal".into(),
            n: 100,
            replications: DEFAULT_REPLICATIONS,
            lambda: 0.8,
            censoring_scale: CensoringScale::Mean,
            seed: 1,
            estimator_kinds: vec![EstimatorKind::Partial, EstimatorKind::Complete],
            error_points: ErrorPoints::Grid,
            truth_scale: TruthScale::Normalized,
            probes: Vec::new(),
        }
    }
}

/// Fully resolved configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub mode: Mode,
    pub input_path: Option<PathBuf>,
    pub filter: String,
    pub level: LevelChoice,
    pub estimator: EstimatorKind,
    pub postprocess: PostProcess,
    pub grid_points: usize,
    pub output_dir: PathBuf,
    pub log_convention: LogConvention,
    pub simulate: SimulateSection,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            mode: Mode::Estimate,
            input_path: None,
            filter: "symmlet5".into(),
            level: LevelChoice::Auto,
            estimator: EstimatorKind::Partial,
            postprocess: PostProcess::Clip,
            grid_points: DEFAULT_GRID_POINTS,
            output_dir: PathBuf::from("censwave-out"),
            log_convention: LogConvention::Natural,
            simulate: SimulateSection::default(),
        }
    }
}

fn parse_level(v: &toml::Value) -> Result<LevelChoice, CliError> {
    match v {
        toml::Value::String(s) => s.parse().map_err(CliError::Config),
        toml::Value::Integer(i) if *i >= 0 => Ok(LevelChoice::Fixed(*i as u32)),
        other => Err(CliError::Config(format!("invalid level {other}"))),
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let file: FileConfig =
            toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
        let mut cfg = RunConfig::default();
        if let Some(v) = file.mode {
            cfg.mode = v;
        }
        cfg.input_path = file.input_path.or(cfg.input_path);
        if let Some(v) = file.filter {
            cfg.filter = v;
        }
        if let Some(v) = &file.level {
            cfg.level = parse_level(v)?;
        }
        if let Some(v) = file.estimator {
            cfg.estimator = v;
        }
        if let Some(v) = file.postprocess {
            cfg.postprocess = v;
        }
        if let Some(v) = file.grid_points {
            cfg.grid_points = v;
        }
        if let Some(v) = file.output_dir {
            cfg.output_dir = v;
        }
        if let Some(v) = file.log_convention {
            cfg.log_convention = v;
        }
        if let Some(s) = file.simulate {
            let d = &mut cfg.simulate;
            if let Some(v) = s.baseline {
                d.baseline = v;
            }
            if let Some(v) = s.n {
                d.n = v;
            }
            if let Some(v) = s.replications {
                d.replications = v;
            }
            if let Some(v) = s.lambda {
                d.lambda = v;
            }
            if let Some(v) = s.censoring_scale {
                d.censoring_scale = v;
            }
            if let Some(v) = s.seed {
                d.seed = v;
            }
            if let Some(v) = s.estimator_kinds {
                d.estimator_kinds = v;
            }
            if let Some(v) = s.error_points {
                d.error_points = v;
            }
            if let Some(v) = s.truth_scale {
                d.truth_scale = v;
            }
            if let Some(v) = s.probes {
                d.probes = v;
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text)
    }

    /// Reads the configuration file named in `o` (if any) and applies the
    /// flags on top.
    pub fn resolve(o: &Overrides, mode: Option<Mode>) -> Result<Self, CliError> {
        let mut cfg = match &o.config {
            Some(p) => Self::load(p)?,
            None => Self::default(),
        };
        cfg.apply(o);
        if let Some(m) = mode {
            cfg.mode = m;
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(v) = o.mode {
            self.mode = v;
        }
        if let Some(v) = &o.input {
            self.input_path = Some(v.clone());
        }
        if let Some(v) = &o.filter {
            self.filter = v.clone();
        }
        if let Some(v) = o.level {
            self.level = v;
        }
        if let Some(v) = o.estimator {
            self.estimator = v.into();
        }
        if let Some(v) = o.postprocess {
            self.postprocess = v.into();
        }
        if let Some(v) = o.grid_points {
            self.grid_points = v;
        }
        if let Some(v) = &o.output_dir {
            self.output_dir = v.clone();
        }
        if let Some(v) = o.log_convention {
            self.log_convention = v.into();
        }
        let s = &mut self.simulate;
        if let Some(v) = &o.baseline {
            s.baseline = v.clone();
        }
        if let Some(v) = o.n {
            s.n = v;
        }
        if let Some(v) = o.replications {
            s.replications = v;
        }
        if let Some(v) = o.lambda {
            s.lambda = v;
        }
        if let Some(v) = o.censoring_scale {
            s.censoring_scale = match v {
                ScaleArg::Mean => CensoringScale::Mean,
                ScaleArg::Rate => CensoringScale::Rate,
            };
        }
        if let Some(v) = o.seed {
            s.seed = v;
        }
        if let Some(v) = &o.kinds {
            s.estimator_kinds = v.iter().map(|&k| k.into()).collect();
        }
        if let Some(v) = o.error_points {
            s.error_points = match v {
                ErrorPointsArg::Grid => ErrorPoints::Grid,
                ErrorPointsArg::Sample => ErrorPoints::Sample,
            };
        }
        if let Some(v) = o.truth_scale {
            s.truth_scale = match v {
                TruthArg::Normalized => TruthScale::Normalized,
                TruthArg::Original => TruthScale::Original,
            };
        }
        if let Some(v) = &o.probes {
            s.probes = v.clone();
        }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.grid_points < 2 {
            return Err(CliError::Config(format!(
                "grid_points must be at least 2, got {}",
                self.grid_points
            )));
        }
        if let LevelChoice::Fixed(j) = self.level {
            if j > MAX_LEVEL {
                return Err(CliError::Config(format!("level {j} exceeds {MAX_LEVEL}")));
            }
        }
        if self.mode == Mode::Estimate && self.input_path.is_none() {
            return Err(CliError::Config("estimate mode needs an input path".into()));
        }
        Ok(())
    }

    pub fn simulation_config(&self) -> Result<SimulationConfig, CliError> {
        let s = &self.simulate;
        let mut cfg = SimulationConfig::new(make_baseline(&s.baseline)?, s.n, s.lambda, s.seed);
        cfg.replications = s.replications;
        cfg.censoring_scale = s.censoring_scale;
        cfg.filter = self.filter.clone();
        cfg.grid = uniform_grid(self.grid_points);
        cfg.estimator_kinds = s.estimator_kinds.clone();
        cfg.level = match self.level {
            LevelChoice::Auto => None,
            LevelChoice::Fixed(j) => Some(j),
        };
        cfg.log_convention = self.log_convention;
        cfg.error_points = s.error_points;
        cfg.truth_scale = s.truth_scale;
        cfg.probes = s.probes.clone();
        cfg.validate()?;
        Ok(cfg)
    }
}
