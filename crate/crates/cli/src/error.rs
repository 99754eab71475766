use serde_json::json;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("configuration: {0}")]
    Config(String),
    #[error("row {row}: {message}")]
    Parse { row: usize, message: String },
    #[error("row {row}: negative time {value}")]
    NegativeTime { row: usize, value: f64 },
    #[error("row {row}: status {value:?} is not 0 or 1")]
    BadStatus { row: usize, value: String },
    #[error(transparent)]
    Core(#[from] censwave::Error),
}

impl CliError {
    pub fn io(path: impl AsRef<std::path::Path>, err: std::io::Error) -> Self {
        CliError::Io {
            path: path.as_ref().display().to_string(),
            message: err.to_string(),
        }
    }

    pub fn kind(&self) -> String {
        use censwave::Error as E;
        match self {
            CliError::Io { .. } => "IoError".into(),
            CliError::Config(_) => "ConfigError".into(),
            CliError::Parse { .. } => "ParseError".into(),
            CliError::NegativeTime { .. } => "NegativeTime".into(),
            CliError::BadStatus { .. } => "BadStatus".into(),
            CliError::Core(e) => match e {
                E::UnknownFilter { .. } => "UnknownFilter",
                E::InvalidFilter { .. } => "InvalidFilter",
                E::InvalidSample(_) => "InvalidSample",
                E::AllZeroSample => "AllZeroSample",
                E::InvalidSampleSize(_) => "InvalidSampleSize",
                E::InvalidLevel(_) => "InvalidLevel",
                E::NotNormalized => "NotNormalized",
                E::DegenerateWeight(_) => "DegenerateWeight",
                E::ZeroMass => "ZeroMass",
                E::KindMismatch { .. } => "KindMismatch",
                E::UnknownBaseline(_) => "UnknownBaseline",
                E::InvalidConfig(_) => "InvalidConfig",
                E::NonConvergent(_) => "NonConvergent",
            }
            .into(),
        }
    }

    /// 2 configuration, 3 data, 4 numerical.
    pub fn exit_code(&self) -> i32 {
        use censwave::Error as E;
        match self {
            CliError::Config(_) => 2,
            CliError::Io { .. }
            | CliError::Parse { .. }
            | CliError::NegativeTime { .. }
            | CliError::BadStatus { .. } => 3,
            CliError::Core(e) => match e {
                E::UnknownFilter { .. }
                | E::InvalidFilter { .. }
                | E::InvalidLevel(_)
                | E::UnknownBaseline(_)
                | E::InvalidConfig(_) => 2,
                E::InvalidSample(_)
                | E::AllZeroSample
                | E::InvalidSampleSize(_)
                | E::NotNormalized => 3,
                E::DegenerateWeight(_) | E::ZeroMass | E::KindMismatch { .. } | E::NonConvergent(_) => 4,
            },
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = json!({
            "kind": self.kind(),
            "message": self.to_string(),
            "exit_code": self.exit_code(),
        });
        match self {
            CliError::Parse { row, .. }
            | CliError::NegativeTime { row, .. }
            | CliError::BadStatus { row, .. } => {
                v["row"] = json!(row);
            }
            CliError::Io { path, .. } => {
                v["path"] = json!(path);
            }
            _ => {}
        }
        v
    }
}
