use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown wavelet filter `{name}`; supported: {supported}")]
    UnknownFilter { name: String, supported: String },

    #[error("filter `{name}` fails validation: {reason}")]
    InvalidFilter { name: String, reason: String },

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    #[error("all observation times are zero; cannot normalize")]
    AllZeroSample,

    #[error("sample size {0} is too small (need at least 2)")]
    InvalidSampleSize(usize),

    #[error("resolution level {0} outside [0, 16]")]
    InvalidLevel(u32),

    #[error("sample must be normalized to [0, 1] before fitting")]
    NotNormalized,

    #[error("censoring survival estimate vanished at ranked position {0}")]
    DegenerateWeight(usize),

    #[error("clipped estimate has no mass to renormalize")]
    ZeroMass,

    #[error("operation requires a {expected} estimate, got {found}")]
    KindMismatch { expected: String, found: String },

    #[error("unknown baseline `{0}`; supported: delta, normal, bimodal, strata, multimodal")]
    UnknownBaseline(String),

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),

    #[error("quadrature did not converge: max change {0:e}")]
    NonConvergent(f64),
}
