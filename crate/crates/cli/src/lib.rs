//! Library side of the `censwave` command: CSV ingestion, run configuration
//! and the estimate/simulate drivers.

pub mod config;
pub mod error;
pub mod ingest;
pub mod run;

pub use config::{Cli, Command, LevelChoice, Mode, Overrides, RunConfig, SimulateSection};
pub use error::CliError;
pub use ingest::{ingest_csv, parse_csv, write_csv};
pub use run::{run, EstimateMeta};
