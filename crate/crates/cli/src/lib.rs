//! Runner for diracwalk experiments: single runs, parameter sweeps, amplitude
//! tables, and circuit export.

pub mod config;
pub mod error;
pub mod output;
pub mod run;

pub use config::{Config, RunConfig, SweepConfig};
pub use error::CliError;
