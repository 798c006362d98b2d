//! JSON run configuration. One document per invocation, discriminated by `mode`.

use std::path::{Path, PathBuf};

use diracwalk::{InitialCondition, PositionProfile, WalkParams};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

/// Upper bound on the number of runs in one sweep.
pub const MAX_SWEEP_RUNS: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Config {
    Simulate(RunConfig),
    Sweep(SweepConfig),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PositionSpec {
    Site(usize),
    Gaussian { center: f64, sigma: f64 },
}

/// Initial spinor: spin amplitudes as `[re, im]` pairs for `(ψ_R, ψ_L)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    pub spin: [[f64; 2]; 2],
    pub position: PositionSpec,
}

impl Default for InitialSpec {
    fn default() -> Self {
        Self {
            spin: [[1.0, 0.0], [0.0, 0.0]],
            position: PositionSpec::Site(0),
        }
    }
}

impl InitialSpec {
    pub fn to_condition(&self, n_sites: usize) -> Result<InitialCondition, CliError> {
        let [[rr, ri], [lr, li]] = self.spin;
        if self.spin.iter().flatten().any(|v| !v.is_finite()) {
            return Err(CliError::config("initial.spin", "components must be finite"));
        }
        let position = match self.position {
            PositionSpec::Site(x) => {
                if x >= n_sites {
                    return Err(CliError::config(
                        "initial.position.site",
                        format!("site {x} out of range for {n_sites} sites"),
                    ));
                }
                PositionProfile::Site(x)
            }
            PositionSpec::Gaussian { center, sigma } => {
                PositionProfile::Gaussian { center, sigma }
            }
        };
        InitialCondition::new(Complex64::new(rr, ri), Complex64::new(lr, li), position)
            .map_err(|e| CliError::config("initial", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSpec {
    #[serde(default = "default_series_path")]
    pub series_path: PathBuf,
    #[serde(default)]
    pub spacetime_path: Option<PathBuf>,
    /// Steps dropped before oscillation metrics; defaults to 10% of the series.
    #[serde(default)]
    pub transient_skip: Option<usize>,
}

fn default_series_path() -> PathBuf {
    PathBuf::from("series.csv")
}

impl Default for OutputSpec {
    fn default() -> Self {
        Self {
            series_path: default_series_path(),
            spacetime_path: None,
            transient_skip: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub n_sites: usize,
    pub dt: f64,
    pub mass: f64,
    /// Defaults to `n_sites`.
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub initial: InitialSpec,
    #[serde(default)]
    pub outputs: OutputSpec,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub n_sites: Vec<usize>,
    pub mass: Vec<f64>,
    pub dt: Vec<f64>,
    /// Defaults to `n_sites` of each run.
    #[serde(default)]
    pub steps: Option<usize>,
    #[serde(default)]
    pub initial: InitialSpec,
    #[serde(default = "default_sweep_path")]
    pub output_path: PathBuf,
    #[serde(default)]
    pub transient_skip: Option<usize>,
    /// When set, each run also writes its own series CSV into this directory.
    #[serde(default)]
    pub series_dir: Option<PathBuf>,
}

fn default_sweep_path() -> PathBuf {
    PathBuf::from("sweep.csv")
}

fn check_n_sites(field: &str, n: usize) -> Result<(), CliError> {
    if n >= 2 && n.is_power_of_two() {
        Ok(())
    } else {
        Err(CliError::config(field, "n_sites must be a power of two"))
    }
}

fn check_dt(field: &str, dt: f64) -> Result<(), CliError> {
    if dt > 0.0 && dt.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(field, "dt must be positive and finite"))
    }
}

fn check_mass(field: &str, mass: f64) -> Result<(), CliError> {
    if mass.is_finite() {
        Ok(())
    } else {
        Err(CliError::config(field, "mass must be finite"))
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        check_n_sites("n_sites", self.n_sites)?;
        check_dt("dt", self.dt)?;
        check_mass("mass", self.mass)?;
        self.initial.to_condition(self.n_sites)?;
        Ok(())
    }

    pub fn steps(&self) -> usize {
        self.steps.unwrap_or(self.n_sites)
    }

    pub fn params(&self) -> Result<WalkParams, CliError> {
        self.validate()?;
        WalkParams::new(self.n_sites, self.dt, self.mass, self.steps())
            .map_err(|e| CliError::config("params", e.to_string()))
    }
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), CliError> {
        for (name, empty) in [
            ("n_sites", self.n_sites.is_empty()),
            ("mass", self.mass.is_empty()),
            ("dt", self.dt.is_empty()),
        ] {
            if empty {
                return Err(CliError::config(name, "list must be non-empty"));
            }
        }
        let runs = self.n_sites.len() * self.mass.len() * self.dt.len();
        if runs > MAX_SWEEP_RUNS {
            return Err(CliError::config(
                "sweep",
                format!("{runs} runs exceeds the limit of {MAX_SWEEP_RUNS}"),
            ));
        }
        for &n in &self.n_sites {
            check_n_sites("n_sites", n)?;
            self.initial.to_condition(n)?;
        }
        self.mass.iter().try_for_each(|&m| check_mass("mass", m))?;
        self.dt.iter().try_for_each(|&dt| check_dt("dt", dt))?;
        Ok(())
    }

    /// Cartesian product in `(n_sites, mass, dt)` order.
    pub fn runs(&self) -> Vec<(usize, f64, f64)> {
        let mut out = Vec::new();
        for &n in &self.n_sites {
            for &m in &self.mass {
                for &dt in &self.dt {
                    out.push((n, m, dt));
                }
            }
        }
        out
    }
}

/// Reads and parses a config file.
pub fn load(path: &Path) -> Result<Config, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Config, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::config("config", e.to_string()))
}

/// Resolves `path` against `out_dir` unless it is absolute.
pub fn resolve(out_dir: &Path, path: &Path) -> PathBuf {
    if path.is_absolute() {
        path.to_path_buf()
    } else {
        out_dir.join(path)
    }
}
