//! Experiment orchestration behind each subcommand.

use std::path::{Path, PathBuf};

use diracwalk::amplitudes::{emit_profile, AmplitudeProfile};
use diracwalk::circuit::{build_step_circuit, depth_and_counts, depth_curve, export_qasm, CircuitMetrics};
use diracwalk::observables::{default_transient_skip, observe_walk, zb_metrics, ObservableSeries};
use diracwalk::verify::{run_all, CheckResult};
use diracwalk::WalkParams;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::{resolve, RunConfig, SweepConfig};
use crate::error::CliError;
use crate::output::{
    amplitudes_csv, depth_csv, series_csv, spacetime_csv, sweep_csv, write_file,
};

/// Files written by a single run, plus the computed series.
#[derive(Debug)]
pub struct SimulateOutput {
    pub series_path: PathBuf,
    pub spacetime_path: Option<PathBuf>,
    pub series: ObservableSeries,
}

pub fn simulate_series(cfg: &RunConfig, keep_spacetime: bool) -> Result<ObservableSeries, CliError> {
    let params = cfg.params()?;
    let ic = cfg.initial.to_condition(cfg.n_sites)?;
    Ok(observe_walk(&ic, &params, keep_spacetime)?)
}

pub fn run_simulate(cfg: &RunConfig, out_dir: &Path) -> Result<SimulateOutput, CliError> {
    let spacetime_path = cfg
        .outputs
        .spacetime_path
        .as_ref()
        .map(|p| resolve(out_dir, p));
    let series = simulate_series(cfg, spacetime_path.is_some())?;
    let series_path = resolve(out_dir, &cfg.outputs.series_path);
    write_file(&series_path, &series_csv(&series))?;
    if let (Some(path), Some(rows)) = (&spacetime_path, &series.spacetime) {
        let times: Vec<f64> = series.records.iter().map(|r| r.time).collect();
        write_file(path, &spacetime_csv(&times, rows, cfg.n_sites))?;
    }
    Ok(SimulateOutput {
        series_path,
        spacetime_path,
        series,
    })
}

/// Aggregate metrics of one sweep entry.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub n_sites: usize,
    pub mass: f64,
    pub dt: f64,
    pub mean_entropy_bits: f64,
    pub zb_amplitude: f64,
    pub zb_frequency: f64,
}

/// Mean entropy and velocity oscillation metrics over the retained window.
pub fn summarize(series: &ObservableSeries, transient_skip: Option<usize>) -> Result<(f64, f64, f64), CliError> {
    let entropy = series.entropy();
    let skip = transient_skip.unwrap_or_else(|| default_transient_skip(entropy.len()));
    let zb = zb_metrics(&series.velocity(), skip)?;
    let window = &entropy[skip..];
    let mean = window.iter().sum::<f64>() / window.len() as f64;
    Ok((mean, zb.amplitude, zb.dominant_frequency))
}

/// Computes every sweep entry in parallel; rows keep the config's order.
pub fn sweep_rows(cfg: &SweepConfig, out_dir: Option<&Path>) -> Result<Vec<SweepRow>, CliError> {
    cfg.validate()?;
    cfg.runs()
        .into_par_iter()
        .map(|(n, mass, dt)| {
            let params = WalkParams::new(n, dt, mass, cfg.steps.unwrap_or(n))?;
            let ic = cfg.initial.to_condition(n)?;
            let series = observe_walk(&ic, &params, false)?;
            if let (Some(dir), Some(out_dir)) = (&cfg.series_dir, out_dir) {
                let name = format!("series_n{n}_m{mass}_dt{dt}.csv");
                write_file(&resolve(out_dir, dir).join(name), &series_csv(&series))?;
            }
            let (mean_entropy_bits, zb_amplitude, zb_frequency) =
                summarize(&series, cfg.transient_skip)?;
            Ok(SweepRow {
                n_sites: n,
                mass,
                dt,
                mean_entropy_bits,
                zb_amplitude,
                zb_frequency,
            })
        })
        .collect()
}

/// Runs the sweep, writing the aggregate CSV and a JSON sidecar with the
/// resolved configuration (defaults included).
pub fn run_sweep(cfg: &SweepConfig, out_dir: &Path) -> Result<(PathBuf, Vec<SweepRow>), CliError> {
    let rows = sweep_rows(cfg, Some(out_dir))?;
    let path = resolve(out_dir, &cfg.output_path);
    write_file(&path, &sweep_csv(&rows))?;
    let meta = serde_json::json!({
        "config": cfg,
        "resolved": {
            "steps": cfg.steps.map_or_else(|| "n_sites".to_string(), |s| s.to_string()),
            "transient_skip": cfg.transient_skip.map_or_else(|| "10% of series".to_string(), |s| s.to_string()),
        },
    });
    let meta_text = serde_json::to_string_pretty(&meta).expect("serializable");
    write_file(&path.with_extension("meta.json"), &(meta_text + "\n"))?;
    Ok((path, rows))
}

/// Default time intervals for the amplitude profile table.
pub const DEFAULT_PROFILE_DTS: [f64; 4] = [1.0, 0.75, 0.5, 0.25];

pub fn run_amplitudes(
    dts: &[f64],
    n_sites: usize,
    out_dir: &Path,
) -> Result<(PathBuf, Vec<AmplitudeProfile>), CliError> {
    if dts.iter().any(|dt| !dt.is_finite()) {
        return Err(CliError::config("dt", "dt values must be finite"));
    }
    let profiles = emit_profile(dts, n_sites)
        .map_err(|e| CliError::config("n_sites", e.to_string()))?;
    let path = out_dir.join("amplitudes.csv");
    write_file(&path, &amplitudes_csv(&profiles))?;
    Ok((path, profiles))
}

/// Lattice sizes reported in `depth.csv`.
pub const DEPTH_SIZES: [usize; 8] = [8, 16, 32, 64, 128, 256, 512, 1024];

#[derive(Debug)]
pub struct CircuitOutput {
    pub qasm_path: PathBuf,
    pub depth_path: PathBuf,
    pub metrics: CircuitMetrics,
}

pub fn run_circuit(params: &WalkParams, out_dir: &Path) -> Result<CircuitOutput, CliError> {
    let circ = build_step_circuit(params);
    let qasm_path = out_dir.join(format!("step_n{}.qasm", params.n_sites()));
    write_file(&qasm_path, &export_qasm(&circ))?;
    let rows = depth_curve(&DEPTH_SIZES, params.dt(), params.mass())?;
    let depth_path = out_dir.join("depth.csv");
    write_file(&depth_path, &depth_csv(&rows))?;
    Ok(CircuitOutput {
        qasm_path,
        depth_path,
        metrics: depth_and_counts(&circ),
    })
}

/// Runs the self-check suite; fails with exit code 4 if any check fails.
pub fn run_verify() -> Result<Vec<CheckResult>, (Vec<CheckResult>, CliError)> {
    let results = run_all();
    let failed = results.iter().filter(|r| !r.passed).count();
    if failed == 0 {
        Ok(results)
    } else {
        Err((results, CliError::Verify(failed)))
    }
}
