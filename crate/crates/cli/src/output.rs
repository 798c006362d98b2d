//! CSV emitters. Floats use Rust's shortest round-trip formatting.

use std::fmt::Write as _;
use std::path::Path;

use diracwalk::amplitudes::AmplitudeProfile;
use diracwalk::circuit::DepthRow;
use diracwalk::observables::ObservableSeries;
use diracwalk::state::{display_coord, site_of_coord};

use crate::error::CliError;
use crate::run::SweepRow;

pub const SERIES_HEADER: &str = "t,entropy_bits,velocity,norm";
pub const AMPLITUDES_HEADER: &str = "dt,q,re,im,prob,prob_infinite";
pub const SWEEP_HEADER: &str = "n,mass,dt,mean_entropy_bits,zb_amplitude,zb_frequency";
pub const DEPTH_HEADER: &str = "n,depth,one_qubit,two_qubit";

pub fn series_csv(series: &ObservableSeries) -> String {
    let mut out = format!("{SERIES_HEADER}\n");
    for r in &series.records {
        let _ = writeln!(out, "{},{},{},{}", r.time, r.entropy_bits, r.velocity, r.norm);
    }
    out
}

/// Position probabilities, one row per step, columns in display order
/// `x = −N/2+1 … N/2`.
pub fn spacetime_csv(times: &[f64], rows: &[Vec<f64>], n_sites: usize) -> String {
    let half = n_sites as i64 / 2;
    let coords: Vec<i64> = (-half + 1..=half).collect();
    debug_assert!(coords
        .iter()
        .all(|&c| display_coord(site_of_coord(c, n_sites), n_sites) == Ok(c)));
    let mut out = String::from("t");
    for c in &coords {
        let _ = write!(out, ",x={c}");
    }
    out.push('\n');
    for (t, row) in times.iter().zip(rows) {
        let _ = write!(out, "{t}");
        for &c in &coords {
            let _ = write!(out, ",{}", row[site_of_coord(c, n_sites)]);
        }
        out.push('\n');
    }
    out
}

pub fn amplitudes_csv(profiles: &[AmplitudeProfile]) -> String {
    let mut out = format!("{AMPLITUDES_HEADER}\n");
    for p in profiles {
        for e in &p.entries {
            let _ = writeln!(
                out,
                "{},{},{},{},{},{}",
                p.dt, e.q, e.amplitude.re, e.amplitude.im, e.prob, e.prob_infinite
            );
        }
    }
    out
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = format!("{SWEEP_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.n_sites, r.mass, r.dt, r.mean_entropy_bits, r.zb_amplitude, r.zb_frequency
        );
    }
    out
}

pub fn depth_csv(rows: &[DepthRow]) -> String {
    let mut out = format!("{DEPTH_HEADER}\n");
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            r.n_sites, r.metrics.depth, r.metrics.one_qubit, r.metrics.two_qubit
        );
    }
    out
}

/// Writes `contents`, creating parent directories.
pub fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
    }
    std::fs::write(path, contents).map_err(|e| CliError::io(path, e))
}
