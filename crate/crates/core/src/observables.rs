//! Reduced density matrices, entanglement entropy and Zitterbewegung velocity.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::{Result, WalkError};
use crate::evolution::{WalkParams, Walker};
use crate::momentum::{max_abs, Mat2};
use crate::state::{init_state, InitialCondition, SpinorField};

/// Largest lattice for which [`reduced_external`] materializes `ρ_x`.
pub const EXTERNAL_LIMIT: usize = 256;

const HERMITIAN_TOL: f64 = 1e-9;
const EIGEN_CLAMP: f64 = 1e-10;

/// 2×2 internal-space density matrix `ρ_c = Tr_x |Ψ⟩⟨Ψ|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityMatrix2(pub Mat2);

impl DensityMatrix2 {
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0[(0, 0)].re + self.0[(1, 1)].re
    }

    /// Eigenvalues in ascending order from the characteristic polynomial.
    pub fn eigenvalues(&self) -> [f64; 2] {
        let (a, d) = (self.0[(0, 0)].re, self.0[(1, 1)].re);
        let b = self.0[(0, 1)];
        let half_gap = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
        let mid = (a + d) / 2.0;
        [mid - half_gap, mid + half_gap]
    }

    pub fn entropy_bits(&self) -> Result<f64> {
        let dev = max_abs(&(self.0 - self.0.adjoint()));
        if dev > HERMITIAN_TOL {
            return Err(WalkError::NotHermitian(dev));
        }
        Ok(shannon_bits(self.eigenvalues()))
    }
}

/// `−Σ λ log₂ λ`, with tiny negative eigenvalues clamped to zero.
fn shannon_bits(eigenvalues: impl IntoIterator<Item = f64>) -> f64 {
    let s: f64 = eigenvalues
        .into_iter()
        .map(|l| if l > -EIGEN_CLAMP && l <= 0.0 { 0.0 } else { l })
        .filter(|&l| l > 0.0)
        .map(|l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// `ρ_c[s, s'] = Σ_x ψ_s(x) conj(ψ_{s'}(x))`.
pub fn reduced_internal(field: &SpinorField) -> DensityMatrix2 {
    let (r, l) = field.amps().split_at(field.n_sites());
    let rr: f64 = r.iter().map(|a| a.norm_sqr()).sum();
    let ll: f64 = l.iter().map(|a| a.norm_sqr()).sum();
    let rl: Complex64 = r.iter().zip(l).map(|(a, b)| a * b.conj()).sum();
    DensityMatrix2(Mat2::new(
        Complex64::new(rr, 0.0),
        rl,
        rl.conj(),
        Complex64::new(ll, 0.0),
    ))
}

/// `ρ_x[x, y] = Σ_s ψ_s(x) conj(ψ_s(y))`, dense `N × N`.
pub fn reduced_external(field: &SpinorField) -> Result<DMatrix<Complex64>> {
    let n = field.n_sites();
    if n > EXTERNAL_LIMIT {
        return Err(WalkError::TooLarge {
            n_sites: n,
            limit: EXTERNAL_LIMIT,
        });
    }
    let (r, l) = field.amps().split_at(n);
    Ok(DMatrix::from_fn(n, n, |x, y| {
        r[x] * r[y].conj() + l[x] * l[y].conj()
    }))
}

/// Von Neumann entropy in bits of a Hermitian density matrix of any size.
pub fn entropy_bits(rho: &DMatrix<Complex64>) -> Result<f64> {
    let dev = max_abs(&(rho - rho.adjoint()));
    if dev > HERMITIAN_TOL {
        return Err(WalkError::NotHermitian(dev));
    }
    if rho.nrows() == 2 {
        let m = Mat2::new(rho[(0, 0)], rho[(0, 1)], rho[(1, 0)], rho[(1, 1)]);
        return DensityMatrix2(m).entropy_bits();
    }
    let eig = nalgebra::SymmetricEigen::new(rho.clone());
    Ok(shannon_bits(eig.eigenvalues.iter().copied()))
}

/// Zitterbewegung velocity `−⟨σ_z⟩ = ρ_c[1,1] − ρ_c[0,0]`.
pub fn velocity(field: &SpinorField) -> f64 {
    let rho = reduced_internal(field);
    -(rho.0[(0, 0)].re - rho.0[(1, 1)].re)
}

/// Oscillation summary of a scalar time series.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OscillationMetrics {
    /// Half the peak-to-peak excursion over the retained window.
    pub amplitude: f64,
    /// Dominant non-DC frequency in cycles per step.
    pub dominant_frequency: f64,
    /// DFT bin of the dominant frequency (0 for a flat series).
    pub dominant_bin: usize,
    pub window_len: usize,
}

/// Minimum retained samples for [`zb_metrics`].
pub const MIN_WINDOW: usize = 8;

/// Default transient: the first 10% of the series.
pub fn default_transient_skip(len: usize) -> usize {
    len / 10
}

/// Amplitude and dominant frequency of `series[transient_skip..]`.
pub fn zb_metrics(series: &[f64], transient_skip: usize) -> Result<OscillationMetrics> {
    let window = series.get(transient_skip..).unwrap_or(&[]);
    let len = window.len();
    if len < MIN_WINDOW {
        return Err(WalkError::SeriesTooShort {
            len,
            min: MIN_WINDOW,
        });
    }
    let (lo, hi) = window
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| {
            (lo.min(v), hi.max(v))
        });
    let amplitude = (hi - lo) / 2.0;
    if amplitude <= 1e-12 {
        return Ok(OscillationMetrics {
            amplitude,
            dominant_frequency: 0.0,
            dominant_bin: 0,
            window_len: len,
        });
    }
    let mean = window.iter().sum::<f64>() / len as f64;
    let mut buf: Vec<Complex64> = window
        .iter()
        .map(|&v| Complex64::new(v - mean, 0.0))
        .collect();
    FftPlanner::new().plan_fft_forward(len).process(&mut buf);
    let mut best = (0usize, 0.0f64);
    for (bin, c) in buf.iter().enumerate().take(len / 2 + 1).skip(1) {
        // strict comparison keeps the lowest bin on ties
        if c.norm() > best.1 {
            best = (bin, c.norm());
        }
    }
    Ok(OscillationMetrics {
        amplitude,
        dominant_frequency: best.0 as f64 / len as f64,
        dominant_bin: best.0,
        window_len: len,
    })
}

/// Observables of one trajectory point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepObservables {
    pub step: usize,
    /// Elapsed time `step · δt`.
    pub time: f64,
    pub entropy_bits: f64,
    pub velocity: f64,
    pub norm: f64,
}

/// Per-step observables of a run, with optional position distributions.
#[derive(Debug, Clone, PartialEq)]
pub struct ObservableSeries {
    pub dt: f64,
    pub records: Vec<StepObservables>,
    /// Position probabilities per step, indexed by internal site.
    pub spacetime: Option<Vec<Vec<f64>>>,
}

impl ObservableSeries {
    pub fn entropy(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.entropy_bits).collect()
    }

    pub fn velocity(&self) -> Vec<f64> {
        self.records.iter().map(|r| r.velocity).collect()
    }
}

pub fn observe(field: &SpinorField, step: usize, dt: f64) -> Result<StepObservables> {
    let rho = reduced_internal(field);
    let norm = field.norm();
    Ok(StepObservables {
        step,
        time: step as f64 * dt,
        entropy_bits: rho.entropy_bits()?,
        velocity: -(rho.0[(0, 0)].re - rho.0[(1, 1)].re),
        norm,
    })
}

/// Streams a walk and records observables at every step without keeping fields.
pub fn observe_walk(
    ic: &InitialCondition,
    params: &WalkParams,
    keep_spacetime: bool,
) -> Result<ObservableSeries> {
    let initial = init_state(ic, params.n_sites())?;
    let mut records = Vec::with_capacity(params.steps() + 1);
    let mut spacetime = keep_spacetime.then(|| Vec::with_capacity(params.steps() + 1));
    for (t, field) in Walker::new(initial, params)?.enumerate() {
        records.push(observe(&field, t, params.dt())?);
        if let Some(rows) = spacetime.as_mut() {
            rows.push(field.position_distribution());
        }
    }
    Ok(ObservableSeries {
        dt: params.dt(),
        records,
        spacetime,
    })
}
