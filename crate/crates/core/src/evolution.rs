//! Single-step walk operator, its cellular-automaton limit, and trajectories.
//!
//! One step is the split product
//!
//! ```text
//! U(δt) = diag(Q₋^{δt}, I) · (coin(θ) ⊗ I) · diag(I, Q₊^{δt})
//! ```
//!
//! with the diagonals applied in momentum space. Momentum space is reached
//! with `F` (forward) and left with `F†`, which makes the `δt = 1` walk pull
//! `ψ_R` from `x + 1` and `ψ_L` from `x − 1`, i.e. the Dirac cellular
//! automaton update.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Result, WalkError};
use crate::momentum::{max_abs, 
    coin, dft_matrix, exact_mode_propagator, phase_diagonal, Dft, Mat2, PhaseDiagonal, PhaseSign,
};
use crate::state::{check_sites, init_state, InitialCondition, SpinorField};

/// Largest lattice for which dense operators are materialized.
pub const DENSE_LIMIT: usize = 64;

/// Lattice size, time interval, mass and step count of a walk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WalkParams {
    n_sites: usize,
    dt: f64,
    mass: f64,
    theta: f64,
    steps: usize,
}

impl WalkParams {
    pub fn new(n_sites: usize, dt: f64, mass: f64, steps: usize) -> Result<Self> {
        check_sites(n_sites)?;
        if !dt.is_finite() || dt <= 0.0 {
            return Err(WalkError::InvalidDt(dt));
        }
        if !mass.is_finite() {
            return Err(WalkError::InvalidMass(mass));
        }
        Ok(Self {
            n_sites,
            dt,
            mass,
            theta: mass * dt,
            steps,
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// Coin angle `θ = m·δt`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn with_steps(mut self, steps: usize) -> Self {
        self.steps = steps;
        self
    }
}

/// Factored one-step operator, reusable across steps.
#[derive(Debug, Clone)]
pub struct StepOperator {
    n_sites: usize,
    dft: Dft,
    d_minus: PhaseDiagonal,
    d_plus: PhaseDiagonal,
    cos_half: f64,
    sin_half: f64,
    theta: f64,
}

impl StepOperator {
    pub fn new(params: &WalkParams) -> Result<Self> {
        let n = params.n_sites();
        let (sin_half, cos_half) = (params.theta() / 2.0).sin_cos();
        Ok(Self {
            n_sites: n,
            dft: Dft::new(n)?,
            d_minus: phase_diagonal(PhaseSign::Minus, params.dt(), n)?,
            d_plus: phase_diagonal(PhaseSign::Plus, params.dt(), n)?,
            cos_half,
            sin_half,
            theta: params.theta(),
        })
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    /// Applies the step to `field`, returning the evolved field.
    pub fn apply(&self, field: &SpinorField) -> Result<SpinorField> {
        let mut amps = field.amps().to_vec();
        self.apply_in_place(&mut amps)?;
        SpinorField::from_amps(self.n_sites, amps)
    }

    /// Applies the step to raw spin-major amplitudes.
    pub fn apply_in_place(&self, amps: &mut [Complex64]) -> Result<()> {
        let n = self.n_sites;
        if amps.len() != 2 * n {
            return Err(WalkError::LengthMismatch {
                expected: 2 * n,
                got: amps.len(),
            });
        }
        self.dft.forward_in_place(amps);
        let (r, l) = amps.split_at_mut(n);
        self.d_plus.apply_in_place(l);
        let (c, s) = (self.cos_half, self.sin_half);
        for (a, b) in r.iter_mut().zip(l.iter_mut()) {
            let (ra, la) = (*a, *b);
            *a = ra * c - Complex64::i() * s * la;
            *b = la * c - Complex64::i() * s * ra;
        }
        self.d_minus.apply_in_place(r);
        self.dft.inverse_in_place(amps);
        Ok(())
    }

    /// Dense `2N × 2N` matrix built from the explicit factors
    /// `(I⊗F†) · diag(D₋, I) · (coin⊗I) · diag(I, D₊) · (I⊗F)`.
    pub fn dense(&self) -> Result<DMatrix<Complex64>> {
        let n = self.n_sites;
        if n > DENSE_LIMIT {
            return Err(WalkError::TooLarge {
                n_sites: n,
                limit: DENSE_LIMIT,
            });
        }
        let f = dft_matrix(n);
        let mut transform = DMatrix::zeros(2 * n, 2 * n);
        transform.view_mut((0, 0), (n, n)).copy_from(&f);
        transform.view_mut((n, n), (n, n)).copy_from(&f);

        let mut outer_phase = DMatrix::identity(2 * n, 2 * n);
        let mut inner_phase = DMatrix::identity(2 * n, 2 * n);
        for j in 0..n {
            outer_phase[(j, j)] = self.d_minus.values()[j];
            inner_phase[(n + j, n + j)] = self.d_plus.values()[j];
        }
        let coin_block = kron2(&coin(self.theta), n);
        Ok(transform.adjoint() * outer_phase * coin_block * inner_phase * transform)
    }
}

/// `m ⊗ I_n` for a 2×2 `m`.
pub(crate) fn kron2(m: &Mat2, n: usize) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(2 * n, 2 * n);
    for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
        for x in 0..n {
            out[(a * n + x, b * n + x)] = m[(a, b)];
        }
    }
    out
}

/// One walk step `U(δt)·field`.
pub fn step(field: &SpinorField, params: &WalkParams) -> Result<SpinorField> {
    if field.n_sites() != params.n_sites() {
        return Err(WalkError::LengthMismatch {
            expected: params.n_sites(),
            got: field.n_sites(),
        });
    }
    StepOperator::new(params)?.apply(field)
}

/// Real-space Dirac cellular automaton update:
/// `ψ_R(x) ← cos(θ/2)ψ_R(x+1) − i sin(θ/2)ψ_L(x)`,
/// `ψ_L(x) ← cos(θ/2)ψ_L(x−1) − i sin(θ/2)ψ_R(x)`.
pub fn dca_step(field: &SpinorField, theta: f64) -> SpinorField {
    let n = field.n_sites();
    let (s, c) = (theta / 2.0).sin_cos();
    let mis = Complex64::new(0.0, -s);
    let (r, l) = field.amps().split_at(n);
    let mut out = Vec::with_capacity(2 * n);
    out.extend((0..n).map(|x| r[(x + 1) % n] * c + mis * l[x]));
    out.extend((0..n).map(|x| l[(x + n - 1) % n] * c + mis * r[x]));
    SpinorField::from_amps(n, out).expect("size preserved")
}

/// Streaming trajectory: yields the initial field, then one field per step,
/// `steps + 1` items in total.
#[derive(Debug)]
pub struct Walker {
    op: StepOperator,
    current: Option<SpinorField>,
    remaining: usize,
}

impl Walker {
    pub fn new(initial: SpinorField, params: &WalkParams) -> Result<Self> {
        if initial.n_sites() != params.n_sites() {
            return Err(WalkError::LengthMismatch {
                expected: params.n_sites(),
                got: initial.n_sites(),
            });
        }
        Ok(Self {
            op: StepOperator::new(params)?,
            current: Some(initial),
            remaining: params.steps() + 1,
        })
    }
}

impl Iterator for Walker {
    type Item = SpinorField;

    fn next(&mut self) -> Option<SpinorField> {
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        let current = self.current.take()?;
        if self.remaining > 0 {
            let next = self.op.apply(&current).expect("walker sizes checked");
            self.current = Some(next);
        }
        Some(current)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        (self.remaining, Some(self.remaining))
    }
}

/// Full trajectory of `steps + 1` fields starting from `init_state(ic)`.
pub fn evolve(ic: &InitialCondition, params: &WalkParams) -> Result<Vec<SpinorField>> {
    let initial = init_state(ic, params.n_sites())?;
    Ok(Walker::new(initial, params)?.collect())
}

/// Per-mode split operator `diag(e^{ikδt}, 1) · coin(2μδt) · diag(1, e^{−ikδt})`.
pub fn split_mode_operator(k: f64, mu: f64, dt: f64) -> Mat2 {
    let left = Mat2::new(
        Complex64::from_polar(1.0, k * dt),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(1.0, 0.0),
    );
    let right = Mat2::new(
        Complex64::new(1.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::new(0.0, 0.0),
        Complex64::from_polar(1.0, -k * dt),
    );
    left * coin(2.0 * mu * dt) * right
}

/// Max-entry deviation of the split step from the exact mode propagator.
pub fn trotter_local_error(k: f64, mu: f64, dt: f64) -> f64 {
    max_abs(&(split_mode_operator(k, mu, dt) - exact_mode_propagator(k, mu, dt)))
}

/// Least-squares slope of `ln(error)` against `ln(δt)`.
pub fn fitted_error_order(k: f64, mu: f64, dts: &[f64]) -> f64 {
    let pts: Vec<(f64, f64)> = dts
        .iter()
        .map(|&dt| (dt.ln(), trotter_local_error(k, mu, dt).ln()))
        .collect();
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}
