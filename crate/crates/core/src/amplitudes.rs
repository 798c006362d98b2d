//! Hopping amplitudes of the fractional translation operator.
//!
//! `A_q^{(±)}(δt) = (1/N) Σ_j ω^{j(δt ∓ q)}` is the amplitude for one step of
//! the translation operator to move a component by `q` sites. In the walk,
//! the `ψ_L` block has matrix element `A_q^{(+)}` at `[x, x − q]`, and the
//! `ψ_R` block is its adjoint, with `conj(A_q^{(+)})` at `[x, x + q]`.

use std::f64::consts::{PI, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::Result;
use crate::momentum::{dft_matrix, phase_diagonal, PhaseSign};
use crate::state::{check_sites, display_coord};

/// Offsets within this distance of a multiple of `N` use the limit value 1.
const SINGULAR_EPS: f64 = 1e-12;

fn offset(q: i64, dt: f64, sign: PhaseSign) -> f64 {
    match sign {
        PhaseSign::Plus => dt - q as f64,
        PhaseSign::Minus => dt + q as f64,
    }
}

/// `sin(πa)` with the argument reduced to `[−1, 1]` first.
fn sin_pi(a: f64) -> f64 {
    (PI * (a - 2.0 * (a / 2.0).round())).sin()
}

/// Closed-form geometric sum
/// `(1/N)(1 − e^{2πi a}) / (1 − e^{2πi a/N})`, `a = δt ∓ q`.
pub fn transition_amplitude(q: i64, dt: f64, n_sites: usize, sign: PhaseSign) -> Complex64 {
    let n = n_sites as f64;
    let a = offset(q, dt, sign);
    // the sum only depends on a mod N
    let r = a - n * (a / n).round();
    if r.abs() < SINGULAR_EPS {
        return Complex64::new(1.0, 0.0);
    }
    let magnitude = sin_pi(r) / (n * (PI * r / n).sin());
    Complex64::from_polar(magnitude, PI * r * (n - 1.0) / n)
}

/// Literal `(1/N) Σ_{j=0}^{N−1} ω^{j(δt ∓ q)}`.
pub fn transition_amplitude_bruteforce(
    q: i64,
    dt: f64,
    n_sites: usize,
    sign: PhaseSign,
) -> Complex64 {
    let n = n_sites as f64;
    let a = offset(q, dt, sign);
    (0..n_sites)
        .map(|j| Complex64::from_polar(1.0, TAU * (j as f64 * a).rem_euclid(n) / n))
        .sum::<Complex64>()
        / n
}

/// `N → ∞` limit `|A_q|² = (1 − cos 2πa) / (2π²a²)`, with value 1 at `a = 0`.
pub fn infinite_limit_prob(q: i64, dt: f64, sign: PhaseSign) -> f64 {
    let a = offset(q, dt, sign);
    if a.abs() < SINGULAR_EPS {
        return 1.0;
    }
    // 1 − cos 2πa = 2 sin²(πa)
    let s = sin_pi(a);
    s * s / (PI * PI * a * a)
}

/// Dense real-space translation operator `F† · diag(ω^{±jδt}) · F`.
pub fn translation_matrix(sign: PhaseSign, dt: f64, n_sites: usize) -> Result<DMatrix<Complex64>> {
    let d = phase_diagonal(sign, dt, n_sites)?;
    let f = dft_matrix(n_sites);
    let diag = DMatrix::from_diagonal(&nalgebra::DVector::from_column_slice(d.values()));
    Ok(f.adjoint() * diag * f)
}

/// One `(δt, q)` entry of an amplitude table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProfileEntry {
    pub q: i64,
    pub amplitude: Complex64,
    pub prob: f64,
    pub prob_infinite: f64,
}

/// Hopping profile of `P̂₊(δt)` over every offset of an `N`-site ring.
#[derive(Debug, Clone, PartialEq)]
pub struct AmplitudeProfile {
    pub dt: f64,
    pub n_sites: usize,
    pub entries: Vec<ProfileEntry>,
}

impl AmplitudeProfile {
    pub fn total_prob(&self) -> f64 {
        self.entries.iter().map(|e| e.prob).sum()
    }
}

/// Tabulates `A_q^{(+)}` for each `δt` over signed offsets `q ∈ (−N/2, N/2]`.
pub fn emit_profile(dts: &[f64], n_sites: usize) -> Result<Vec<AmplitudeProfile>> {
    check_sites(n_sites)?;
    let qs: Vec<i64> = {
        let mut qs = (0..n_sites)
            .map(|x| display_coord(x, n_sites))
            .collect::<Result<Vec<_>>>()?;
        qs.sort_unstable();
        qs
    };
    Ok(dts
        .iter()
        .map(|&dt| AmplitudeProfile {
            dt,
            n_sites,
            entries: qs
                .iter()
                .map(|&q| {
                    let amplitude = transition_amplitude(q, dt, n_sites, PhaseSign::Plus);
                    ProfileEntry {
                        q,
                        amplitude,
                        prob: amplitude.norm_sqr(),
                        prob_infinite: infinite_limit_prob(q, dt, PhaseSign::Plus),
                    }
                })
                .collect(),
        })
        .collect())
}
