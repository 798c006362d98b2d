//! Self-check suite over the engine's invariants, run by `diracwalk verify`.
//!
//! Every check is deterministic (fixed RNG seed) and cross-validates two
//! independent routes: closed form against literal sum, spectral step
//! against real-space update, circuit against dense operator.

use std::f64::consts::PI;
use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::amplitudes::{
    emit_profile, infinite_limit_prob, transition_amplitude, transition_amplitude_bruteforce,
    translation_matrix,
};
use crate::circuit::{build_qft, build_step_circuit, depth_curve};
use crate::error::Result;
use crate::evolution::{dca_step, fitted_error_order, trotter_local_error, StepOperator, WalkParams};
use crate::momentum::{dft_matrix, max_abs, PhaseSign};
use crate::observables::{
    default_transient_skip, entropy_bits, observe_walk, reduced_external, reduced_internal,
    zb_metrics,
};
use crate::state::{InitialCondition, SpinorField};

const SEED: u64 = 0x5eed_d1ac;

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub fn random_field(rng: &mut impl Rng, n_sites: usize) -> SpinorField {
    let amps: Vec<Complex64> = (0..2 * n_sites)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let field = SpinorField::from_amps(n_sites, amps).expect("valid size");
    let norm = field.norm();
    field.scaled(Complex64::new(1.0 / norm, 0.0))
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> CheckResult {
    let start = Instant::now();
    let (passed, detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    CheckResult {
        name,
        passed,
        detail: format!("{detail} [{:.2?}]", start.elapsed()),
    }
}

fn amplitude_closed_form() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let n = 1usize << rng.gen_range(3..=8);
        let half = n as i64 / 2;
        let q = rng.gen_range(-half + 1..=half);
        let dt = rng.gen_range(1e-6..=2.0);
        let sign = if rng.gen_bool(0.5) {
            PhaseSign::Plus
        } else {
            PhaseSign::Minus
        };
        let d = (transition_amplitude(q, dt, n, sign)
            - transition_amplitude_bruteforce(q, dt, n, sign))
        .norm();
        worst = worst.max(d);
    }
    Ok((worst < 1e-12, format!("max |closed - sum| = {worst:.2e}")))
}

fn dca_limit() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 1);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = if i % 2 == 0 { 8 } else { 32 };
        let theta = rng.gen_range(-PI..PI);
        let op = StepOperator::new(&WalkParams::new(n, 1.0, theta, 0)?)?;
        let f = random_field(&mut rng, n);
        let spectral = op.apply(&f)?;
        worst = worst.max(max_abs(
            &spectral
                .amps()
                .iter()
                .zip(dca_step(&f, theta).amps())
                .map(|(a, b)| a - b)
                .collect::<Vec<_>>(),
        ));
    }
    let mut perm_dev = 0.0f64;
    for n in [8usize, 32] {
        for (sign, shift) in [(PhaseSign::Minus, 1usize), (PhaseSign::Plus, n - 1)] {
            let m = translation_matrix(sign, 1.0, n)?;
            let want = DMatrix::from_fn(n, n, |x, y| {
                if y == (x + shift) % n {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                }
            });
            perm_dev = perm_dev.max(max_abs(&(m - want)));
        }
    }
    Ok((
        worst < 1e-12 && perm_dev < 1e-12,
        format!("step vs dca {worst:.2e}, shift matrices {perm_dev:.2e}"),
    ))
}

fn infinite_limit() -> Result<(bool, String)> {
    let n = 4096;
    let worst = (-8..=8)
        .map(|q| {
            (transition_amplitude_bruteforce(q, 0.5, n, PhaseSign::Plus).norm_sqr()
                - infinite_limit_prob(q, 0.5, PhaseSign::Plus))
            .abs()
        })
        .fold(0.0, f64::max);
    let at_zero = infinite_limit_prob(1, 1.0, PhaseSign::Plus);
    let a0 = transition_amplitude(0, 0.5, n, PhaseSign::Plus).norm_sqr();
    let ok = worst < 1e-4 && at_zero == 1.0 && (a0 - 4.0 / (PI * PI)).abs() < 1e-4;
    Ok((ok, format!("max dev {worst:.2e}, |A_0|^2 = {a0:.6}")))
}

fn strang_order() -> Result<(bool, String)> {
    let p = fitted_error_order(1.0, 1.0, &[0.2, 0.1, 0.05, 0.025]);
    let commuting = [(0.7, 0.0), (0.0, 1.3)]
        .iter()
        .map(|&(k, mu)| trotter_local_error(k, mu, 0.3))
        .fold(0.0, f64::max);
    Ok((
        (2.7..=3.3).contains(&p) && commuting < 1e-14,
        format!("fitted order {p:.3}, commuting error {commuting:.1e}"),
    ))
}

fn entropy_identity() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 2);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = [2usize, 4, 8, 16, 32, 64][i % 6];
        let f = random_field(&mut rng, n);
        let s_c = reduced_internal(&f).entropy_bits()?;
        let s_x = entropy_bits(&reduced_external(&f)?)?;
        worst = worst.max((s_c - s_x).abs());
    }
    let half = DMatrix::identity(2, 2) * Complex64::new(0.5, 0.0);
    let s_half = entropy_bits(&half)?;
    Ok((
        worst < 1e-9 && (s_half - 1.0).abs() < 1e-12,
        format!("max |S_c - S_x| = {worst:.2e}, S(I/2) = {s_half}"),
    ))
}

fn zitterbewegung_runs() -> Result<(bool, String)> {
    let ic = InitialCondition::localized_up();
    let mut ok = true;
    let mut notes = Vec::new();
    for dt in [1.0, 0.5] {
        let free = observe_walk(&ic, &WalkParams::new(64, dt, 0.0, 64)?, false)?;
        let max_s = free.entropy().into_iter().fold(0.0, f64::max);
        let v_dev = free
            .velocity()
            .iter()
            .map(|v| (v + 1.0).abs())
            .fold(0.0, f64::max);
        ok &= max_s <= 1e-9 && v_dev <= 1e-9;

        let massive = observe_walk(&ic, &WalkParams::new(64, dt, PI / 4.0, 64)?, false)?;
        let (s, v) = (massive.entropy(), massive.velocity());
        let skip = default_transient_skip(s.len());
        let (ms, mv) = (zb_metrics(&s, skip)?, zb_metrics(&v, skip)?);
        let s_peak = s.iter().cloned().fold(0.0, f64::max);
        let v_pp = v.iter().cloned().fold(f64::MIN, f64::max) - v.iter().cloned().fold(f64::MAX, f64::min);
        ok &= s_peak > 0.1 && v_pp > 0.05 && ms.dominant_bin.abs_diff(mv.dominant_bin) <= 1;
        notes.push(format!(
            "dt={dt}: max S {s_peak:.3}, v p-p {v_pp:.3}, bins {}/{}",
            ms.dominant_bin, mv.dominant_bin
        ));
    }
    Ok((ok, notes.join("; ")))
}

fn circuit_equivalence() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 3);
    let mut worst = 0.0f64;
    for n in [8usize, 16] {
        for _ in 0..3 {
            let params = WalkParams::new(n, rng.gen_range(0.05..2.0), rng.gen_range(-3.0..3.0), 0)?;
            let circ = build_step_circuit(&params).unitary()?;
            let dense = StepOperator::new(&params)?.dense()?;
            worst = worst.max(max_abs(&(circ - dense)));
        }
    }
    let mut qft_dev = 0.0f64;
    for n_pos in 1..=4 {
        qft_dev = qft_dev.max(max_abs(&(build_qft(n_pos).unitary()? - dft_matrix(1 << n_pos))));
    }
    Ok((
        worst < 1e-8 && qft_dev < 1e-10,
        format!("circuit vs operator {worst:.2e}, qft vs matrix {qft_dev:.2e}"),
    ))
}

fn depth_growth() -> Result<(bool, String)> {
    let sizes: Vec<usize> = (3..=10).map(|k| 1usize << k).collect();
    let depths: Vec<i64> = depth_curve(&sizes, 1.0, 1.0)?
        .iter()
        .map(|r| r.metrics.depth as i64)
        .collect();
    let first: Vec<i64> = depths.windows(2).map(|w| w[1] - w[0]).collect();
    let second: Vec<i64> = first.windows(2).map(|w| w[1] - w[0]).collect();
    let ok = first.iter().all(|&d| d > 0) && second.iter().all(|d| d.abs() <= 8);
    Ok((ok, format!("depths {depths:?}")))
}

fn global_invariants() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 4);
    let params = WalkParams::new(256, 0.5, 0.9, 1000)?;
    let op = StepOperator::new(&params)?;
    let mut f = random_field(&mut rng, 256);
    let mut norm_dev = 0.0f64;
    let mut bounds_ok = true;
    for _ in 0..1000 {
        f = op.apply(&f)?;
        norm_dev = norm_dev.max((f.norm() - 1.0).abs());
        let rho = reduced_internal(&f);
        let s = rho.entropy_bits()?;
        let v = -(rho.matrix()[(0, 0)].re - rho.matrix()[(1, 1)].re);
        bounds_ok &= (0.0..=1.0 + 1e-9).contains(&s) && v.abs() <= 1.0 + 1e-12;
    }
    let rows = emit_profile(&[1.0, 0.75, 0.5, 0.25, 0.1], 64)?;
    let row_dev = rows
        .iter()
        .map(|r| (r.total_prob() - 1.0).abs())
        .fold(0.0, f64::max);
    Ok((
        norm_dev <= 1e-9 && bounds_ok && row_dev < 1e-10,
        format!("norm drift {norm_dev:.2e}, row-sum dev {row_dev:.2e}"),
    ))
}

/// Runs every check in order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        check("amplitude closed form vs literal sum", amplitude_closed_form),
        check("cellular automaton limit", dca_limit),
        check("infinite lattice limit", infinite_limit),
        check("splitting error order", strang_order),
        check("internal/external entropy identity", entropy_identity),
        check("massless vs massive Zitterbewegung", zitterbewegung_runs),
        check("circuit vs step operator", circuit_equivalence),
        check("circuit depth growth", depth_growth),
        check("norm, entropy, velocity, row-sum bounds", global_invariants),
    ]
}
