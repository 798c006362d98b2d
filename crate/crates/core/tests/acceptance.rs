//! Acceptance criteria 1–10. Each test prints one `PASS`/`FAIL` line and then
//! asserts, so `cargo test --test acceptance -- --nocapture` gives the full
//! scoreboard. Reference values come from code written here, not from the
//! library routines under test.

use std::f64::consts::{PI, TAU};
use std::time::{Duration, Instant};

use diracwalk::amplitudes::{infinite_limit_prob, transition_amplitude, translation_matrix};
use diracwalk::circuit::{build_qft, build_step_circuit, depth_curve};
use diracwalk::evolution::{fitted_error_order, trotter_local_error, StepOperator};
use diracwalk::momentum::{Mat2, PhaseSign};
use diracwalk::observables::{
    entropy_bits, observe_walk, reduced_external, reduced_internal, velocity, DensityMatrix2,
};
use diracwalk::verify::run_all;
use diracwalk::{dca_step, step, InitialCondition, SpinorField, WalkParams};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn report(id: u32, ok: bool, detail: String) {
    println!("{} criterion {id}: {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "criterion {id}: {detail}");
}

fn random_field(rng: &mut ChaCha8Rng, n: usize) -> SpinorField {
    let amps: Vec<Complex64> = (0..2 * n)
        .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    SpinorField::from_amps(n, amps.into_iter().map(|a| a / norm).collect()).unwrap()
}

/// `(1/N) Σ_j exp(2πi j a / N)` term by term, `a = δt − q` or `δt + q`.
fn literal_amplitude(q: i64, dt: f64, n: usize, sign: PhaseSign) -> Complex64 {
    let a = match sign {
        PhaseSign::Plus => dt - q as f64,
        PhaseSign::Minus => dt + q as f64,
    };
    let nf = n as f64;
    let mut sum = c(0.0, 0.0);
    for j in 0..n {
        sum += Complex64::from_polar(1.0, TAU * (j as f64 * a).rem_euclid(nf) / nf);
    }
    sum / nf
}

/// Real-space nearest-neighbour update: `ψ_R` pulls from `x+1`, `ψ_L` from
/// `x−1`, each mixed with the other component at `x` by `−i sin(θ/2)`.
fn automaton(field: &SpinorField, theta: f64) -> Vec<Complex64> {
    let n = field.n_sites();
    let (s, co) = (theta / 2.0).sin_cos();
    let (r, l) = field.amps().split_at(n);
    let mut out = vec![c(0.0, 0.0); 2 * n];
    for x in 0..n {
        out[x] = r[(x + 1) % n] * co + c(0.0, -s) * l[x];
        out[n + x] = l[(x + n - 1) % n] * co + c(0.0, -s) * r[x];
    }
    out
}

fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn mat_dev(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    max_dev(a.as_slice(), b.as_slice())
}

/// Binary entropy of a 2×2 density matrix from its trace and determinant.
fn entropy_2x2(rho: &Mat2) -> f64 {
    let tr = (rho[(0, 0)] + rho[(1, 1)]).re;
    let det = (rho[(0, 0)] * rho[(1, 1)] - rho[(0, 1)] * rho[(1, 0)]).re;
    let disc = (tr * tr / 4.0 - det).max(0.0).sqrt();
    [tr / 2.0 + disc, tr / 2.0 - disc]
        .iter()
        .filter(|&&p| p > 1e-15)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Index of the largest non-DC bin of a plain DFT of the mean-removed window.
fn dominant_bin(window: &[f64]) -> usize {
    let len = window.len();
    let mean = window.iter().sum::<f64>() / len as f64;
    let mut best = (0, 0.0);
    for k in 1..=len / 2 {
        let mut acc = c(0.0, 0.0);
        for (t, v) in window.iter().enumerate() {
            acc += Complex64::from_polar(v - mean, -TAU * (k * t % len) as f64 / len as f64);
        }
        if acc.norm() > best.1 + 1e-12 {
            best = (k, acc.norm());
        }
    }
    best.0
}

fn peak_to_peak(v: &[f64]) -> f64 {
    let hi = v.iter().cloned().fold(f64::MIN, f64::max);
    let lo = v.iter().cloned().fold(f64::MAX, f64::min);
    hi - lo
}

#[test]
fn criterion_01_amplitude_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for i in 0..1000 {
        let n = 1usize << rng.gen_range(3..=8);
        let q = rng.gen_range(-(n as i64)..=n as i64);
        // (0, 2]
        let dt = 2.0 - rng.gen_range(0.0..2.0);
        let sign = if i % 2 == 0 { PhaseSign::Plus } else { PhaseSign::Minus };
        let dev = (transition_amplitude(q, dt, n, sign) - literal_amplitude(q, dt, n, sign)).norm();
        worst = worst.max(dev);
    }
    let elapsed = start.elapsed();
    report(
        1,
        worst <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("max |closed − sum| = {worst:.2e} over 1000 draws in {elapsed:.2?}"),
    );
}

#[test]
fn criterion_02_automaton_limit() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = if i % 2 == 0 { 8 } else { 32 };
        let theta = rng.gen_range(-PI..PI);
        let f = random_field(&mut rng, n);
        let params = WalkParams::new(n, 1.0, theta, 1).unwrap();
        let spectral = step(&f, &params).unwrap();
        let want = automaton(&f, theta);
        worst = worst.max(max_dev(spectral.amps(), &want));
        worst = worst.max(max_dev(dca_step(&f, theta).amps(), &want));
    }
    let mut perm_dev = 0.0f64;
    for n in [8usize, 32] {
        let plus = translation_matrix(PhaseSign::Plus, 1.0, n).unwrap();
        let minus = translation_matrix(PhaseSign::Minus, 1.0, n).unwrap();
        for x in 0..n {
            for y in 0..n {
                let p = if y == (x + n - 1) % n { 1.0 } else { 0.0 };
                let m = if y == (x + 1) % n { 1.0 } else { 0.0 };
                perm_dev = perm_dev.max((plus[(x, y)] - p).norm());
                perm_dev = perm_dev.max((minus[(x, y)] - m).norm());
            }
        }
    }
    report(
        2,
        worst <= 1e-12 && perm_dev <= 1e-12,
        format!("step vs automaton {worst:.2e}, shift matrices vs permutations {perm_dev:.2e}"),
    );
}

#[test]
fn criterion_03_infinite_lattice_limit() {
    let n = 4096;
    let sinc2 = |a: f64| {
        if a == 0.0 {
            1.0
        } else {
            ((PI * a).sin() / (PI * a)).powi(2)
        }
    };
    let mut worst = 0.0f64;
    for q in -8i64..=8 {
        let finite = literal_amplitude(q, 0.5, n, PhaseSign::Plus).norm_sqr();
        worst = worst.max((finite - sinc2(0.5 - q as f64)).abs());
        worst = worst.max((finite - infinite_limit_prob(q, 0.5, PhaseSign::Plus)).abs());
        let finite_m = literal_amplitude(q, 0.5, n, PhaseSign::Minus).norm_sqr();
        worst = worst.max((finite_m - sinc2(0.5 + q as f64)).abs());
    }
    let at_zero = infinite_limit_prob(1, 1.0, PhaseSign::Plus);
    let a0 = transition_amplitude(0, 0.5, n, PhaseSign::Plus).norm_sqr();
    let a0_dev = (a0 - 4.0 / (PI * PI)).abs();
    report(
        3,
        worst <= 1e-4 && (at_zero - 1.0).abs() <= 1e-12 && a0_dev <= 1e-4,
        format!(
            "max |finite − limit| = {worst:.2e}, limit at zero offset {at_zero}, \
             |A_0|² − 4/π² = {a0_dev:.2e}"
        ),
    );
}

#[test]
fn criterion_04_splitting_order() {
    let dts = [0.2, 0.1, 0.05, 0.025];
    let p = fitted_error_order(1.0, 1.0, &dts);
    // independent least-squares slope
    let pts: Vec<(f64, f64)> = dts
        .iter()
        .map(|&dt| (dt.ln(), trotter_local_error(1.0, 1.0, dt).ln()))
        .collect();
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / 4.0;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / 4.0;
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>()
        / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let mut commuting = 0.0f64;
    for &dt in &[0.3, 0.1, 0.7, 1.5] {
        for &x in &[-2.0, -0.4, 0.9, 2.5] {
            commuting = commuting.max(trotter_local_error(0.0, x, dt));
            commuting = commuting.max(trotter_local_error(x, 0.0, dt));
        }
    }
    report(
        4,
        (2.7..=3.3).contains(&p) && (p - slope).abs() < 1e-9 && commuting < 1e-14,
        format!("fitted order {p:.4} (check {slope:.4}), commuting-case error {commuting:.1e}"),
    );
}

#[test]
fn criterion_05_entropy_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let n = 1usize << (1 + i % 6);
        let f = random_field(&mut rng, n);
        // spin reduced state by hand
        let (r, l) = f.amps().split_at(n);
        let dot = |a: &[Complex64], b: &[Complex64]| -> Complex64 {
            a.iter().zip(b).map(|(x, y)| x * y.conj()).sum()
        };
        let rho = Mat2::new(dot(r, r), dot(r, l), dot(l, r), dot(l, l));
        let s_hand = entropy_2x2(&rho);
        let s_c = reduced_internal(&f).entropy_bits().unwrap();
        let s_x = entropy_bits(&reduced_external(&f).unwrap()).unwrap();
        worst = worst.max((s_c - s_x).abs()).max((s_c - s_hand).abs());
    }
    let mut product = 0.0f64;
    for _ in 0..20 {
        let n = 16;
        let (a, b) = (c(rng.gen(), rng.gen()), c(rng.gen(), rng.gen()));
        let profile: Vec<Complex64> = (0..n).map(|_| c(rng.gen(), rng.gen())).collect();
        let pn = profile.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        let sn = (a.norm_sqr() + b.norm_sqr()).sqrt();
        let amps: Vec<Complex64> = [a, b]
            .iter()
            .flat_map(|s| profile.iter().map(move |p| s * p / (sn * pn)))
            .collect();
        let f = SpinorField::from_amps(n, amps).unwrap();
        product = product.max(reduced_internal(&f).entropy_bits().unwrap().abs());
        product = product.max(entropy_bits(&reduced_external(&f).unwrap()).unwrap().abs());
    }
    let half = Mat2::identity() * c(0.5, 0.0);
    let mixed = DensityMatrix2(half).entropy_bits().unwrap();
    let mixed_dense = entropy_bits(&DMatrix::identity(2, 2).map(|z: Complex64| z * 0.5)).unwrap();
    let mixed_dev = (mixed - 1.0).abs().max((mixed_dense - 1.0).abs());
    report(
        5,
        worst <= 1e-9 && product <= 1e-9 && mixed_dev <= 1e-12,
        format!(
            "max |S(ρ_c) − S(ρ_x)| = {worst:.2e}, product states {product:.1e}, \
             S(I/2) − 1 = {mixed_dev:.1e}"
        ),
    );
}

#[test]
fn criterion_06_zitterbewegung_runs() {
    let start = Instant::now();
    let ic = InitialCondition::localized_up();
    let mut ok = true;
    let mut notes = Vec::new();
    for dt in [1.0, 0.5] {
        let free = observe_walk(&ic, &WalkParams::new(64, dt, 0.0, 64).unwrap(), false).unwrap();
        let s_free = free.entropy().iter().cloned().fold(0.0, f64::max);
        let v_free = free.velocity().iter().map(|v| (v + 1.0).abs()).fold(0.0, f64::max);
        ok &= s_free <= 1e-9 && v_free <= 1e-9;

        let run = observe_walk(&ic, &WalkParams::new(64, dt, PI / 4.0, 64).unwrap(), false).unwrap();
        let (s, v) = (run.entropy(), run.velocity());
        let skip = s.len() / 10;
        let (bs, bv) = (dominant_bin(&s[skip..]), dominant_bin(&v[skip..]));
        let s_max = s.iter().cloned().fold(0.0, f64::max);
        let v_pp = peak_to_peak(&v);
        ok &= s_max > 0.1 && v_pp > 0.05 && bs.abs_diff(bv) <= 1;
        notes.push(format!(
            "δt={dt}: m=0 S≤{s_free:.0e} |v+1|≤{v_free:.0e}; m=π/4 max S {s_max:.3}, \
             v p-p {v_pp:.3}, bins {bs}/{bv}"
        ));
    }
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(5);
    report(6, ok, format!("{} [{elapsed:.2?}]", notes.join("; ")));
}

#[test]
fn criterion_07_size_and_mass_sweep() {
    let start = Instant::now();
    let ic = InitialCondition::localized_up();
    let sizes = [32usize, 64, 128];
    let mut ok = true;
    let mut notes = Vec::new();
    let mut freq = Vec::new();
    for (label, m) in [("π/4", PI / 4.0), ("π/8", PI / 8.0)] {
        let mut means = Vec::new();
        let mut amps = Vec::new();
        let mut fs = Vec::new();
        for &n in &sizes {
            let run = observe_walk(&ic, &WalkParams::new(n, 1.0, m, n).unwrap(), false).unwrap();
            let (s, v) = (run.entropy(), run.velocity());
            let skip = s.len() / 10;
            means.push(s[skip..].iter().sum::<f64>() / (s.len() - skip) as f64);
            amps.push(peak_to_peak(&v[skip..]) / 2.0);
            fs.push(dominant_bin(&v[skip..]) as f64 / (v.len() - skip) as f64);
        }
        let entropy_up = means.windows(2).all(|w| w[1] >= w[0]);
        let zb_down = amps.windows(2).all(|w| w[1] <= w[0]);
        ok &= entropy_up && zb_down;
        notes.push(format!(
            "m={label}: mean S {:.4?} (non-decreasing: {entropy_up}), \
             ZB amplitude {:.4?} (non-increasing: {zb_down}), freq {:.4?}",
            means, amps, fs
        ));
        freq.push(fs);
    }
    let ordered = freq[0].iter().zip(&freq[1]).all(|(a, b)| a > b);
    ok &= ordered;
    let elapsed = start.elapsed();
    ok &= elapsed < Duration::from_secs(30);
    report(
        7,
        ok,
        format!(
            "N={sizes:?}: {}; freq(π/4) > freq(π/8) at every N: {ordered} [{elapsed:.2?}]",
            notes.join("; ")
        ),
    );
}

/// Normalized `ω^{jl}/√N` with `ω = e^{2πi/N}`.
fn fourier_matrix(n: usize) -> DMatrix<Complex64> {
    let scale = 1.0 / (n as f64).sqrt();
    DMatrix::from_fn(n, n, |j, l| {
        Complex64::from_polar(scale, TAU * ((j * l) % n) as f64 / n as f64)
    })
}

#[test]
fn criterion_08_circuit_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = 0.0f64;
    for n in [8usize, 16] {
        for _ in 0..4 {
            let params =
                WalkParams::new(n, rng.gen_range(0.05..2.0), rng.gen_range(-3.0..3.0), 0).unwrap();
            let circ = build_step_circuit(&params).unitary().unwrap();
            let dense = StepOperator::new(&params).unwrap().dense().unwrap();
            worst = worst.max(mat_dev(&circ, &dense));
        }
    }
    let mut qft = 0.0f64;
    for n_pos in 1..=4 {
        qft = qft.max(mat_dev(&build_qft(n_pos).unitary().unwrap(), &fourier_matrix(1 << n_pos)));
    }
    report(
        8,
        worst <= 1e-8 && qft <= 1e-10,
        format!("circuit vs operator {worst:.2e}, transform circuit vs matrix {qft:.2e}"),
    );
}

#[test]
fn criterion_09_depth_curve() {
    let sizes: Vec<usize> = (3..=10).map(|k| 1usize << k).collect();
    let rows = depth_curve(&sizes, 1.0, PI / 4.0).unwrap();
    let depths: Vec<i64> = rows.iter().map(|r| r.metrics.depth as i64).collect();
    let first: Vec<i64> = depths.windows(2).map(|w| w[1] - w[0]).collect();
    let second: Vec<i64> = first.windows(2).map(|w| w[1] - w[0]).collect();
    let gates: Vec<usize> = rows
        .iter()
        .map(|r| r.metrics.one_qubit + r.metrics.two_qubit)
        .collect();
    let ok = first.iter().all(|&d| d > 0) && second.iter().all(|&d| (0..=8).contains(&d));
    report(
        9,
        ok,
        format!("depth {depths:?}, second differences {second:?}, gate counts {gates:?}"),
    );
}

#[test]
fn criterion_10_invariant_suite() {
    let start = Instant::now();
    let checks = run_all();
    let suite_ok = checks.iter().all(|r| r.passed);
    for r in &checks {
        println!("    {} {}: {}", if r.passed { "ok  " } else { "FAIL" }, r.name, r.detail);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let params = WalkParams::new(256, 0.5, 1.1, 1000).unwrap();
    let op = StepOperator::new(&params).unwrap();
    let mut f = random_field(&mut rng, 256);
    let (mut drift, mut bounds) = (0.0f64, true);
    for _ in 0..1000 {
        f = op.apply(&f).unwrap();
        drift = drift.max((f.norm() - 1.0).abs());
        let s = reduced_internal(&f).entropy_bits().unwrap();
        bounds &= (-1e-12..=1.0 + 1e-9).contains(&s) && velocity(&f).abs() <= 1.0 + 1e-12;
    }
    let mut rows = 0.0f64;
    for dt in [1.0, 0.75, 0.5, 0.25, 0.1] {
        let total: f64 = (-31i64..=32)
            .map(|q| literal_amplitude(q, dt, 64, PhaseSign::Plus).norm_sqr())
            .sum();
        rows = rows.max((total - 1.0).abs());
    }
    let elapsed = start.elapsed();
    report(
        10,
        suite_ok && drift <= 1e-9 && bounds && rows <= 1e-10 && elapsed < Duration::from_secs(60),
        format!(
            "{}/{} suite checks, norm drift {drift:.2e} over 1000 steps at N=256, \
             bounds held: {bounds}, row-sum dev {rows:.1e} [{elapsed:.2?}]",
            checks.iter().filter(|r| r.passed).count(),
            checks.len()
        ),
    );
}
