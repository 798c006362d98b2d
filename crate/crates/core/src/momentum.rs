//! Real/momentum space transforms and diagonal momentum-phase operators.
//!
//! The transform is the unitary DFT `F[j, l] = ω^{jl} / √N`, `ω = e^{2πi/N}`.
//! Note the positive exponent: this is what an FFT library calls the
//! *inverse* direction, rescaled.

use std::f64::consts::TAU;
use std::sync::Arc;

use nalgebra::Matrix2;
use num_complex::Complex64;
use rustfft::{Fft, FftDirection, FftPlanner};

use crate::error::{Result, WalkError};

pub type Mat2 = Matrix2<Complex64>;

/// Sign of the exponent in a momentum-phase diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseSign {
    Plus,
    Minus,
}

impl PhaseSign {
    pub fn as_f64(self) -> f64 {
        match self {
            PhaseSign::Plus => 1.0,
            PhaseSign::Minus => -1.0,
        }
    }
}

fn check_len(len: usize) -> Result<()> {
    if len.is_power_of_two() {
        Ok(())
    } else {
        Err(WalkError::NotPowerOfTwo(len))
    }
}

/// Cached forward/inverse FFT plans for one transform length.
#[derive(Clone)]
pub struct Dft {
    len: usize,
    scale: f64,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for Dft {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Dft").field("len", &self.len).finish()
    }
}

impl Dft {
    pub fn new(len: usize) -> Result<Self> {
        check_len(len)?;
        let mut planner = FftPlanner::new();
        Ok(Self {
            len,
            scale: 1.0 / (len as f64).sqrt(),
            // rustfft's "inverse" uses e^{+2πi jl/N}, which is our forward map.
            forward: planner.plan_fft(len, FftDirection::Inverse),
            inverse: planner.plan_fft(len, FftDirection::Forward),
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// In-place `v ← F v`. `buf.len()` may be any multiple of the length;
    /// each chunk is transformed independently.
    pub fn forward_in_place(&self, buf: &mut [Complex64]) {
        self.forward.process(buf);
        buf.iter_mut().for_each(|a| *a *= self.scale);
    }

    /// In-place `v ← F† v`, chunked like [`Dft::forward_in_place`].
    pub fn inverse_in_place(&self, buf: &mut [Complex64]) {
        self.inverse.process(buf);
        buf.iter_mut().for_each(|a| *a *= self.scale);
    }
}

/// Unitary forward transform of one spin component.
pub fn dft_forward(v: &[Complex64]) -> Result<Vec<Complex64>> {
    let dft = Dft::new(v.len())?;
    let mut out = v.to_vec();
    dft.forward_in_place(&mut out);
    Ok(out)
}

/// Conjugate transpose of [`dft_forward`].
pub fn dft_inverse(v: &[Complex64]) -> Result<Vec<Complex64>> {
    let dft = Dft::new(v.len())?;
    let mut out = v.to_vec();
    dft.inverse_in_place(&mut out);
    Ok(out)
}

/// Direct O(N²) evaluation of the transform matrix, for small sizes and cross-checks.
pub fn dft_naive(v: &[Complex64], sign: PhaseSign) -> Vec<Complex64> {
    let n = v.len();
    let scale = 1.0 / (n as f64).sqrt();
    (0..n)
        .map(|j| {
            v.iter()
                .enumerate()
                .map(|(l, &a)| a * root_of_unity(sign.as_f64() * ((j * l) % n) as f64, n))
                .sum::<Complex64>()
                * scale
        })
        .collect()
}

/// `e^{2πi r / n}`.
fn root_of_unity(r: f64, n: usize) -> Complex64 {
    Complex64::from_polar(1.0, TAU * r / n as f64)
}

/// Dense `N×N` transform matrix `ω^{jl}/√N` (row `j`, column `l`).
pub fn dft_matrix(n: usize) -> nalgebra::DMatrix<Complex64> {
    let scale = 1.0 / (n as f64).sqrt();
    nalgebra::DMatrix::from_fn(n, n, |j, l| root_of_unity(((j * l) % n) as f64, n) * scale)
}

/// Diagonal `diag(ω^{±j·δt})`, `j = 0..N−1`, on the `[0, N)` branch.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseDiagonal {
    n_sites: usize,
    dt: f64,
    sign: PhaseSign,
    values: Vec<Complex64>,
}

impl PhaseDiagonal {
    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn sign(&self) -> PhaseSign {
        self.sign
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Multiplies `v` elementwise by the diagonal.
    pub fn apply_in_place(&self, v: &mut [Complex64]) {
        v.iter_mut().zip(&self.values).for_each(|(a, d)| *a *= d);
    }
}

/// Builds `Q̂_±^{δt}` as a diagonal of `N` unit phases.
pub fn phase_diagonal(sign: PhaseSign, dt: f64, n_sites: usize) -> Result<PhaseDiagonal> {
    check_len(n_sites)?;
    let n = n_sites as f64;
    let values = (0..n_sites)
        .map(|j| {
            // reduce j·δt mod N before scaling so integer δt lands on exact roots
            let r = (j as f64 * dt).rem_euclid(n);
            root_of_unity(sign.as_f64() * r, n_sites)
        })
        .collect();
    Ok(PhaseDiagonal {
        n_sites,
        dt,
        sign,
        values,
    })
}

/// Lattice momenta `k_j = 2πj/N` wrapped into `(−π, π]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeGrid {
    k: Vec<f64>,
}

impl ModeGrid {
    pub fn new(n_sites: usize) -> Result<Self> {
        check_len(n_sites)?;
        let k = (0..n_sites)
            .map(|j| {
                let j = if j <= n_sites / 2 {
                    j as f64
                } else {
                    j as f64 - n_sites as f64
                };
                TAU * j / n_sites as f64
            })
            .collect();
        Ok(Self { k })
    }

    pub fn k(&self) -> &[f64] {
        &self.k
    }
}

/// `exp(−i (−σ_z k + μ σ_x) δt)` in closed form.
pub fn exact_mode_propagator(k: f64, mu: f64, dt: f64) -> Mat2 {
    let energy = k.hypot(mu);
    if energy == 0.0 {
        return Mat2::identity();
    }
    let (s, c) = (energy * dt).sin_cos();
    let a = s / energy;
    // cos(Eδt)·I − i·(sin(Eδt)/E)·(−k σ_z + μ σ_x)
    Mat2::new(
        Complex64::new(c, a * k),
        Complex64::new(0.0, -a * mu),
        Complex64::new(0.0, -a * mu),
        Complex64::new(c, -a * k),
    )
}

/// Largest entry modulus of a complex matrix or slice.
pub fn max_abs<'a>(entries: impl IntoIterator<Item = &'a Complex64>) -> f64 {
    entries.into_iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Coin rotation `[[cos(θ/2), −i sin(θ/2)], [−i sin(θ/2), cos(θ/2)]]`.
pub fn coin(theta: f64) -> Mat2 {
    let (s, c) = (theta / 2.0).sin_cos();
    Mat2::new(
        Complex64::new(c, 0.0),
        Complex64::new(0.0, -s),
        Complex64::new(0.0, -s),
        Complex64::new(c, 0.0),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_vec(rng: &mut impl Rng, n: usize) -> Vec<Complex64> {
        (0..n)
            .map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect()
    }

    fn max_dev(a: &[Complex64], b: &[Complex64]) -> f64 {
        a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    #[test]
    fn delta_at_origin_is_uniform() {
        let mut v = vec![c(0.0, 0.0); 4];
        v[0] = c(1.0, 0.0);
        let out = dft_forward(&v).unwrap();
        assert!(max_dev(&out, &[c(0.5, 0.0); 4]) < 1e-15);
    }

    #[test]
    fn delta_at_site_one_follows_column() {
        let mut v = vec![c(0.0, 0.0); 4];
        v[1] = c(1.0, 0.0);
        let out = dft_forward(&v).unwrap();
        let want = [c(0.5, 0.0), c(0.0, 0.5), c(-0.5, 0.0), c(0.0, -0.5)];
        assert!(max_dev(&out, &want) < 1e-15);
    }

    #[test]
    fn fast_and_naive_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2usize, 4, 8, 16, 32, 64] {
            let v = random_vec(&mut rng, n);
            let fast = dft_forward(&v).unwrap();
            assert!(max_dev(&fast, &dft_naive(&v, PhaseSign::Plus)) < 1e-10);
            let fast_inv = dft_inverse(&v).unwrap();
            assert!(max_dev(&fast_inv, &dft_naive(&v, PhaseSign::Minus)) < 1e-10);
            let back = dft_inverse(&fast).unwrap();
            assert!(max_dev(&back, &v) < 1e-12);
        }
    }

    #[test]
    fn dense_matrix_is_unitary() {
        for n in [2usize, 8, 64] {
            let f = dft_matrix(n);
            let err = max_abs(&(f.adjoint() * &f - nalgebra::DMatrix::identity(n, n)));
            assert!(err < 1e-12, "n={n} err={err}");
        }
    }

    #[test]
    fn rejects_non_power_of_two() {
        assert_eq!(dft_forward(&[c(1.0, 0.0); 6]), Err(WalkError::NotPowerOfTwo(6)));
    }

    #[test]
    fn phase_diagonal_examples() {
        let d = phase_diagonal(PhaseSign::Plus, 1.0, 4).unwrap();
        let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        assert!(max_dev(d.values(), &want) < 1e-15);
        for sign in [PhaseSign::Plus, PhaseSign::Minus] {
            let d = phase_diagonal(sign, 0.0, 16).unwrap();
            assert!(d.values().iter().all(|v| *v == c(1.0, 0.0)));
        }
        let d = phase_diagonal(PhaseSign::Minus, 0.5, 4).unwrap();
        assert!((d.values()[1] - Complex64::from_polar(1.0, -PI / 4.0)).norm() < 1e-15);
    }

    #[test]
    fn integer_dt_diagonal_to_the_n_is_identity() {
        for dt in [1.0, 2.0, 3.0, -1.0] {
            let n = 16;
            let d = phase_diagonal(PhaseSign::Plus, dt, n).unwrap();
            for v in d.values() {
                assert!((v.powu(n as u32) - c(1.0, 0.0)).norm() < 1e-12);
                assert!((v.norm() - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn mode_grid_range() {
        let g = ModeGrid::new(8).unwrap();
        assert!(g.k().iter().all(|&k| k > -PI && k <= PI));
        assert!((g.k()[4] - PI).abs() < 1e-15);
        assert!((g.k()[7] + PI / 4.0).abs() < 1e-15);
    }

    #[test]
    fn propagator_limits() {
        let (k, mu, dt) = (0.7, 0.0, 0.3);
        let u = exact_mode_propagator(k, mu, dt);
        assert!((u[(0, 0)] - Complex64::from_polar(1.0, k * dt)).norm() < 1e-15);
        assert!((u[(1, 1)] - Complex64::from_polar(1.0, -k * dt)).norm() < 1e-15);
        assert_eq!(u[(0, 1)], c(0.0, 0.0));

        let u = exact_mode_propagator(0.0, 1.3, 0.4);
        let (s, co) = (1.3f64 * 0.4).sin_cos();
        let want = Mat2::new(c(co, 0.0), c(0.0, -s), c(0.0, -s), c(co, 0.0));
        assert!(max_abs(&(u - want)) < 1e-15);

        assert_eq!(exact_mode_propagator(0.0, 0.0, 5.0), Mat2::identity());
    }
}
