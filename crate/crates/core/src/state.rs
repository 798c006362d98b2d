//! Two-component spinor field on a periodic lattice.
//!
//! Amplitudes are stored spin-major: index `s * N + x` holds `ψ_s(x)`, with
//! `s = 0` the right-moving component `ψ_R` (σ_z = +1) and `s = 1` the
//! left-moving component `ψ_L` (σ_z = −1). Site 0 is the displayed origin;
//! negative coordinates wrap to the top of the index range.

use num_complex::Complex64;

use crate::error::{Result, WalkError};

/// Spin label of the two spinor components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spin {
    R = 0,
    L = 1,
}

impl Spin {
    pub fn index(self) -> usize {
        self as usize
    }
}

pub(crate) fn check_sites(n_sites: usize) -> Result<()> {
    if n_sites >= 2 && n_sites.is_power_of_two() {
        Ok(())
    } else {
        Err(WalkError::NotPowerOfTwo(n_sites))
    }
}

/// Spatial part of an initial condition.
#[derive(Debug, Clone, PartialEq)]
pub enum PositionProfile {
    /// Fully localized on one lattice site (internal index).
    Site(usize),
    /// Gaussian wave packet; `center` is a signed lattice coordinate and
    /// `sigma` the standard deviation of the probability density.
    Gaussian { center: f64, sigma: f64 },
}

/// Product initial state `spin ⊗ position`.
#[derive(Debug, Clone, PartialEq)]
pub struct InitialCondition {
    spin: [Complex64; 2],
    position: PositionProfile,
}

impl InitialCondition {
    /// Builds an initial condition, normalizing the spin pair.
    pub fn new(c_r: Complex64, c_l: Complex64, position: PositionProfile) -> Result<Self> {
        let norm = (c_r.norm_sqr() + c_l.norm_sqr()).sqrt();
        if !norm.is_finite() || norm <= 0.0 {
            return Err(WalkError::ZeroSpin);
        }
        if let PositionProfile::Gaussian { sigma, center } = position {
            if !sigma.is_finite() || sigma <= 0.0 || !center.is_finite() {
                return Err(WalkError::InvalidSigma(sigma));
            }
        }
        Ok(Self {
            spin: [c_r / norm, c_l / norm],
            position,
        })
    }

    /// `|0⟩ ⊗ |x = 0⟩`, the localized right-mover used for the Zitterbewegung runs.
    pub fn localized_up() -> Self {
        Self {
            spin: [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            position: PositionProfile::Site(0),
        }
    }

    pub fn spin(&self) -> [Complex64; 2] {
        self.spin
    }

    pub fn position(&self) -> &PositionProfile {
        &self.position
    }
}

/// Spinor amplitudes over `N` periodic lattice sites.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorField {
    n_sites: usize,
    amps: Vec<Complex64>,
}

impl SpinorField {
    /// Wraps raw spin-major amplitudes. Normalization is not enforced.
    pub fn from_amps(n_sites: usize, amps: Vec<Complex64>) -> Result<Self> {
        check_sites(n_sites)?;
        if amps.len() != 2 * n_sites {
            return Err(WalkError::LengthMismatch {
                expected: 2 * n_sites,
                got: amps.len(),
            });
        }
        Ok(Self { n_sites, amps })
    }

    pub fn zeros(n_sites: usize) -> Result<Self> {
        Self::from_amps(n_sites, vec![Complex64::new(0.0, 0.0); 2 * n_sites])
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amps(self) -> Vec<Complex64> {
        self.amps
    }

    /// Contiguous block of one spin component.
    pub fn component(&self, spin: Spin) -> &[Complex64] {
        let start = spin.index() * self.n_sites;
        &self.amps[start..start + self.n_sites]
    }

    pub fn get(&self, spin: Spin, x: usize) -> Complex64 {
        self.amps[flat_index(spin, x, self.n_sites)]
    }

    /// Euclidean 2-norm of all amplitudes.
    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Total probability carried by one spin component.
    pub fn population(&self, spin: Spin) -> f64 {
        self.component(spin).iter().map(|a| a.norm_sqr()).sum()
    }

    /// Position probability `Σ_s |ψ_s(x)|²` indexed by internal site.
    pub fn position_distribution(&self) -> Vec<f64> {
        let (r, l) = self.amps.split_at(self.n_sites);
        r.iter()
            .zip(l)
            .map(|(a, b)| a.norm_sqr() + b.norm_sqr())
            .collect()
    }

    pub fn scaled(&self, factor: Complex64) -> Self {
        Self {
            n_sites: self.n_sites,
            amps: self.amps.iter().map(|a| a * factor).collect(),
        }
    }
}

/// Flat amplitude index of `(spin, x)`.
pub fn flat_index(spin: Spin, x: usize, n_sites: usize) -> usize {
    spin.index() * n_sites + x
}

/// Inverse of [`flat_index`].
pub fn split_index(index: usize, n_sites: usize) -> (Spin, usize) {
    let spin = if index < n_sites { Spin::R } else { Spin::L };
    (spin, index % n_sites)
}

/// Builds the normalized product state described by `ic` on `n_sites` sites.
pub fn init_state(ic: &InitialCondition, n_sites: usize) -> Result<SpinorField> {
    check_sites(n_sites)?;
    let profile: Vec<Complex64> = match ic.position {
        PositionProfile::Site(x0) => {
            if x0 >= n_sites {
                return Err(WalkError::SiteOutOfRange {
                    index: x0,
                    n_sites,
                });
            }
            let mut v = vec![Complex64::new(0.0, 0.0); n_sites];
            v[x0] = Complex64::new(1.0, 0.0);
            v
        }
        PositionProfile::Gaussian { center, sigma } => {
            let n = n_sites as f64;
            let raw: Vec<f64> = (0..n_sites)
                .map(|x| {
                    // minimum-image distance on the ring
                    let d = (x as f64 - center).rem_euclid(n);
                    let d = if d > n / 2.0 { d - n } else { d };
                    (-d * d / (4.0 * sigma * sigma)).exp()
                })
                .collect();
            let norm = raw.iter().map(|a| a * a).sum::<f64>().sqrt();
            raw.into_iter()
                .map(|a| Complex64::new(a / norm, 0.0))
                .collect()
        }
    };
    let amps = ic
        .spin
        .iter()
        .flat_map(|c| profile.iter().map(move |p| c * p))
        .collect();
    SpinorField::from_amps(n_sites, amps)
}

/// Signed display coordinate of internal site `x`, in `(−N/2, N/2]`.
pub fn display_coord(x: usize, n_sites: usize) -> Result<i64> {
    if x >= n_sites {
        return Err(WalkError::SiteOutOfRange {
            index: x,
            n_sites,
        });
    }
    let (x, n) = (x as i64, n_sites as i64);
    Ok(if x <= n / 2 { x } else { x - n })
}

/// Internal site index of a signed lattice coordinate (any integer, taken mod N).
pub fn site_of_coord(coord: i64, n_sites: usize) -> usize {
    coord.rem_euclid(n_sites as i64) as usize
}
