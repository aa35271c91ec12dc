//! Brute-force reference: density operators on a truncated Fock space.
//!
//! States are built by simulating the probe preparation and the lossy thermal
//! channel with dense matrices, then compared with the Gaussian formulas.
//! Only the low-occupancy regime (`N_B ≲ 0.5`) converges at practical sizes.
//!
//! Multi-mode basis states are ordered with mode 0 most significant, so an
//! operator on modes `(S, I)` is the Kronecker product `A_S ⊗ A_I`.

mod measures;
mod scenario;
mod states;
mod unitaries;

pub use measures::{covariance_of, helstrom_error_single_copy, q_s_numeric};
pub use scenario::{oracle_hypotheses, OracleConfig, OraclePair};
pub use states::{lossy_thermal_channel, thermal_state, tmsv_ket};
pub use unitaries::{beamsplitter_unitary, squeeze_unitary_single, squeeze_unitary_two};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{invalid, Error, Result};

/// Default probability weight allowed in the top two levels of each mode.
pub const DEFAULT_TAIL_TOLERANCE: f64 = 1e-8;
pub const DEFAULT_SIGNAL_DIM: usize = 14;
pub const DEFAULT_IDLER_DIM: usize = 14;
pub const DEFAULT_ENV_DIM: usize = 24;

const HERMITIAN_TOLERANCE: f64 = 1e-10;
const NEGATIVE_FLOOR: f64 = -1e-9;

/// Dense operator on `⊗_m C^{d_m}`.
#[derive(Debug, Clone, PartialEq)]
pub struct FockOperator {
    mode_dims: Vec<usize>,
    entries: DMatrix<Complex64>,
}

impl FockOperator {
    pub fn new(mode_dims: Vec<usize>, entries: DMatrix<Complex64>) -> Result<Self> {
        let dim = total_dim(&mode_dims)?;
        if entries.nrows() != dim || entries.ncols() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: entries.nrows(),
            });
        }
        Ok(FockOperator { mode_dims, entries })
    }

    pub fn identity(mode_dims: Vec<usize>) -> Result<Self> {
        let dim = total_dim(&mode_dims)?;
        Ok(FockOperator {
            mode_dims,
            entries: DMatrix::identity(dim, dim),
        })
    }

    pub fn mode_dims(&self) -> &[usize] {
        &self.mode_dims
    }

    pub fn entries(&self) -> &DMatrix<Complex64> {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &FockOperator) -> FockOperator {
        let mut dims = self.mode_dims.clone();
        dims.extend_from_slice(&other.mode_dims);
        FockOperator {
            mode_dims: dims,
            entries: self.entries.kronecker(&other.entries),
        }
    }

    /// `U ρ U†`.
    pub fn conjugate(&self, rho: &FockOperator) -> Result<FockOperator> {
        self.check_same(rho)?;
        Ok(FockOperator {
            mode_dims: rho.mode_dims.clone(),
            entries: &self.entries * &rho.entries * self.entries.adjoint(),
        })
    }

    /// `U |ψ⟩`.
    pub fn apply(&self, ket: &FockKet) -> Result<FockKet> {
        if self.mode_dims != ket.mode_dims {
            return Err(invalid("ket", "mode dimensions differ from the operator's"));
        }
        Ok(FockKet {
            mode_dims: ket.mode_dims.clone(),
            amplitudes: &self.entries * &ket.amplitudes,
        })
    }

    /// Largest elementwise deviation from Hermiticity.
    pub fn hermiticity_error(&self) -> f64 {
        let d = &self.entries - self.entries.adjoint();
        d.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise deviation of `U†U` from the identity, restricted
    /// to basis states at least `margin` levels below every mode's cutoff.
    pub fn unitarity_error(&self, margin: usize) -> f64 {
        let g = self.entries.adjoint() * &self.entries;
        let interior: Vec<usize> = (0..self.dim())
            .filter(|&k| {
                decode(k, &self.mode_dims)
                    .iter()
                    .zip(&self.mode_dims)
                    .all(|(&n, &d)| n + margin < d)
            })
            .collect();
        let mut worst: f64 = 0.0;
        for &i in &interior {
            for &j in &interior {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g[(i, j)] - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    /// Probability weight in the top two levels of each mode, summed over
    /// modes.
    pub fn tail_mass(&self) -> f64 {
        let diag: Vec<f64> = self.entries.diagonal().iter().map(|z| z.re).collect();
        tail_of(&diag, &self.mode_dims)
    }

    /// Checks Hermiticity, the negative-eigenvalue floor and the trace.
    pub fn validate_density(&self, tail_tolerance: f64) -> Result<()> {
        let herm = self.hermiticity_error();
        if herm > HERMITIAN_TOLERANCE {
            return Err(Error::NotHermitian(herm));
        }
        let eig = hermitian_eigenvalues(&self.entries);
        let min = eig.iter().copied().fold(f64::INFINITY, f64::min);
        if min < NEGATIVE_FLOOR {
            return Err(Error::NegativeSpectrum(min));
        }
        let deficit = (self.trace().re - 1.0).abs();
        if deficit > tail_tolerance {
            return Err(Error::Truncation {
                tail_mass: deficit,
                tolerance: tail_tolerance,
            });
        }
        Ok(())
    }

    fn check_same(&self, other: &FockOperator) -> Result<()> {
        if self.mode_dims != other.mode_dims {
            return Err(invalid(
                "operator",
                format!("mode dimensions {:?} and {:?} differ", self.mode_dims, other.mode_dims),
            ));
        }
        Ok(())
    }
}

/// State vector on `⊗_m C^{d_m}`; not necessarily normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct FockKet {
    mode_dims: Vec<usize>,
    amplitudes: DVector<Complex64>,
}

impl FockKet {
    pub fn new(mode_dims: Vec<usize>, amplitudes: DVector<Complex64>) -> Result<Self> {
        let dim = total_dim(&mode_dims)?;
        if amplitudes.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: amplitudes.len(),
            });
        }
        Ok(FockKet { mode_dims, amplitudes })
    }

    /// `|n_0, n_1, ...⟩`.
    pub fn basis(mode_dims: Vec<usize>, levels: &[usize]) -> Result<Self> {
        let dim = total_dim(&mode_dims)?;
        if levels.len() != mode_dims.len() || levels.iter().zip(&mode_dims).any(|(&n, &d)| n >= d) {
            return Err(invalid("levels", format!("{levels:?} outside {mode_dims:?}")));
        }
        let mut amplitudes = DVector::zeros(dim);
        amplitudes[encode(levels, &mode_dims)] = Complex64::new(1.0, 0.0);
        Ok(FockKet { mode_dims, amplitudes })
    }

    pub fn mode_dims(&self) -> &[usize] {
        &self.mode_dims
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn amplitude(&self, levels: &[usize]) -> Complex64 {
        self.amplitudes[encode(levels, &self.mode_dims)]
    }

    pub fn norm_squared(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn density(&self) -> FockOperator {
        FockOperator {
            mode_dims: self.mode_dims.clone(),
            entries: &self.amplitudes * self.amplitudes.adjoint(),
        }
    }

    pub fn tail_mass(&self) -> f64 {
        let p: Vec<f64> = self.amplitudes.iter().map(|z| z.norm_sqr()).collect();
        tail_of(&p, &self.mode_dims)
    }
}

/// Truncation diagnostic: weight in the top two levels of each mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TruncationReport {
    pub tail_mass: f64,
    pub converged: bool,
}

impl TruncationReport {
    pub fn new(tail_mass: f64, tolerance: f64) -> Self {
        TruncationReport {
            tail_mass,
            converged: tail_mass < tolerance,
        }
    }

    /// Worst of two reports.
    pub fn merge(self, other: TruncationReport) -> Self {
        TruncationReport {
            tail_mass: self.tail_mass.max(other.tail_mass),
            converged: self.converged && other.converged,
        }
    }
}

/// Annihilation operator on a single mode of dimension `dim`.
pub fn annihilation(dim: usize) -> DMatrix<Complex64> {
    let mut a = DMatrix::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    a
}

/// `op` acting on `mode`, identity elsewhere.
pub fn embed(op: &DMatrix<Complex64>, mode: usize, mode_dims: &[usize]) -> DMatrix<Complex64> {
    let mut out = DMatrix::from_element(1, 1, Complex64::new(1.0, 0.0));
    for (m, &d) in mode_dims.iter().enumerate() {
        out = if m == mode {
            out.kronecker(op)
        } else {
            out.kronecker(&DMatrix::identity(d, d))
        };
    }
    out
}

pub(crate) fn hermitian_eigenvalues(m: &DMatrix<Complex64>) -> Vec<f64> {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().copied().collect()
}

fn total_dim(mode_dims: &[usize]) -> Result<usize> {
    if mode_dims.is_empty() || mode_dims.iter().any(|&d| d == 0) {
        return Err(invalid("mode_dims", format!("{mode_dims:?} must be non-empty and positive")));
    }
    Ok(mode_dims.iter().product())
}

pub(crate) fn encode(levels: &[usize], mode_dims: &[usize]) -> usize {
    levels.iter().zip(mode_dims).fold(0, |acc, (&n, &d)| acc * d + n)
}

pub(crate) fn decode(mut index: usize, mode_dims: &[usize]) -> Vec<usize> {
    let mut levels = vec![0; mode_dims.len()];
    for (m, &d) in mode_dims.iter().enumerate().rev() {
        levels[m] = index % d;
        index /= d;
    }
    levels
}

fn tail_of(probabilities: &[f64], mode_dims: &[usize]) -> f64 {
    let mut tail = 0.0;
    for (k, &p) in probabilities.iter().enumerate() {
        let levels = decode(k, mode_dims);
        for (&n, &d) in levels.iter().zip(mode_dims) {
            if n + 2 >= d {
                tail += p;
            }
        }
    }
    tail
}
