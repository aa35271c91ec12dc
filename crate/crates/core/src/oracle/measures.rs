//! Moments and spectral quantities of oracle density operators.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

use super::{annihilation, embed, hermitian_eigenvalues, FockOperator, HERMITIAN_TOLERANCE, NEGATIVE_FLOOR};
use crate::error::{invalid, Error, Result};
use crate::symplectic::{CovarianceMatrix, GaussianState};

fn expectation(rho: &DMatrix<Complex64>, op: &DMatrix<Complex64>) -> Complex64 {
    // Tr(ρ X) = Σ_ij ρ_ij X_ji
    rho.iter()
        .zip(op.transpose().iter())
        .map(|(a, b)| a * b)
        .sum()
}

/// Quadrature means and covariance of `rho` (normalized by its trace),
/// in the vacuum-variance-one convention.
pub fn covariance_of(rho: &FockOperator) -> Result<GaussianState> {
    let dims = rho.mode_dims().to_vec();
    let n = dims.len();
    let norm = rho.trace().re;
    if !(norm > 0.0) {
        return Err(Error::Numerical("density operator has zero trace".into()));
    }
    let r = rho.entries() / Complex64::new(norm, 0.0);
    let ops: Vec<DMatrix<Complex64>> = (0..n).map(|m| embed(&annihilation(dims[m]), m, &dims)).collect();
    let first: Vec<Complex64> = ops.iter().map(|a| expectation(&r, a)).collect();

    let mut mean = DVector::zeros(2 * n);
    for i in 0..n {
        mean[2 * i] = 2.0 * first[i].re;
        mean[2 * i + 1] = 2.0 * first[i].im;
    }
    let mut v = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in i..n {
            // ⟨a_i a_j⟩ and ⟨a_i† a_j⟩
            let aa = expectation(&r, &(&ops[i] * &ops[j]));
            let ada = expectation(&r, &(ops[i].adjoint() * &ops[j]));
            if i == j {
                let xx = 2.0 * aa.re + 2.0 * ada.re + 1.0;
                let pp = -2.0 * aa.re + 2.0 * ada.re + 1.0;
                let xp = 2.0 * aa.im;
                v[(2 * i, 2 * i)] = xx;
                v[(2 * i + 1, 2 * i + 1)] = pp;
                v[(2 * i, 2 * i + 1)] = xp;
                v[(2 * i + 1, 2 * i)] = xp;
            } else {
                let xx = 2.0 * aa.re + 2.0 * ada.re;
                let pp = -2.0 * aa.re + 2.0 * ada.re;
                let xi_pj = 2.0 * aa.im + 2.0 * ada.im;
                let pi_xj = 2.0 * aa.im - 2.0 * ada.im;
                v[(2 * i, 2 * j)] = xx;
                v[(2 * i + 1, 2 * j + 1)] = pp;
                v[(2 * i, 2 * j + 1)] = xi_pj;
                v[(2 * i + 1, 2 * j)] = pi_xj;
                v[(2 * j, 2 * i)] = xx;
                v[(2 * j + 1, 2 * i + 1)] = pp;
                v[(2 * j + 1, 2 * i)] = xi_pj;
                v[(2 * j, 2 * i + 1)] = pi_xj;
            }
        }
    }
    for i in 0..2 * n {
        for j in 0..2 * n {
            v[(i, j)] -= mean[i] * mean[j];
        }
    }
    GaussianState::new(mean, CovarianceMatrix::new(v)?)
}

struct Spectrum {
    values: Vec<f64>,
    vectors: DMatrix<Complex64>,
}

fn density_spectrum(rho: &FockOperator) -> Result<Spectrum> {
    let herm = rho.hermiticity_error();
    if herm > HERMITIAN_TOLERANCE {
        return Err(Error::NotHermitian(herm));
    }
    let h = (rho.entries() + rho.entries().adjoint()) * Complex64::new(0.5, 0.0);
    let eig = SymmetricEigen::new(h);
    let mut values = Vec::with_capacity(eig.eigenvalues.len());
    for &l in eig.eigenvalues.iter() {
        if l < NEGATIVE_FLOOR {
            return Err(Error::NegativeSpectrum(l));
        }
        values.push(l.max(0.0));
    }
    Ok(Spectrum {
        values,
        vectors: eig.eigenvectors,
    })
}

fn check_pair(rho0: &FockOperator, rho1: &FockOperator) -> Result<()> {
    if rho0.mode_dims() != rho1.mode_dims() {
        return Err(invalid(
            "rho1",
            format!("mode dimensions {:?} and {:?} differ", rho0.mode_dims(), rho1.mode_dims()),
        ));
    }
    Ok(())
}

/// `Tr[ρ0^s ρ1^(1-s)]` from the spectral decompositions of both operators.
pub fn q_s_numeric(rho0: &FockOperator, rho1: &FockOperator, s: f64) -> Result<f64> {
    check_pair(rho0, rho1)?;
    if !(0.0..=1.0).contains(&s) {
        return Err(invalid("s", format!("{s} is outside [0, 1]")));
    }
    let a = density_spectrum(rho0)?;
    let b = density_spectrum(rho1)?;
    let pow = |x: f64, p: f64| if p == 0.0 { 1.0 } else { x.powf(p) };
    let pa: Vec<f64> = a.values.iter().map(|&x| pow(x, s)).collect();
    let pb: Vec<f64> = b.values.iter().map(|&x| pow(x, 1.0 - s)).collect();
    // Tr = Σ_ij a_i^s b_j^(1-s) |⟨u_i|v_j⟩|²
    let overlap = a.vectors.adjoint() * &b.vectors;
    let mut total = 0.0;
    for j in 0..pb.len() {
        if pb[j] == 0.0 {
            continue;
        }
        for i in 0..pa.len() {
            total += pa[i] * pb[j] * overlap[(i, j)].norm_sqr();
        }
    }
    Ok(total)
}

/// Single-copy minimum error `½(1 - ½‖ρ0 - ρ1‖₁)`.
pub fn helstrom_error_single_copy(rho0: &FockOperator, rho1: &FockOperator) -> Result<f64> {
    check_pair(rho0, rho1)?;
    density_spectrum(rho0)?;
    density_spectrum(rho1)?;
    let diff = rho0.entries() - rho1.entries();
    let trace_norm: f64 = hermitian_eigenvalues(&diff).iter().map(|x| x.abs()).sum();
    Ok(0.5 * (1.0 - 0.5 * trace_norm))
}
