//! Gaussian unitaries on truncated Fock spaces.
//!
//! Each generator is exponentiated on the subspaces it leaves invariant
//! (photon-number parity, photon-number difference, total photon number).
//! Where such a subspace is infinite it is cut far above the requested
//! dimension, exponentiated, and only then cropped, so the retained matrix
//! elements are those of the untruncated unitary.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::FockOperator;
use crate::error::{invalid, Result};
use crate::symplectic::check_finite;

/// Extra levels carried above the requested dimension before cropping.
fn padding(dim: usize, r: f64) -> usize {
    // Amplitudes leak upward roughly like tanh(r)^k.
    let t = r.abs().tanh().max(1e-3);
    let needed = (40.0 * std::f64::consts::LN_10 / -t.ln()).ceil() as usize;
    needed.clamp(40, 400).max(dim)
}

fn real_to_complex(m: &DMatrix<f64>) -> DMatrix<Complex64> {
    m.map(|x| Complex64::new(x, 0.0))
}

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(invalid("dim", "truncation dimension must be at least 2"));
    }
    Ok(())
}

/// `exp[(r/2)(â†² - â²)]`, which maps vacuum to a state with quadrature
/// variances `(e^{2r}, e^{-2r})`.
pub fn squeeze_unitary_single(r: f64, dim: usize) -> Result<FockOperator> {
    check_finite("r", r)?;
    check_dim(dim)?;
    let big = dim + padding(dim, r);
    let mut k = DMatrix::<f64>::zeros(big, big);
    for n in 0..big.saturating_sub(2) {
        let c = 0.5 * r * (((n + 1) * (n + 2)) as f64).sqrt();
        k[(n + 2, n)] = c;
        k[(n, n + 2)] = -c;
    }
    let u = k.exp();
    let cropped = u.view((0, 0), (dim, dim)).into_owned();
    FockOperator::new(vec![dim], real_to_complex(&cropped))
}

/// `exp[r(â1†â2† - â1â2)]`, which maps vacuum to the two-mode squeezed vacuum
/// with `N_S = sinh² r` and positive amplitudes.
pub fn squeeze_unitary_two(r: f64, dims: [usize; 2]) -> Result<FockOperator> {
    check_finite("r", r)?;
    check_dim(dims[0])?;
    check_dim(dims[1])?;
    let [d1, d2] = dims;
    let big = d1.max(d2) + padding(d1.max(d2), r);
    let mut out = DMatrix::<Complex64>::zeros(d1 * d2, d1 * d2);
    // Invariant subspaces: fixed n1 - n2 = δ, spanned by |k + δ1, k + δ2⟩.
    let max_shift = d1.max(d2);
    for shift in 0..max_shift {
        let mut k = DMatrix::<f64>::zeros(big, big);
        for j in 0..big - 1 {
            let c = r * (((j + 1) * (j + shift + 1)) as f64).sqrt();
            k[(j + 1, j)] = c;
            k[(j, j + 1)] = -c;
        }
        let u = k.exp();
        let offsets: &[(usize, usize)] = if shift == 0 {
            &[(0, 0)]
        } else {
            &[(shift, 0), (0, shift)]
        };
        for &(o1, o2) in offsets {
            for a in 0..big {
                let (n1a, n2a) = (a + o1, a + o2);
                if n1a >= d1 || n2a >= d2 {
                    continue;
                }
                for b in 0..big {
                    let (n1b, n2b) = (b + o1, b + o2);
                    if n1b >= d1 || n2b >= d2 {
                        continue;
                    }
                    out[(n1a * d2 + n2a, n1b * d2 + n2b)] = Complex64::new(u[(a, b)], 0.0);
                }
            }
        }
    }
    FockOperator::new(vec![d1, d2], out)
}

/// `exp[θ(â_S†â_E - â_S â_E†)]` on `dims = [d_S, d_E]`. Conjugating `â_S`
/// gives `â_S cos θ + â_E sin θ`.
pub fn beamsplitter_unitary(theta: f64, dims: [usize; 2]) -> Result<FockOperator> {
    check_finite("theta", theta)?;
    let [ds, de] = dims;
    if ds == 0 || de == 0 {
        return Err(invalid("dims", "dimensions must be positive"));
    }
    let mut out = DMatrix::<Complex64>::zeros(ds * de, ds * de);
    // Invariant subspaces: fixed total photon number, spanned by |s, N - s⟩.
    for total in 0..(ds + de - 1) {
        let size = total + 1;
        let mut k = DMatrix::<f64>::zeros(size, size);
        for s in 0..total {
            let c = theta * (((s + 1) * (total - s)) as f64).sqrt();
            k[(s + 1, s)] = c;
            k[(s, s + 1)] = -c;
        }
        let u = k.exp();
        for s_out in 0..size {
            let e_out = total - s_out;
            if s_out >= ds || e_out >= de {
                continue;
            }
            for s_in in 0..size {
                let e_in = total - s_in;
                if s_in >= ds || e_in >= de {
                    continue;
                }
                out[(s_out * de + e_out, s_in * de + e_in)] = Complex64::new(u[(s_out, s_in)], 0.0);
            }
        }
    }
    FockOperator::new(vec![ds, de], out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{annihilation, embed, FockKet};

    #[test]
    fn zero_squeeze_is_identity() {
        let u = squeeze_unitary_single(0.0, 6).unwrap();
        assert_eq!(u, FockOperator::identity(vec![6]).unwrap());
        let u = squeeze_unitary_two(0.0, [5, 4]).unwrap();
        assert_eq!(u, FockOperator::identity(vec![5, 4]).unwrap());
    }

    #[test]
    fn squeezed_vacuum_photon_number() {
        let r: f64 = 0.3;
        let u = squeeze_unitary_single(r, 25).unwrap();
        let ket = u.apply(&FockKet::basis(vec![25], &[0]).unwrap()).unwrap();
        let n: f64 = ket
            .amplitudes()
            .iter()
            .enumerate()
            .map(|(k, z)| k as f64 * z.norm_sqr())
            .sum();
        assert!((n - r.sinh().powi(2)).abs() < 1e-6);
        // cropping leaks weight from levels near the cutoff
        let u = squeeze_unitary_single(r, 40).unwrap();
        assert!(u.unitarity_error(30) < 1e-8);
    }

    #[test]
    fn two_mode_squeeze_of_vacuum_is_tmsv() {
        let r: f64 = 0.3;
        let u = squeeze_unitary_two(r, [20, 20]).unwrap();
        let ket = u.apply(&FockKet::basis(vec![20, 20], &[0, 0]).unwrap()).unwrap();
        let expect = crate::oracle::tmsv_ket(r.sinh().powi(2), 20).unwrap();
        let diff = (ket.amplitudes() - expect.amplitudes()).camax();
        assert!(diff < 1e-6, "{diff}");
        let u = squeeze_unitary_two(r, [24, 24]).unwrap();
        assert!(u.unitarity_error(18) < 1e-8);
        let u = squeeze_unitary_two(0.2, [12, 16]).unwrap();
        assert!(u.unitarity_error(10) < 1e-8);
    }

    #[test]
    fn beamsplitter_heisenberg_action() {
        let theta: f64 = 0.4;
        let dims = [6, 6];
        let u = beamsplitter_unitary(theta, dims).unwrap();
        // total photon number below both cutoffs
        assert!(u.unitarity_error(3) < 1e-12);
        let a_s = embed(&annihilation(6), 0, &dims);
        let a_e = embed(&annihilation(6), 1, &dims);
        let lhs = u.entries().adjoint() * &a_s * u.entries();
        let rhs = &a_s * Complex64::new(theta.cos(), 0.0) + &a_e * Complex64::new(theta.sin(), 0.0);
        // compare on low-lying states only
        let ket = FockKet::basis(dims.to_vec(), &[1, 2]).unwrap();
        let d = (lhs * ket.amplitudes() - rhs * ket.amplitudes()).camax();
        assert!(d < 1e-12);
    }
}
