//! Oracle states and the lossy thermal channel.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use super::{beamsplitter_unitary, FockKet, FockOperator};
use crate::error::{invalid, Result};
use crate::symplectic::check_photons;

fn check_dim(dim: usize) -> Result<()> {
    if dim < 2 {
        return Err(invalid("dim", "truncation dimension must be at least 2"));
    }
    Ok(())
}

/// `Σ_n √(N_S^n / (1+N_S)^{n+1}) |n, n⟩` for `n < dim`, not renormalized.
pub fn tmsv_ket(n_s: f64, dim: usize) -> Result<FockKet> {
    check_photons("n_s", n_s)?;
    check_dim(dim)?;
    let mut amps = DVector::zeros(dim * dim);
    for (n, p) in thermal_weights(n_s, dim).into_iter().enumerate() {
        amps[n * dim + n] = Complex64::new(p.sqrt(), 0.0);
    }
    FockKet::new(vec![dim, dim], amps)
}

/// `p_n = N^n / (1+N)^{n+1}` for `n < dim`.
fn thermal_weights(n: f64, dim: usize) -> Vec<f64> {
    if n == 0.0 {
        let mut p = vec![0.0; dim];
        p[0] = 1.0;
        return p;
    }
    let ratio = n / (1.0 + n);
    let mut p = Vec::with_capacity(dim);
    let mut w = 1.0 / (1.0 + n);
    for _ in 0..dim {
        p.push(w);
        w *= ratio;
    }
    p
}

/// Thermal state of mean photon number `n`, truncated and not renormalized.
pub fn thermal_state(n: f64, dim: usize) -> Result<FockOperator> {
    check_photons("n", n)?;
    check_dim(dim)?;
    let d: Vec<Complex64> = thermal_weights(n, dim)
        .into_iter()
        .map(|p| Complex64::new(p, 0.0))
        .collect();
    FockOperator::new(vec![dim], DMatrix::from_diagonal(&DVector::from_vec(d)))
}

/// Mixes mode 0 of `rho` with a thermal environment of mean `N_B/(1-κ)` on a
/// beamsplitter with `cos θ = √κ`, then traces the environment out. The
/// remaining modes are untouched.
pub fn lossy_thermal_channel(rho: &FockOperator, kappa: f64, n_b: f64, env_dim: usize) -> Result<FockOperator> {
    if !(0.0..1.0).contains(&kappa) {
        return Err(invalid("kappa", format!("{kappa} is outside [0, 1)")));
    }
    check_photons("n_b", n_b)?;
    check_dim(env_dim)?;
    let ds = rho.mode_dims()[0];
    let rest: usize = rho.mode_dims()[1..].iter().product();
    let de = env_dim;
    let u = beamsplitter_unitary(kappa.sqrt().acos(), [ds, de])?;
    let u = u.entries();
    let env = thermal_weights(n_b / (1.0 - kappa), de);

    // Φ[(s, s'), (t, t')] = Σ_{j,k} p_k A_jk[s, t] conj(A_jk[s', t']),
    // A_jk[s, t] = ⟨s, j| U |t, k⟩.
    let mut phi = DMatrix::<Complex64>::zeros(ds * ds, ds * ds);
    for (k, &pk) in env.iter().enumerate() {
        if pk == 0.0 {
            continue;
        }
        for j in 0..de {
            let a = DMatrix::from_fn(ds, ds, |s, t| u[(s * de + j, t * de + k)]);
            if a.iter().all(|z| *z == Complex64::new(0.0, 0.0)) {
                continue;
            }
            phi += a.kronecker(&a.conjugate()) * Complex64::new(pk, 0.0);
        }
    }

    let input = rho.entries();
    let mut out = DMatrix::<Complex64>::zeros(ds * rest, ds * rest);
    for s in 0..ds {
        for sp in 0..ds {
            for t in 0..ds {
                for tp in 0..ds {
                    let w = phi[(s * ds + sp, t * ds + tp)];
                    if w == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for i in 0..rest {
                        for ip in 0..rest {
                            out[(s * rest + i, sp * rest + ip)] += w * input[(t * rest + i, tp * rest + ip)];
                        }
                    }
                }
            }
        }
    }
    FockOperator::new(rho.mode_dims().to_vec(), out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tmsv_ket_amplitudes() {
        let k = tmsv_ket(0.0, 5).unwrap();
        assert_eq!(k, FockKet::basis(vec![5, 5], &[0, 0]).unwrap());
        let k = tmsv_ket(0.1, 15).unwrap();
        let deficit = 1.0 - k.norm_squared();
        assert!((deficit - (0.1f64 / 1.1).powi(15)).abs() < 1e-15);
        assert!(k.tail_mass() < 1e-12);
        // reduced state is thermal
        for n in 0..15 {
            let p = k.amplitude(&[n, n]).norm_sqr();
            let expect = 0.1f64.powi(n as i32) / 1.1f64.powi(n as i32 + 1);
            assert!((p / expect - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn thermal_moments() {
        let v = thermal_state(0.0, 4).unwrap();
        assert_eq!(v.entries()[(0, 0)].re, 1.0);
        assert_eq!(v.trace().re, 1.0);
        let n = 0.5;
        let rho = thermal_state(n, 40).unwrap();
        let mean: f64 = (0..40).map(|k| k as f64 * rho.entries()[(k, k)].re).sum();
        assert!((mean - n).abs() < 1e-6);
        let deficit = 1.0 - rho.trace().re;
        assert!((deficit - (n / (1.0 + n)).powi(40)).abs() < 1e-15);
    }

    #[test]
    fn channel_limits() {
        let ket = tmsv_ket(0.1, 6).unwrap();
        let rho = ket.density();
        // κ = 0 replaces the signal with the thermal environment
        let out = lossy_thermal_channel(&rho, 0.0, 0.3, 20).unwrap();
        let th = thermal_state(0.3, 6).unwrap();
        let idler: Vec<f64> = (0..6).map(|n| ket.amplitude(&[n, n]).norm_sqr()).collect();
        for s in 0..6 {
            for i in 0..6 {
                let expect = th.entries()[(s, s)].re * idler[i];
                assert!((out.entries()[(s * 6 + i, s * 6 + i)].re - expect).abs() < 1e-12);
            }
        }
        // near-unit transmission with a vacuum environment leaves the state unchanged
        let out = lossy_thermal_channel(&rho, 1.0 - 1e-14, 0.0, 8).unwrap();
        assert!((out.entries() - rho.entries()).camax() < 1e-6);
        assert!(lossy_thermal_channel(&rho, 1.0, 0.0, 8).is_err());
    }
}
