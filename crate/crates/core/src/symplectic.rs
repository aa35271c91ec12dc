//! Covariance-matrix and symplectic-group algebra for `n`-mode Gaussian states.

use nalgebra::{DMatrix, DVector, SymmetricEigen};

use crate::error::{invalid, Error, Result};

/// Tolerance on `ν ≥ 1` used to accept pure states under roundoff.
pub const PHYSICALITY_TOLERANCE: f64 = 1e-6;

const SYMMETRY_TOLERANCE: f64 = 1e-12;
const SYMPLECTIC_TOLERANCE: f64 = 1e-10;
const DETERMINANT_TOLERANCE: f64 = 1e-9;

/// Relative gap below which two symplectic eigenvalues are treated as
/// degenerate by [`williamson`].
const DEGENERACY_GAP: f64 = 1e-7;

/// Quadrature covariance matrix of an `n`-mode Gaussian state, ordered
/// `(x1, p1, ..., xn, pn)`, vacuum = identity.
#[derive(Debug, Clone, PartialEq)]
pub struct CovarianceMatrix {
    n_modes: usize,
    entries: DMatrix<f64>,
}

impl CovarianceMatrix {
    /// Validates symmetry, positive definiteness and the uncertainty
    /// principle (`ν ≥ 1 - 1e-6`).
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let n_modes = modes_of(&entries)?;
        let scale = entries.amax().max(1.0);
        let asym = (&entries - entries.transpose()).amax();
        if asym > SYMMETRY_TOLERANCE * scale {
            return Err(Error::NotSymmetric(asym));
        }
        let entries = symmetrize(entries);
        if entries.clone().cholesky().is_none() {
            return Err(Error::NotPositiveDefinite);
        }
        let nu = symplectic_spectrum(&entries)?;
        if nu[0] < 1.0 - PHYSICALITY_TOLERANCE {
            return Err(Error::Unphysical(nu[0]));
        }
        Ok(CovarianceMatrix { n_modes, entries })
    }

    /// For matrices that are physical by construction (products of valid
    /// inputs); only symmetrizes.
    pub(crate) fn from_trusted(entries: DMatrix<f64>) -> Self {
        let n_modes = entries.nrows() / 2;
        CovarianceMatrix {
            n_modes,
            entries: symmetrize(entries),
        }
    }

    pub fn identity(n_modes: usize) -> Result<Self> {
        if n_modes == 0 {
            return Err(invalid("n_modes", "must be at least 1"));
        }
        Ok(CovarianceMatrix {
            n_modes,
            entries: DMatrix::identity(2 * n_modes, 2 * n_modes),
        })
    }

    /// Product of thermal modes with the given mean photon numbers.
    pub fn thermal(photons: &[f64]) -> Result<Self> {
        if photons.is_empty() {
            return Err(invalid("photons", "need at least one mode"));
        }
        let mut diag = Vec::with_capacity(2 * photons.len());
        for &n in photons {
            if !(n >= 0.0 && n.is_finite()) {
                return Err(invalid("photons", format!("{n} is not a valid photon number")));
            }
            diag.extend([2.0 * n + 1.0, 2.0 * n + 1.0]);
        }
        Ok(Self::from_trusted(DMatrix::from_diagonal(&DVector::from_vec(diag))))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    pub fn into_inner(self) -> DMatrix<f64> {
        self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[(row, col)]
    }

    /// Mean photon number of each mode, `(V_xx + V_pp - 2)/4`.
    pub fn mode_photon_numbers(&self) -> Vec<f64> {
        (0..self.n_modes)
            .map(|j| (self.entries[(2 * j, 2 * j)] + self.entries[(2 * j + 1, 2 * j + 1)] - 2.0) / 4.0)
            .collect()
    }
}

/// Real `2n×2n` matrix satisfying `S Ω Sᵀ = Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    n_modes: usize,
    entries: DMatrix<f64>,
}

impl SymplecticMatrix {
    pub fn new(entries: DMatrix<f64>) -> Result<Self> {
        let n_modes = modes_of(&entries)?;
        let residual = symplectic_residual(&entries);
        let scale = entries.norm_squared().max(1.0);
        if residual > SYMPLECTIC_TOLERANCE * scale {
            return Err(Error::Numerical(format!(
                "matrix is not symplectic (residual {residual:.3e})"
            )));
        }
        let det = entries.determinant();
        if (det - 1.0).abs() > DETERMINANT_TOLERANCE * scale {
            return Err(Error::Numerical(format!("symplectic determinant {det} != 1")));
        }
        Ok(SymplecticMatrix { n_modes, entries })
    }

    pub(crate) fn from_trusted(entries: DMatrix<f64>) -> Self {
        SymplecticMatrix {
            n_modes: entries.nrows() / 2,
            entries,
        }
    }

    pub fn identity(n_modes: usize) -> Self {
        Self::from_trusted(DMatrix::identity(2 * n_modes, 2 * n_modes))
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn entries(&self) -> &DMatrix<f64> {
        &self.entries
    }

    /// Largest elementwise deviation of `S Ω Sᵀ` from `Ω`.
    pub fn residual(&self) -> f64 {
        symplectic_residual(&self.entries)
    }
}

/// A Gaussian state: quadrature means plus covariance.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: CovarianceMatrix,
}

impl GaussianState {
    pub fn new(mean: DVector<f64>, cov: CovarianceMatrix) -> Result<Self> {
        if mean.len() != 2 * cov.n_modes() {
            return Err(Error::DimensionMismatch {
                expected: 2 * cov.n_modes(),
                found: mean.len(),
            });
        }
        Ok(GaussianState { mean, cov })
    }

    pub fn zero_mean(cov: CovarianceMatrix) -> Self {
        let mean = DVector::zeros(2 * cov.n_modes());
        GaussianState { mean, cov }
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn cov(&self) -> &CovarianceMatrix {
        &self.cov
    }
}

/// `V = S · diag(ν1, ν1, ..., νn, νn) · Sᵀ`.
#[derive(Debug, Clone, PartialEq)]
pub struct WilliamsonDecomposition {
    pub transform: SymplecticMatrix,
    pub sympl_eigenvalues: Vec<f64>,
    /// Set when the spectrum was (nearly) degenerate and the transform is
    /// only symplectic to reduced accuracy.
    pub reduced_accuracy: bool,
}

impl WilliamsonDecomposition {
    /// `S · D · Sᵀ`.
    pub fn reassemble(&self) -> DMatrix<f64> {
        let s = self.transform.entries();
        s * diag_from_modes(&self.sympl_eigenvalues) * s.transpose()
    }

    /// Relative Frobenius distance between the reassembled matrix and `v`.
    pub fn relative_residual(&self, v: &CovarianceMatrix) -> f64 {
        (self.reassemble() - v.entries()).norm() / v.entries().norm()
    }
}

/// Block-diagonal `⊕ [[0, 1], [-1, 0]]`.
pub fn symplectic_form(n_modes: usize) -> Result<DMatrix<f64>> {
    if n_modes == 0 {
        return Err(invalid("n_modes", "must be at least 1"));
    }
    Ok(omega(n_modes))
}

fn omega(n_modes: usize) -> DMatrix<f64> {
    let mut m = DMatrix::zeros(2 * n_modes, 2 * n_modes);
    for j in 0..n_modes {
        m[(2 * j, 2 * j + 1)] = 1.0;
        m[(2 * j + 1, 2 * j)] = -1.0;
    }
    m
}

/// Covariance of the two-mode squeezed vacuum with `N_S` photons per mode:
/// diagonal `A = 2N_S + 1`, correlations `+C` (x) and `-C` (p) with
/// `C = 2√(N_S(1 + N_S))`.
pub fn tmsv_covariance(n_s: f64) -> Result<CovarianceMatrix> {
    check_photons("n_s", n_s)?;
    let a = 2.0 * n_s + 1.0;
    let c = 2.0 * (n_s * (1.0 + n_s)).sqrt();
    Ok(CovarianceMatrix::from_trusted(correlated_pair(a, a, c)))
}

/// `[[a, 0, c, 0], [0, a, 0, -c], [c, 0, b, 0], [0, -c, 0, b]]`, the
/// pattern shared by every two-mode covariance in this crate.
pub(crate) fn correlated_pair(a: f64, b: f64, c: f64) -> DMatrix<f64> {
    DMatrix::from_row_slice(
        4,
        4,
        &[
            a, 0.0, c, 0.0, //
            0.0, a, 0.0, -c, //
            c, 0.0, b, 0.0, //
            0.0, -c, 0.0, b,
        ],
    )
}

/// Local squeezing of both modes with zero phase:
/// `diag(e^r1, e^-r1, e^r2, e^-r2)`.
pub fn single_mode_squeeze_symplectic(r1: f64, r2: f64) -> Result<SymplecticMatrix> {
    check_finite("r1", r1)?;
    check_finite("r2", r2)?;
    let d = DVector::from_vec(vec![r1.exp(), (-r1).exp(), r2.exp(), (-r2).exp()]);
    Ok(SymplecticMatrix::from_trusted(DMatrix::from_diagonal(&d)))
}

/// Two-mode squeezing with zero phase:
/// `[[I cosh r, σz sinh r], [σz sinh r, I cosh r]]`.
pub fn two_mode_squeeze_symplectic(r: f64) -> Result<SymplecticMatrix> {
    check_finite("r", r)?;
    let (c, s) = (r.cosh(), r.sinh());
    let m = DMatrix::from_row_slice(
        4,
        4,
        &[
            c, 0.0, s, 0.0, //
            0.0, c, 0.0, -s, //
            s, 0.0, c, 0.0, //
            0.0, -s, 0.0, c,
        ],
    );
    Ok(SymplecticMatrix::from_trusted(m))
}

/// `S V Sᵀ`.
pub fn apply_symplectic(s: &SymplecticMatrix, v: &CovarianceMatrix) -> Result<CovarianceMatrix> {
    if s.n_modes() != v.n_modes() {
        return Err(Error::DimensionMismatch {
            expected: v.n_modes(),
            found: s.n_modes(),
        });
    }
    let out = s.entries() * v.entries() * s.entries().transpose();
    Ok(CovarianceMatrix::from_trusted(out))
}

/// The `n` symplectic eigenvalues of a physical covariance, ascending.
pub fn symplectic_eigenvalues(v: &CovarianceMatrix) -> Result<Vec<f64>> {
    let nu = symplectic_spectrum(v.entries())?;
    if nu[0] < 1.0 - PHYSICALITY_TOLERANCE {
        return Err(Error::Unphysical(nu[0]));
    }
    Ok(nu)
}

/// Moduli of the eigenvalues of `iΩM`, paired and sorted ascending. No
/// physicality requirement, so this also serves partially transposed
/// matrices.
pub fn symplectic_spectrum(m: &DMatrix<f64>) -> Result<Vec<f64>> {
    let n = modes_of(m)?;
    let w = omega(n) * m;
    let eig = w.complex_eigenvalues();
    let mut moduli: Vec<f64> = eig.iter().map(|z| z.norm()).collect();
    if moduli.iter().any(|x| !x.is_finite()) {
        return Err(Error::Numerical("eigenvalue extraction failed".into()));
    }
    moduli.sort_by(f64::total_cmp);
    Ok(moduli.chunks(2).map(|p| 0.5 * (p[0] + p[1])).collect())
}

/// Generic Williamson decomposition.
///
/// With `R = V^{1/2}`, the antisymmetric `K = R Ω R` is brought to the
/// canonical form `Oᵀ K O = ⊕ ν_k [[0, 1], [-1, 0]]` by pairing each
/// eigenvector `u` of `KᵀK` with `-K u / ν`; then `S = R O D^{-1/2}`.
///
/// Only `S D Sᵀ = V` is contractual. To make the output reproducible each
/// column pair is rotated so that its block on the dominant mode is
/// symmetric with positive trace, and pairs are ordered by dominant mode
/// when that assignment is a permutation (ascending `ν` otherwise).
pub fn williamson(v: &CovarianceMatrix) -> Result<WilliamsonDecomposition> {
    let n = v.n_modes();
    let dim = 2 * n;
    let sym = SymmetricEigen::new(v.entries().clone());
    if sym.eigenvalues.iter().any(|&l| l <= 0.0) {
        return Err(Error::NotPositiveDefinite);
    }
    let sqrt_diag = DMatrix::from_diagonal(&sym.eigenvalues.map(f64::sqrt));
    let root = &sym.eigenvectors * sqrt_diag * sym.eigenvectors.transpose();
    let k = &root * omega(n) * &root;
    let gram = k.transpose() * &k;
    let geig = SymmetricEigen::new(gram);
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| geig.eigenvalues[a].total_cmp(&geig.eigenvalues[b]));

    let mut used: Vec<DVector<f64>> = Vec::with_capacity(dim);
    let mut pairs: Vec<(DVector<f64>, DVector<f64>, f64)> = Vec::with_capacity(n);
    for &idx in &order {
        if pairs.len() == n {
            break;
        }
        let mut u: DVector<f64> = geig.eigenvectors.column(idx).into_owned();
        for _ in 0..2 {
            for b in &used {
                let proj = b.dot(&u);
                u -= b * proj;
            }
        }
        let norm = u.norm();
        if norm < 0.5 {
            // already spanned by an earlier pair
            continue;
        }
        u /= norm;
        let ku = &k * &u;
        let nu = ku.norm();
        let mut z = -ku / nu;
        for b in &used {
            let proj = b.dot(&z);
            z -= b * proj;
        }
        z -= &u * u.dot(&z);
        z /= z.norm();
        let nu = u.dot(&(&k * &z));
        used.push(u.clone());
        used.push(z.clone());
        pairs.push((u, z, nu));
    }
    if pairs.len() != n {
        return Err(Error::Numerical("could not pair the spectrum of V^1/2 Ω V^1/2".into()));
    }

    let mut cols: Vec<(DVector<f64>, DVector<f64>, f64)> = pairs
        .into_iter()
        .map(|(u, z, nu)| {
            let scale = 1.0 / nu.sqrt();
            (&root * u * scale, &root * z * scale, nu)
        })
        .collect();

    // Dominant mode of each pair.
    let dominant: Vec<usize> = cols
        .iter()
        .map(|(w, z, _)| {
            (0..n)
                .max_by(|&a, &b| block_weight(w, z, a).total_cmp(&block_weight(w, z, b)))
                .unwrap_or(0)
        })
        .collect();
    let mut seen = vec![false; n];
    let is_permutation = dominant.iter().all(|&j| !std::mem::replace(&mut seen[j], true));
    if is_permutation {
        let mut indexed: Vec<_> = dominant.iter().copied().zip(cols).collect();
        indexed.sort_by_key(|(j, _)| *j);
        cols = indexed.into_iter().map(|(_, c)| c).collect();
    }

    let mut s = DMatrix::zeros(dim, dim);
    let mut nus = Vec::with_capacity(n);
    for (kpair, (w, z, nu)) in cols.into_iter().enumerate() {
        let j = (0..n)
            .max_by(|&a, &b| block_weight(&w, &z, a).total_cmp(&block_weight(&w, &z, b)))
            .unwrap_or(0);
        let (a, b, c, d) = (w[2 * j], z[2 * j], w[2 * j + 1], z[2 * j + 1]);
        let phi = (b - c).atan2(a + d);
        let (sin, cos) = phi.sin_cos();
        let w2 = &w * cos + &z * sin;
        let z2 = &z * cos - &w * sin;
        s.set_column(2 * kpair, &w2);
        s.set_column(2 * kpair + 1, &z2);
        nus.push(nu);
    }

    let mut sorted = nus.clone();
    sorted.sort_by(f64::total_cmp);
    let near_degenerate = sorted
        .windows(2)
        .any(|p| (p[1] - p[0]) <= DEGENERACY_GAP * p[1]);
    let residual = symplectic_residual(&s);
    let reduced_accuracy =
        residual > SYMPLECTIC_TOLERANCE * s.norm_squared().max(1.0) || (near_degenerate && residual > 1e-12);
    Ok(WilliamsonDecomposition {
        transform: SymplecticMatrix::from_trusted(s),
        sympl_eigenvalues: nus,
        reduced_accuracy,
    })
}

fn block_weight(w: &DVector<f64>, z: &DVector<f64>, mode: usize) -> f64 {
    w[2 * mode].powi(2) + w[2 * mode + 1].powi(2) + z[2 * mode].powi(2) + z[2 * mode + 1].powi(2)
}

/// Flips the sign of the momentum quadrature of `mode` (0-based). The result
/// is generally not a physical covariance matrix.
pub fn partial_transpose(v: &DMatrix<f64>, mode: usize) -> Result<DMatrix<f64>> {
    let n = modes_of(v)?;
    if mode >= n {
        return Err(invalid("mode", format!("index {mode} out of range for {n} modes")));
    }
    let mut out = v.clone();
    let p = 2 * mode + 1;
    for i in 0..2 * n {
        if i != p {
            out[(i, p)] = -out[(i, p)];
            out[(p, i)] = -out[(p, i)];
        }
    }
    Ok(out)
}

/// `max(0, -log2 ν̃_min)` with `ν̃_min` the smallest symplectic eigenvalue of
/// the partial transpose.
pub fn log_negativity(v: &CovarianceMatrix) -> Result<f64> {
    if v.n_modes() != 2 {
        return Err(invalid("v", "log-negativity is defined here for two modes"));
    }
    let pt = partial_transpose(v.entries(), 1)?;
    let nu = symplectic_spectrum(&pt)?;
    Ok((-nu[0].log2()).max(0.0))
}

pub(crate) fn diag_from_modes(nu: &[f64]) -> DMatrix<f64> {
    let d: Vec<f64> = nu.iter().flat_map(|&x| [x, x]).collect();
    DMatrix::from_diagonal(&DVector::from_vec(d))
}

fn symplectic_residual(s: &DMatrix<f64>) -> f64 {
    let om = omega(s.nrows() / 2);
    (s * &om * s.transpose() - om).amax()
}

fn symmetrize(m: DMatrix<f64>) -> DMatrix<f64> {
    (&m + m.transpose()) * 0.5
}

fn modes_of(m: &DMatrix<f64>) -> Result<usize> {
    if m.nrows() != m.ncols() {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            found: m.ncols(),
        });
    }
    if m.nrows() == 0 || m.nrows() % 2 != 0 {
        return Err(invalid("matrix", format!("dimension {} is not 2n", m.nrows())));
    }
    if m.iter().any(|x| !x.is_finite()) {
        return Err(invalid("matrix", "non-finite entry"));
    }
    Ok(m.nrows() / 2)
}

pub(crate) fn check_finite(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() {
        Ok(())
    } else {
        Err(invalid(name, format!("{x} is not finite")))
    }
}

pub(crate) fn check_photons(name: &'static str, x: f64) -> Result<()> {
    if x.is_finite() && x >= 0.0 {
        Ok(())
    } else {
        Err(invalid(name, format!("{x} must be finite and non-negative")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn form_blocks() {
        let o1 = symplectic_form(1).unwrap();
        assert_eq!(o1, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
        let o2 = symplectic_form(2).unwrap();
        assert_eq!(o2[(2, 3)], 1.0);
        assert_eq!(o2[(3, 2)], -1.0);
        assert_eq!(o2[(0, 2)], 0.0);
        let o3 = symplectic_form(3).unwrap();
        assert_eq!(&o3 * o3.transpose(), DMatrix::identity(6, 6));
        assert_eq!(&o3 * &o3, -DMatrix::identity(6, 6));
        assert!(symplectic_form(0).is_err());
    }

    #[test]
    fn tmsv_entries() {
        assert_eq!(tmsv_covariance(0.0).unwrap().into_inner(), DMatrix::identity(4, 4));
        let v = tmsv_covariance(1.0).unwrap();
        assert_eq!(v.get(0, 0), 3.0);
        assert_relative_eq!(v.get(0, 2), 2.0 * 2f64.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(v.get(1, 3), -2.0 * 2f64.sqrt(), epsilon = 1e-15);
        assert_eq!(v.get(0, 1), 0.0);
        let nu = symplectic_eigenvalues(&tmsv_covariance(0.01).unwrap()).unwrap();
        for x in nu {
            assert!((x - 1.0).abs() < 1e-10);
        }
        assert!(tmsv_covariance(-0.1).is_err());
        assert!(tmsv_covariance(f64::NAN).is_err());
    }

    #[test]
    fn tmsv_purity_identity() {
        for i in 0..=100 {
            let n_s = i as f64 * 0.1;
            let a = 2.0 * n_s + 1.0;
            let c = 2.0 * (n_s * (1.0 + n_s)).sqrt();
            assert!((a * a - c * c - 1.0).abs() < 1e-12 * a * a);
        }
    }

    #[test]
    fn single_mode_squeeze() {
        let s = single_mode_squeeze_symplectic(0.0, 0.0).unwrap();
        assert_eq!(s.entries(), &DMatrix::identity(4, 4));
        let s = single_mode_squeeze_symplectic(2f64.ln(), 0.0).unwrap();
        let expect = [2.0, 0.5, 1.0, 1.0];
        for (i, e) in expect.iter().enumerate() {
            assert_relative_eq!(s.entries()[(i, i)], *e, epsilon = 1e-15);
        }
        // γ± = √(n+1) ± √n with n = sinh² r
        let r = 0.7f64;
        let n = r.sinh().powi(2);
        let (gp, gm) = ((n + 1.0).sqrt() + n.sqrt(), (n + 1.0).sqrt() - n.sqrt());
        let s = single_mode_squeeze_symplectic(r, 0.0).unwrap();
        assert_relative_eq!(s.entries()[(0, 0)], gp, epsilon = 1e-14);
        assert_relative_eq!(s.entries()[(1, 1)], gm, epsilon = 1e-14);
        assert_relative_eq!(gp * gm, 1.0, epsilon = 1e-14);
    }

    #[test]
    fn two_mode_squeeze_of_vacuum_is_tmsv() {
        assert_eq!(two_mode_squeeze_symplectic(0.0).unwrap().entries(), &DMatrix::identity(4, 4));
        let s = two_mode_squeeze_symplectic(0.5).unwrap();
        assert!(s.residual() < 1e-14);
        let r = 0.37f64;
        let out = apply_symplectic(
            &two_mode_squeeze_symplectic(r).unwrap(),
            &CovarianceMatrix::identity(2).unwrap(),
        )
        .unwrap();
        let expect = tmsv_covariance(r.sinh().powi(2)).unwrap();
        assert!((out.entries() - expect.entries()).amax() < 1e-14);
    }

    #[test]
    fn apply_identity_and_mismatch() {
        let v = tmsv_covariance(0.4).unwrap();
        let out = apply_symplectic(&SymplecticMatrix::identity(2), &v).unwrap();
        assert_eq!(out, v);
        assert!(apply_symplectic(&SymplecticMatrix::identity(1), &v).is_err());
    }

    #[test]
    fn tss_covariance_pattern() {
        let (n_s, r1, r2) = (0.3f64, 0.4f64, -0.2f64);
        let a = 2.0 * n_s + 1.0;
        let c = 2.0 * (n_s * (1.0 + n_s)).sqrt();
        let ms = single_mode_squeeze_symplectic(r1, r2).unwrap();
        let v = apply_symplectic(&ms, &tmsv_covariance(n_s).unwrap()).unwrap();
        let (g1p, g1m, g2p, g2m) = (r1.exp(), (-r1).exp(), r2.exp(), (-r2).exp());
        assert_relative_eq!(v.get(0, 0), a * g1p * g1p, epsilon = 1e-14);
        assert_relative_eq!(v.get(1, 1), a * g1m * g1m, epsilon = 1e-14);
        assert_relative_eq!(v.get(0, 2), c * g1p * g2p, epsilon = 1e-14);
        assert_relative_eq!(v.get(1, 3), -c * g1m * g2m, epsilon = 1e-14);
        assert_relative_eq!(v.get(3, 3), a * g2m * g2m, epsilon = 1e-14);
    }

    #[test]
    fn williamson_of_thermal_product_is_identity() {
        let v = CovarianceMatrix::new(DMatrix::from_diagonal(&DVector::from_vec(vec![3.0, 3.0, 5.0, 5.0])))
            .unwrap();
        let w = williamson(&v).unwrap();
        assert_eq!(w.sympl_eigenvalues.len(), 2);
        assert_relative_eq!(w.sympl_eigenvalues[0], 3.0, epsilon = 1e-12);
        assert_relative_eq!(w.sympl_eigenvalues[1], 5.0, epsilon = 1e-12);
        assert!((w.transform.entries() - DMatrix::<f64>::identity(4, 4)).amax() < 1e-12);
    }

    #[test]
    fn williamson_of_locally_squeezed_thermal() {
        // diag(B, B, Aγ+², Aγ-²) → S = diag(1, 1, ζ^-1, ζ), ζ = √(γ-/γ+)
        let (b, a, r2) = (11.0, 1.2, 0.3f64);
        let (gp, gm) = (r2.exp(), (-r2).exp());
        let v = CovarianceMatrix::new(DMatrix::from_diagonal(&DVector::from_vec(vec![
            b,
            b,
            a * gp * gp,
            a * gm * gm,
        ])))
        .unwrap();
        let w = williamson(&v).unwrap();
        let zeta = (gm / gp).sqrt();
        assert_relative_eq!(w.sympl_eigenvalues[0], b, epsilon = 1e-12);
        assert_relative_eq!(w.sympl_eigenvalues[1], a, epsilon = 1e-12);
        let expect = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 1.0 / zeta, zeta]));
        assert!((w.transform.entries() - expect).amax() < 1e-12);
    }

    #[test]
    fn williamson_handles_pure_and_degenerate_states() {
        let v = tmsv_covariance(0.8).unwrap();
        let w = williamson(&v).unwrap();
        assert!(w.relative_residual(&v) < 1e-12);
        assert!(w.transform.residual() < 1e-10);
        for nu in &w.sympl_eigenvalues {
            assert_relative_eq!(*nu, 1.0, epsilon = 1e-9);
        }
        let id = CovarianceMatrix::identity(2).unwrap();
        let w = williamson(&id).unwrap();
        assert!((w.transform.entries() - DMatrix::<f64>::identity(4, 4)).amax() < 1e-12);
    }

    #[test]
    fn partial_transpose_basics() {
        let id = DMatrix::<f64>::identity(4, 4);
        assert_eq!(partial_transpose(&id, 1).unwrap(), id);
        let v = tmsv_covariance(0.6).unwrap();
        let twice = partial_transpose(&partial_transpose(v.entries(), 1).unwrap(), 1).unwrap();
        assert_eq!(&twice, v.entries());
        assert!(partial_transpose(&id, 2).is_err());
        // TMSV(1): smallest PT eigenvalue (√2 - 1)²
        let pt = partial_transpose(tmsv_covariance(1.0).unwrap().entries(), 1).unwrap();
        let nu = symplectic_spectrum(&pt).unwrap();
        assert_relative_eq!(nu[0], (2f64.sqrt() - 1.0).powi(2), epsilon = 1e-12);
        assert_relative_eq!(nu[0], 0.171_572_875_253_809_9, epsilon = 1e-12);
    }

    #[test]
    fn log_negativity_of_tmsv() {
        let e = log_negativity(&tmsv_covariance(1.0).unwrap()).unwrap();
        assert_relative_eq!(e, -2.0 * (2f64.sqrt() - 1.0).log2(), epsilon = 1e-10);
        assert_relative_eq!(e, 2.543_106_606_327_5, epsilon = 1e-9);
        for n_s in [0.01, 0.1, 1.0, 5.0] {
            let e = log_negativity(&tmsv_covariance(n_s).unwrap()).unwrap();
            let expect = -2.0 * ((1.0f64 + n_s).sqrt() - n_s.sqrt()).log2();
            assert!((e - expect).abs() < 1e-9, "n_s = {n_s}: {e} vs {expect}");
        }
        assert_eq!(log_negativity(&CovarianceMatrix::identity(2).unwrap()).unwrap(), 0.0);
    }

    #[test]
    fn rejects_unphysical_and_asymmetric() {
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![0.5, 0.5, 1.0, 1.0]));
        assert!(matches!(CovarianceMatrix::new(m), Err(Error::Unphysical(_))));
        let mut m = DMatrix::<f64>::identity(2, 2);
        m[(0, 1)] = 0.1;
        assert!(matches!(CovarianceMatrix::new(m), Err(Error::NotSymmetric(_))));
        let m = DMatrix::from_diagonal(&DVector::from_vec(vec![-1.0, -1.0]));
        assert!(CovarianceMatrix::new(m).is_err());
    }
}
