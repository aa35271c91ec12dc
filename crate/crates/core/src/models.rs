//! Hypothesis pairs `(V0, V1)` for the three probe scenarios.
//!
//! The return mode mixes with a thermal bath of mean `N_B/(1-κ)`, so both
//! hypotheses show `N_B` background photons; the idler is noiseless. Mode 1 is
//! the signal/return mode, mode 2 the idler.

use std::fmt;

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::precision::Wide;
use crate::symplectic::{
    apply_symplectic, check_finite, check_photons, correlated_pair, diag_from_modes,
    single_mode_squeeze_symplectic, tmsv_covariance, two_mode_squeeze_symplectic, williamson,
    CovarianceMatrix, GaussianState, SymplecticMatrix, WilliamsonDecomposition,
};

/// Closed-form transforms must reproduce their covariance to this accuracy
/// or the generic route is used instead.
const REASSEMBLY_TOLERANCE: f64 = 1e-8;
/// Below this magnitude of `Δ1`, `Δ2` the TSS transform is not evaluated.
const DELTA_FLOOR: f64 = 1e-12;

/// Probe preparation applied to the two-mode squeezed vacuum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Scenario {
    Tmsv,
    /// Local squeezers on signal (`r1`) and idler (`r2`).
    Tss { r1: f64, r2: f64 },
    /// Global two-mode squeezer.
    Tms { r: f64 },
}

impl Scenario {
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::Tmsv => "tmsv",
            Scenario::Tss { .. } => "tss",
            Scenario::Tms { .. } => "tms",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioParams {
    pub scenario: Scenario,
    pub n_s: f64,
    pub n_b: f64,
    pub kappa: f64,
    pub m: u64,
}

impl ScenarioParams {
    pub fn new(scenario: Scenario, n_s: f64, n_b: f64, kappa: f64, m: u64) -> Result<Self> {
        let p = ScenarioParams {
            scenario,
            n_s,
            n_b,
            kappa,
            m,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn tmsv(n_s: f64, n_b: f64, kappa: f64, m: u64) -> Result<Self> {
        Self::new(Scenario::Tmsv, n_s, n_b, kappa, m)
    }

    pub fn tss(n_s: f64, n_b: f64, kappa: f64, r1: f64, r2: f64, m: u64) -> Result<Self> {
        Self::new(Scenario::Tss { r1, r2 }, n_s, n_b, kappa, m)
    }

    pub fn tms(n_s: f64, n_b: f64, kappa: f64, r: f64, m: u64) -> Result<Self> {
        Self::new(Scenario::Tms { r }, n_s, n_b, kappa, m)
    }

    pub fn validate(&self) -> Result<()> {
        check_photons("n_s", self.n_s)?;
        check_photons("n_b", self.n_b)?;
        if !(self.kappa >= 0.0 && self.kappa < 1.0) {
            return Err(invalid("kappa", format!("{} is outside [0, 1)", self.kappa)));
        }
        if self.m == 0 {
            return Err(invalid("m", "copy count must be at least 1"));
        }
        match self.scenario {
            Scenario::Tmsv => {}
            Scenario::Tss { r1, r2 } => {
                check_finite("r1", r1)?;
                check_finite("r2", r2)?;
            }
            Scenario::Tms { r } => check_finite("r", r)?,
        }
        Ok(())
    }

    /// Replaces one named field (`ns`, `nb`, `kappa`, `m`, `r1`, `r2`, `r`).
    pub fn with_field(&self, name: &str, value: f64) -> Result<Self> {
        let mut p = *self;
        match (name, &mut p.scenario) {
            ("ns", _) => p.n_s = value,
            ("nb", _) => p.n_b = value,
            ("kappa", _) => p.kappa = value,
            ("m", _) => {
                if !(value >= 1.0 && value.fract() == 0.0 && value <= u64::MAX as f64) {
                    return Err(invalid("m", format!("{value} is not a positive integer")));
                }
                p.m = value as u64;
            }
            ("r1", Scenario::Tss { r1, .. }) => *r1 = value,
            ("r2", Scenario::Tss { r2, .. }) => *r2 = value,
            ("r", Scenario::Tms { r }) => *r = value,
            ("r1" | "r2" | "r", s) => {
                return Err(invalid(
                    "axis",
                    format!("field '{name}' does not exist for scenario {}", s.name()),
                ))
            }
            _ => return Err(invalid("axis", format!("unknown field '{name}'"))),
        }
        p.validate()?;
        Ok(p)
    }

    /// The probe covariance before the channel.
    pub fn probe(&self) -> Result<(CovarianceMatrix, ModePhotonNumbers)> {
        match self.scenario {
            Scenario::Tmsv => {
                let v = tmsv_covariance(self.n_s)?;
                let n = ModePhotonNumbers::of(&v);
                Ok((v, n))
            }
            Scenario::Tss { r1, r2 } => tss_probe(self.n_s, r1, r2),
            Scenario::Tms { r } => tms_probe(self.n_s, r),
        }
    }
}

impl fmt::Display for ScenarioParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} N_S={} N_B={} kappa={} M={}",
            self.scenario.name(),
            self.n_s,
            self.n_b,
            self.kappa,
            self.m
        )?;
        match self.scenario {
            Scenario::Tmsv => Ok(()),
            Scenario::Tss { r1, r2 } => write!(f, " r1={r1} r2={r2}"),
            Scenario::Tms { r } => write!(f, " r={r}"),
        }
    }
}

/// Mean photon numbers of the signal and idler modes of a probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModePhotonNumbers {
    pub signal: f64,
    pub idler: f64,
}

impl ModePhotonNumbers {
    /// `N = (diag_avg - 1)/2` per mode.
    pub fn of(v: &CovarianceMatrix) -> Self {
        let n = v.mode_photon_numbers();
        ModePhotonNumbers {
            signal: n[0],
            idler: n[1],
        }
    }
}

/// Where the Williamson data of a pair came from.
#[derive(Debug, Clone, PartialEq)]
pub enum WilliamsonSource {
    ClosedForm,
    Generic,
    /// Closed form unavailable at these parameters; generic route used.
    Fallback(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypothesisPair {
    pub v0: CovarianceMatrix,
    pub v1: CovarianceMatrix,
    pub w0: WilliamsonDecomposition,
    pub w1: WilliamsonDecomposition,
    pub means: [DVector<f64>; 2],
    pub source: WilliamsonSource,
    origin: Option<ScenarioParams>,
}

impl HypothesisPair {
    /// Pair of arbitrary Gaussian states; Williamson data from the generic
    /// route.
    pub fn from_states(rho0: &GaussianState, rho1: &GaussianState) -> Result<Self> {
        if rho0.cov().n_modes() != rho1.cov().n_modes() {
            return Err(Error::DimensionMismatch {
                expected: rho0.cov().n_modes(),
                found: rho1.cov().n_modes(),
            });
        }
        Ok(HypothesisPair {
            w0: williamson(rho0.cov())?,
            w1: williamson(rho1.cov())?,
            v0: rho0.cov().clone(),
            v1: rho1.cov().clone(),
            means: [rho0.mean().clone(), rho1.mean().clone()],
            source: WilliamsonSource::Generic,
            origin: None,
        })
    }

    /// Scenario the pair was built from, if any.
    pub fn origin(&self) -> Option<&ScenarioParams> {
        self.origin.as_ref()
    }

    pub fn n_modes(&self) -> usize {
        self.v0.n_modes()
    }

    /// Same states with both decompositions recomputed by the generic route.
    pub fn with_generic_williamson(&self) -> Result<Self> {
        Ok(HypothesisPair {
            w0: williamson(&self.v0)?,
            w1: williamson(&self.v1)?,
            v0: self.v0.clone(),
            v1: self.v1.clone(),
            means: self.means.clone(),
            source: WilliamsonSource::Generic,
            origin: None,
        })
    }

    /// Exchanges the roles of the two hypotheses.
    pub fn swapped(&self) -> Self {
        HypothesisPair {
            v0: self.v1.clone(),
            v1: self.v0.clone(),
            w0: self.w1.clone(),
            w1: self.w0.clone(),
            means: [self.means[1].clone(), self.means[0].clone()],
            source: self.source.clone(),
            origin: None,
        }
    }

    pub fn states(&self) -> (GaussianState, GaussianState) {
        (
            GaussianState::new(self.means[0].clone(), self.v0.clone()).expect("consistent sizes"),
            GaussianState::new(self.means[1].clone(), self.v1.clone()).expect("consistent sizes"),
        )
    }
}

/// Builds the hypothesis pair for any scenario.
pub fn hypotheses(params: &ScenarioParams) -> Result<HypothesisPair> {
    match params.scenario {
        Scenario::Tmsv => tmsv_hypotheses(params),
        Scenario::Tss { .. } => tss_hypotheses(params),
        Scenario::Tms { .. } => tms_hypotheses(params),
    }
}

pub fn tmsv_hypotheses(params: &ScenarioParams) -> Result<HypothesisPair> {
    params.validate()?;
    if params.scenario != Scenario::Tmsv {
        return Err(invalid("kind", "expected a TMSV scenario"));
    }
    let (n_s, b, kappa) = (params.n_s, 1.0 + 2.0 * params.n_b, params.kappa);
    let a = 2.0 * n_s + 1.0;
    let c = 2.0 * (n_s * (1.0 + n_s)).sqrt();
    let v0 = CovarianceMatrix::from_trusted(correlated_pair(b, a, 0.0));
    let v1 = CovarianceMatrix::new(correlated_pair(2.0 * kappa * n_s + b, a, kappa.sqrt() * c))?;
    let w0 = diagonal_williamson(&[b, a]);
    let w1 = williamson(&v1)?;
    Ok(pair(*params, v0, v1, w0, w1, WilliamsonSource::Generic))
}

/// Covariance of the TMSV probe after local squeezing, with its mode photon
/// numbers `Ñ_S = N_S + 2n1 N_S + n1`, `Ñ_I = N_S + 2n2 N_S + n2`.
pub fn tss_probe(n_s: f64, r1: f64, r2: f64) -> Result<(CovarianceMatrix, ModePhotonNumbers)> {
    let ms = single_mode_squeeze_symplectic(r1, r2)?;
    let v = apply_symplectic(&ms, &tmsv_covariance(n_s)?)?;
    let n = ModePhotonNumbers::of(&v);
    Ok((v, n))
}

pub fn tss_hypotheses(params: &ScenarioParams) -> Result<HypothesisPair> {
    params.validate()?;
    let Scenario::Tss { r1, r2 } = params.scenario else {
        return Err(invalid("kind", "expected a TSS scenario"));
    };
    let (n_s, b, kappa) = (params.n_s, 1.0 + 2.0 * params.n_b, params.kappa);
    let a = 2.0 * n_s + 1.0;
    let c = 2.0 * (n_s * (1.0 + n_s)).sqrt();
    let (g1p, g1m, g2p, g2m) = (r1.exp(), (-r1).exp(), r2.exp(), (-r2).exp());
    let f_plus = b + kappa * (a * g1p * g1p - 1.0);
    let f_minus = b + kappa * (a * g1m * g1m - 1.0);
    let sk = kappa.sqrt();
    let v0 = CovarianceMatrix::from_trusted(DMatrix::from_diagonal(&DVector::from_vec(vec![
        b,
        b,
        a * g2p * g2p,
        a * g2m * g2m,
    ])));
    #[rustfmt::skip]
    let v1 = CovarianceMatrix::new(DMatrix::from_row_slice(4, 4, &[
        f_plus, 0.0, sk * c * g1p * g2p, 0.0,
        0.0, f_minus, 0.0, -sk * c * g1m * g2m,
        sk * c * g1p * g2p, 0.0, a * g2p * g2p, 0.0,
        0.0, -sk * c * g1m * g2m, 0.0, a * g2m * g2m,
    ]))?;
    let zeta = (g2m / g2p).sqrt();
    let w0 = WilliamsonDecomposition {
        transform: SymplecticMatrix::from_trusted(DMatrix::from_diagonal(&DVector::from_vec(vec![
            1.0,
            1.0,
            1.0 / zeta,
            zeta,
        ]))),
        sympl_eigenvalues: vec![b, a],
        reduced_accuracy: false,
    };
    let (w1, source) = match TssClosedForm::new(n_s, params.n_b, kappa, r1, r2) {
        Ok(cf) => checked_closed_form(cf.decomposition(), &v1)?,
        Err(reason) => (williamson(&v1)?, WilliamsonSource::Fallback(reason)),
    };
    Ok(pair(*params, v0, v1, w0, w1, source))
}

/// Covariance of the TMSV probe after two-mode squeezing, with
/// `N̄_S = N̄_I = (Ã - 1)/2`.
pub fn tms_probe(n_s: f64, r: f64) -> Result<(CovarianceMatrix, ModePhotonNumbers)> {
    let s2 = two_mode_squeeze_symplectic(r)?;
    let v = apply_symplectic(&s2, &tmsv_covariance(n_s)?)?;
    let n = ModePhotonNumbers::of(&v);
    Ok((v, n))
}

pub fn tms_hypotheses(params: &ScenarioParams) -> Result<HypothesisPair> {
    params.validate()?;
    let Scenario::Tms { r } = params.scenario else {
        return Err(invalid("kind", "expected a TMS scenario"));
    };
    let cf = TmsClosedForm::new(params.n_s, params.n_b, params.kappa, r);
    let (b, at, ct) = (cf.b.to_f64(), cf.a_tilde.to_f64(), cf.c_tilde.to_f64());
    let kappa = params.kappa;
    let v0 = CovarianceMatrix::from_trusted(correlated_pair(b, at, 0.0));
    let v1 = CovarianceMatrix::new(correlated_pair(cf.f_tilde.to_f64(), at, kappa.sqrt() * ct))?;
    let w0 = diagonal_williamson(&[b, at]);
    let (w1, source) = checked_closed_form(cf.decomposition(), &v1)?;
    Ok(pair(*params, v0, v1, w0, w1, source))
}

fn pair(
    params: ScenarioParams,
    v0: CovarianceMatrix,
    v1: CovarianceMatrix,
    w0: WilliamsonDecomposition,
    w1: WilliamsonDecomposition,
    source: WilliamsonSource,
) -> HypothesisPair {
    HypothesisPair {
        v0,
        v1,
        w0,
        w1,
        means: [DVector::zeros(4), DVector::zeros(4)],
        source,
        origin: Some(params),
    }
}

fn diagonal_williamson(nu: &[f64]) -> WilliamsonDecomposition {
    WilliamsonDecomposition {
        transform: SymplecticMatrix::identity(nu.len()),
        sympl_eigenvalues: nu.to_vec(),
        reduced_accuracy: false,
    }
}

fn checked_closed_form(
    w: WilliamsonDecomposition,
    v: &CovarianceMatrix,
) -> Result<(WilliamsonDecomposition, WilliamsonSource)> {
    let residual = w.relative_residual(v);
    if residual.is_finite() && residual <= REASSEMBLY_TOLERANCE {
        Ok((w, WilliamsonSource::ClosedForm))
    } else {
        Ok((
            williamson(v)?,
            WilliamsonSource::Fallback(format!("closed-form transform reassembly residual {residual:.3e}")),
        ))
    }
}

/// `A = 2N_S + 1`, `C = 2√(N_S(1 + N_S))`, `B = 1 + 2N_B` at working precision.
fn base_quantities(n_s: f64, n_b: f64) -> (Wide, Wide, Wide) {
    let one = Wide::one();
    let two = Wide::from_i64(2);
    let ns = Wide::from_f64(n_s);
    let a = &two * &ns + &one;
    let c = &two * (&ns * (&one + &ns)).sqrt();
    let b = &one + &two * Wide::from_f64(n_b);
    (a, c, b)
}

/// Williamson data of the TMS (and, at `r = 0`, TMSV) hypotheses at working
/// precision.
#[derive(Debug, Clone)]
pub(crate) struct TmsClosedForm {
    pub b: Wide,
    pub a_tilde: Wide,
    pub c_tilde: Wide,
    pub f_tilde: Wide,
    pub beta1: Wide,
    pub beta2: Wide,
    pub x_plus: Wide,
    pub x_minus: Wide,
}

impl TmsClosedForm {
    pub fn new(n_s: f64, n_b: f64, kappa: f64, r: f64) -> Self {
        let (a, c, b) = base_quantities(n_s, n_b);
        let two_r = Wide::from_f64(2.0 * r);
        let (ch, sh) = (two_r.cosh(), two_r.sinh());
        let a_tilde = &a * &ch + &c * &sh;
        let c_tilde = &a * &sh + &c * &ch;
        let k = Wide::from_f64(kappa);
        let f_tilde = &k * &a_tilde + &b - &k;
        let sum = &f_tilde + &a_tilde;
        let disc = (&sum * &sum - Wide::from_i64(4) * &k * &c_tilde * &c_tilde).sqrt();
        let half = Wide::from_f64(0.5);
        let beta1 = (&f_tilde - &a_tilde + &disc) * &half;
        let beta2 = (&a_tilde - &f_tilde + &disc) * &half;
        let two_disc = &disc * Wide::from_i64(2);
        let x_plus = ((&sum + &disc) / &two_disc).sqrt();
        let x_minus = ((&sum - &disc) / &two_disc).abs().sqrt();
        TmsClosedForm {
            b,
            a_tilde,
            c_tilde,
            f_tilde,
            beta1,
            beta2,
            x_plus,
            x_minus,
        }
    }

    pub fn decomposition(&self) -> WilliamsonDecomposition {
        let (xp, xm) = (self.x_plus.to_f64(), self.x_minus.to_f64());
        WilliamsonDecomposition {
            transform: SymplecticMatrix::from_trusted(correlated_pair(xp, xp, xm)),
            sympl_eigenvalues: vec![self.beta1.to_f64(), self.beta2.to_f64()],
            reduced_accuracy: false,
        }
    }
}

/// Williamson data of the TSS hypotheses at working precision: `α = {B, A}`,
/// `S_V0 = diag(1, 1, ζ⁻¹, ζ)`, and `S_V1` built from `y1..y6, y5', y6'`.
#[derive(Debug, Clone)]
pub(crate) struct TssClosedForm {
    pub b: Wide,
    pub a: Wide,
    pub zeta: Wide,
    pub beta1: Wide,
    pub beta2: Wide,
    pub xi: Wide,
    pub delta1: Wide,
    pub delta2: Wide,
    /// `[y1, y2, y3, y4, y5, y6, y5', y6']`
    pub y: [Wide; 8],
}

impl TssClosedForm {
    /// Fails with a reason when `Δ1` or `Δ2` is too small (or of the wrong
    /// sign) for the closed form to be evaluated.
    pub fn new(n_s: f64, n_b: f64, kappa: f64, r1: f64, r2: f64) -> std::result::Result<Self, String> {
        let (a, c, b) = base_quantities(n_s, n_b);
        let one = Wide::one();
        let two = Wide::from_i64(2);
        let half = Wide::from_f64(0.5);
        let k = Wide::from_f64(kappa);
        let sk = k.sqrt();
        let g1p = Wide::from_f64(r1).exp();
        let g1m = Wide::from_f64(-r1).exp();
        let g2p = Wide::from_f64(r2).exp();
        let g2m = Wide::from_f64(-r2).exp();
        let f_p = &b + &k * (&a * &g1p * &g1p - &one);
        let f_m = &b + &k * (&a * &g1m * &g1m - &one);
        let kc2 = &k * &c * &c;
        let g = &f_p * &f_m - &a * &a;
        let h = &a * &a - &kc2;
        let gp = &f_p * &g1m - &a * &g1p;
        let gm = &f_m * &g1p - &a * &g1m;
        let hp = &a * &f_p - &kc2 * &g1p * &g1p;
        let xi2 = &g * &g - Wide::from_i64(4) * &kc2 * &gp * &gm;
        if xi2 <= Wide::zero() {
            return Err("degenerate symplectic spectrum (xi = 0)".into());
        }
        let xi = xi2.sqrt();
        let beta1 = ((&g + &two * &h + &xi) * &half).sqrt();
        let beta2 = ((&g + &two * &h - &xi) * &half).sqrt();
        let delta1 = &f_p * &beta1 * &beta1 - &a * &hp;
        let delta2 = &a * &hp - &f_p * &beta2 * &beta2;
        let floor = Wide::from_f64(DELTA_FLOOR);
        if delta1 <= floor || delta2 <= floor {
            return Err(format!(
                "closed-form transform singular (delta1 = {:e}, delta2 = {:e})",
                delta1.to_f64(),
                delta2.to_f64()
            ));
        }
        let s1 = (&beta1 * &xi * &delta1).sqrt();
        let s2 = (&beta2 * &xi * &delta2).sqrt();
        let q1 = (&beta1 / (&xi * &delta1)).sqrt();
        let q2 = (&beta2 / (&xi * &delta2)).sqrt();
        let g_minus_xi = &g - &xi;
        let g_plus_xi = &g + &xi;
        let kc2gp2hp = &kc2 * &gp * &gp * &hp;
        let skcgp = &sk * &c * &gp;

        let y1 = &kc2gp2hp / (&s1 * &delta2);
        let y2 = &half * &q1 * &kc2 * &gp / &delta2 * (&two * &a * &gp - &g1p * &g_minus_xi);
        let y3 = &half * &skcgp * &hp * &g_plus_xi / (&s2 * &delta1) * &g2p;
        let y4 = &half * &q2 * &skcgp / &delta1
            * &g2m
            * (&f_p * &g_plus_xi - &two * &kc2 * &gp * &g1p);
        let y5 = &kc2gp2hp / (&s2 * &delta1);
        let y6 = -(&half * &q2 * &kc2 * &gp / &delta1 * (&g1p * &g_plus_xi - &two * &a * &gp));
        let y5p = &half * &skcgp * &hp * &g_minus_xi / (&s1 * &delta2) * &g2p;
        let y6p = -(&half * &q1 * &skcgp / &delta2
            * &g2m
            * (&two * &kc2 * &gp * &g1p - &f_p * &g_minus_xi));
        let zeta = (&g2m / &g2p).sqrt();
        Ok(TssClosedForm {
            b,
            a,
            zeta,
            beta1,
            beta2,
            xi,
            delta1,
            delta2,
            y: [y1, y2, y3, y4, y5, y6, y5p, y6p],
        })
    }

    /// `y` coefficients as `f64`, in the order `[y1, y2, y3, y4, y5, y6, y5', y6']`.
    pub fn y_f64(&self) -> [f64; 8] {
        std::array::from_fn(|i| self.y[i].to_f64())
    }

    pub fn decomposition(&self) -> WilliamsonDecomposition {
        let [y1, y2, y3, y4, y5, y6, y5p, y6p] = self.y_f64();
        #[rustfmt::skip]
        let s = DMatrix::from_row_slice(4, 4, &[
            y1, 0.0, y5, 0.0,
            0.0, y2, 0.0, y6,
            y5p, 0.0, y3, 0.0,
            0.0, y6p, 0.0, y4,
        ]);
        WilliamsonDecomposition {
            transform: SymplecticMatrix::from_trusted(s),
            sympl_eigenvalues: vec![self.beta1.to_f64(), self.beta2.to_f64()],
            reduced_accuracy: false,
        }
    }
}

/// Closed-form TSS Williamson data as plain numbers, for inspection.
#[derive(Debug, Clone, PartialEq)]
pub struct TssWilliamsonData {
    pub beta1: f64,
    pub beta2: f64,
    pub xi: f64,
    pub delta1: f64,
    pub delta2: f64,
    pub zeta: f64,
    /// `[y1, y2, y3, y4, y5, y6, y5', y6']`
    pub y: [f64; 8],
}

/// Evaluates the TSS closed-form Williamson data for `params`.
pub fn tss_williamson_data(params: &ScenarioParams) -> Result<TssWilliamsonData> {
    params.validate()?;
    let Scenario::Tss { r1, r2 } = params.scenario else {
        return Err(invalid("kind", "expected a TSS scenario"));
    };
    let cf = TssClosedForm::new(params.n_s, params.n_b, params.kappa, r1, r2).map_err(Error::Numerical)?;
    Ok(TssWilliamsonData {
        beta1: cf.beta1.to_f64(),
        beta2: cf.beta2.to_f64(),
        xi: cf.xi.to_f64(),
        delta1: cf.delta1.to_f64(),
        delta2: cf.delta2.to_f64(),
        zeta: cf.zeta.to_f64(),
        y: cf.y_f64(),
    })
}

/// Closed-form TMS (or TMSV at `r = 0`) Williamson data of `V1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmsWilliamsonData {
    pub beta1: f64,
    pub beta2: f64,
    pub x_plus: f64,
    pub x_minus: f64,
}

pub fn tms_williamson_data(params: &ScenarioParams) -> Result<TmsWilliamsonData> {
    params.validate()?;
    let r = match params.scenario {
        Scenario::Tms { r } => r,
        Scenario::Tmsv => 0.0,
        Scenario::Tss { .. } => return Err(invalid("kind", "expected a TMS or TMSV scenario")),
    };
    let cf = TmsClosedForm::new(params.n_s, params.n_b, params.kappa, r);
    Ok(TmsWilliamsonData {
        beta1: cf.beta1.to_f64(),
        beta2: cf.beta2.to_f64(),
        x_plus: cf.x_plus.to_f64(),
        x_minus: cf.x_minus.to_f64(),
    })
}

/// Reassembled `S · diag(ν) · Sᵀ`, exposed for cross-checks.
pub fn reassemble(w: &WilliamsonDecomposition) -> DMatrix<f64> {
    let s = w.transform.entries();
    s * diag_from_modes(&w.sympl_eigenvalues) * s.transpose()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::{log_negativity, symplectic_eigenvalues};
    use approx::assert_relative_eq;

    fn max_diff(a: &DMatrix<f64>, b: &DMatrix<f64>) -> f64 {
        (a - b).amax()
    }

    #[test]
    fn tmsv_pair_entries() {
        let p = ScenarioParams::tmsv(1.0, 5.0, 0.1, 1).unwrap();
        let h = hypotheses(&p).unwrap();
        assert_relative_eq!(h.v1.get(1, 3), -(0.1f64.sqrt()) * 2.0 * 2f64.sqrt(), epsilon = 1e-14);
        assert_relative_eq!(h.v1.get(0, 2), 0.894_427_190_999_915_9, epsilon = 1e-14);
        assert_relative_eq!(h.v1.get(0, 0), 2.0 * 0.1 + 11.0, epsilon = 1e-14);
        assert_eq!(h.v0.get(0, 0), 11.0);
        assert_eq!(h.v0.get(2, 2), 3.0);
        assert_eq!(h.v0.get(0, 2), 0.0);

        let p0 = ScenarioParams::tmsv(1.0, 5.0, 0.0, 1).unwrap();
        let h0 = hypotheses(&p0).unwrap();
        assert_eq!(h0.v0, h0.v1);
    }

    #[test]
    fn parameter_validation() {
        assert!(ScenarioParams::tmsv(-1.0, 1.0, 0.1, 1).is_err());
        assert!(ScenarioParams::tmsv(0.1, 1.0, 1.0, 1).is_err());
        assert!(ScenarioParams::tmsv(0.1, 1.0, 0.1, 0).is_err());
        assert!(ScenarioParams::tss(0.1, 1.0, 0.1, f64::INFINITY, 0.0, 1).is_err());
        let p = ScenarioParams::tms(0.1, 1.0, 0.1, 0.2, 1).unwrap();
        assert!(p.with_field("r1", 0.3).is_err());
        assert!(p.with_field("bogus", 0.3).is_err());
        assert_eq!(p.with_field("r", 0.5).unwrap().scenario, Scenario::Tms { r: 0.5 });
        assert_eq!(p.with_field("m", 7.0).unwrap().m, 7);
        assert!(p.with_field("m", 7.5).is_err());
    }

    #[test]
    fn tss_probe_photon_numbers() {
        let (v, n) = tss_probe(0.1, 0.0, 0.0).unwrap();
        assert!(max_diff(v.entries(), tmsv_covariance(0.1).unwrap().entries()) < 1e-15);
        assert_relative_eq!(n.signal, 0.1, epsilon = 1e-14);
        assert_relative_eq!(n.idler, 0.1, epsilon = 1e-14);
        let (_, n) = tss_probe(0.1, 0.5, 0.0).unwrap();
        let n1 = 0.5f64.sinh().powi(2);
        assert_relative_eq!(n.signal, 0.1 + 2.0 * n1 * 0.1 + n1, epsilon = 1e-13);
        assert_relative_eq!(n.signal, 0.425_848, epsilon = 1e-6);
        assert_relative_eq!(n.idler, 0.1, epsilon = 1e-13);
        let (v, _) = tss_probe(0.1, 0.7, 0.3).unwrap();
        let e_tss = log_negativity(&v).unwrap();
        let e_tmsv = log_negativity(&tmsv_covariance(0.1).unwrap()).unwrap();
        assert!((e_tss - e_tmsv).abs() < 1e-9);
    }

    #[test]
    fn tss_reduces_to_x_pm() {
        let p = ScenarioParams::tss(0.1, 5.0, 0.05, 0.0, 0.0, 1).unwrap();
        let d = tss_williamson_data(&p).unwrap();
        let t = tms_williamson_data(&ScenarioParams::tmsv(0.1, 5.0, 0.05, 1).unwrap()).unwrap();
        let [y1, y2, y3, y4, y5, y6, y5p, y6p] = d.y;
        for y in [y1, y2, y3, y4] {
            assert!((y - t.x_plus).abs() < 1e-9, "{y} vs {}", t.x_plus);
        }
        for y in [y5, y5p, -y6, -y6p] {
            assert!((y - t.x_minus).abs() < 1e-9, "{y} vs {}", t.x_minus);
        }
    }

    #[test]
    fn tss_closed_form_matches_numeric_spectrum() {
        let p = ScenarioParams::tss(0.1, 10.0, 0.05, 0.4, 0.2, 1).unwrap();
        let h = hypotheses(&p).unwrap();
        assert_eq!(h.source, WilliamsonSource::ClosedForm);
        let nu = symplectic_eigenvalues(&h.v1).unwrap();
        assert!((h.w1.sympl_eigenvalues[0] - nu[1]).abs() < 1e-9);
        assert!((h.w1.sympl_eigenvalues[1] - nu[0]).abs() < 1e-9);
        assert_relative_eq!(h.w1.sympl_eigenvalues[0], 21.029_208_974_777_48, epsilon = 1e-9);
        assert_relative_eq!(h.w1.sympl_eigenvalues[1], 1.198_658_145_656_402, epsilon = 1e-9);
        assert!(h.w1.relative_residual(&h.v1) < 1e-8);
        assert!(h.w1.transform.residual() < 1e-10);
    }

    #[test]
    fn tss_eigenvalues_independent_of_r2() {
        let beta = |r2: f64| {
            let p = ScenarioParams::tss(0.1, 10.0, 0.05, 0.4, r2, 1).unwrap();
            let d = tss_williamson_data(&p).unwrap();
            (d.beta1, d.beta2)
        };
        let base = beta(0.0);
        for r2 in [0.5, 1.0] {
            let b = beta(r2);
            assert_eq!(b, base);
        }
    }

    #[test]
    fn tss_zero_kappa_falls_back() {
        let p = ScenarioParams::tss(0.1, 10.0, 0.0, 0.4, 0.2, 1).unwrap();
        let h = hypotheses(&p).unwrap();
        assert!(matches!(h.source, WilliamsonSource::Fallback(_)));
        assert!(max_diff(h.v0.entries(), h.v1.entries()) < 1e-15);
        assert!(h.w1.relative_residual(&h.v1) < 1e-8);
    }

    #[test]
    fn tms_probe_properties() {
        let (v, _) = tms_probe(0.1, 0.0).unwrap();
        assert!(max_diff(v.entries(), tmsv_covariance(0.1).unwrap().entries()) < 1e-15);
        let (v, n) = tms_probe(0.3, 0.6).unwrap();
        let (at, ct) = (v.get(0, 0), v.get(0, 2));
        assert_relative_eq!(at * at - ct * ct, 1.0, epsilon = 1e-12);
        assert_relative_eq!(n.signal, (at - 1.0) / 2.0, epsilon = 1e-14);
        assert_relative_eq!(n.signal, n.idler, epsilon = 1e-14);
        let e = log_negativity(&tms_probe(0.1, 0.4).unwrap().0).unwrap()
            - log_negativity(&tmsv_covariance(0.1).unwrap()).unwrap();
        assert!((e - 0.8 * std::f64::consts::LOG2_E).abs() < 1e-9);
    }

    #[test]
    fn tms_closed_form() {
        let p = ScenarioParams::tms(0.1, 5.0, 0.05, 0.3, 1).unwrap();
        let h = hypotheses(&p).unwrap();
        assert_eq!(h.source, WilliamsonSource::ClosedForm);
        assert!(h.w1.relative_residual(&h.v1) < 1e-8);
        let d = tms_williamson_data(&p).unwrap();
        assert_relative_eq!(d.x_plus.powi(2) - d.x_minus.powi(2), 1.0, epsilon = 1e-12);
        let p = ScenarioParams::tms(0.1, 5.0, 0.05, 0.2, 1).unwrap();
        let h = hypotheses(&p).unwrap();
        let nu = symplectic_eigenvalues(&h.v1).unwrap();
        assert!((nu[1] - h.w1.sympl_eigenvalues[0]).abs() < 1e-9);
        assert!((nu[0] - h.w1.sympl_eigenvalues[1]).abs() < 1e-9);
        let h0 = hypotheses(&ScenarioParams::tms(0.1, 5.0, 0.0, 0.2, 1).unwrap()).unwrap();
        assert!(max_diff(h0.v0.entries(), h0.v1.entries()) < 1e-15);
    }

    #[test]
    fn squeeze_free_scenarios_coincide_with_tmsv() {
        let tmsv = hypotheses(&ScenarioParams::tmsv(0.2, 3.0, 0.1, 1).unwrap()).unwrap();
        let tss = hypotheses(&ScenarioParams::tss(0.2, 3.0, 0.1, 0.0, 0.0, 1).unwrap()).unwrap();
        let tms = hypotheses(&ScenarioParams::tms(0.2, 3.0, 0.1, 0.0, 1).unwrap()).unwrap();
        for h in [&tss, &tms] {
            assert!(max_diff(h.v0.entries(), tmsv.v0.entries()) < 1e-12);
            assert!(max_diff(h.v1.entries(), tmsv.v1.entries()) < 1e-12);
        }
    }
}
