//! Chernoff-type overlaps `Q_s = Tr[ρ0^s ρ1^(1-s)]` between Gaussian states and
//! the error-probability bounds built from them.
//!
//! For an `n`-mode pair with Williamson data `(α, S0)`, `(β, S1)`:
//!
//! ```text
//! Σ(s)  = S0 Λ_s(α) S0ᵀ + S1 Λ_{1-s}(β) S1ᵀ
//! Q_s   = 2^n Π G_s(α_k) G_{1-s}(β_k) / √det Σ(s) · exp(-½ dᵀ Σ(s)⁻¹ d)
//! ```
//!
//! with `d` the difference of the quadrature means. Scenario pairs are
//! evaluated from their closed forms at extended precision (see
//! [`crate::precision`]); arbitrary pairs go through `Σ(s)` in `f64`.

use nalgebra::{DMatrix, DVector};

use crate::error::{invalid, Error, Result};
use crate::minimize::{bisect, golden_section};
use crate::models::{HypothesisPair, Scenario, ScenarioParams, TmsClosedForm, TssClosedForm};
use crate::precision::Wide;
use crate::symplectic::{check_photons, diag_from_modes};

/// Interior of `[0, 1]` on which the general formula is evaluated.
pub const S_MIN: f64 = 1e-9;
pub const S_MAX: f64 = 1.0 - 1e-9;

const S_TOLERANCE: f64 = 1e-10;
const MAX_ITERATIONS: usize = 200;
const GRID_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OverlapResult {
    pub s: f64,
    pub q_s: f64,
    pub log_q_s: f64,
}

impl OverlapResult {
    fn from_log(s: f64, log_q_s: f64) -> Self {
        OverlapResult {
            s,
            q_s: log_q_s.exp(),
            log_q_s,
        }
    }
}

/// `value = ½ Q^M`. `exponent_per_copy = -ln Q` stays meaningful when
/// `value` underflows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundResult {
    pub value: f64,
    pub m_copies: u64,
    pub s_used: f64,
    pub optimized: bool,
    pub exponent_per_copy: f64,
}

impl BoundResult {
    pub fn from_exponent(exponent_per_copy: f64, m_copies: u64, s_used: f64, optimized: bool) -> Self {
        let exponent_per_copy = exponent_per_copy.max(0.0);
        BoundResult {
            value: 0.5 * (-(m_copies as f64) * exponent_per_copy).exp(),
            m_copies,
            s_used,
            optimized,
            exponent_per_copy,
        }
    }

    /// `M · exponent_per_copy`.
    pub fn total_exponent(&self) -> f64 {
        self.m_copies as f64 * self.exponent_per_copy
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdvantageResult {
    pub gamma: f64,
    pub decibels: f64,
}

impl AdvantageResult {
    fn new(gamma: f64) -> Self {
        AdvantageResult {
            gamma,
            decibels: 10.0 * gamma.log10(),
        }
    }
}

fn check_order(p: f64, x: f64) -> Result<()> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(invalid("p", format!("{p} is outside (0, 1]")));
    }
    if !(x >= 1.0 - 1e-9) || !x.is_finite() {
        return Err(invalid("x", format!("{x} is below 1")));
    }
    Ok(())
}

/// `θ = atanh(1/x)`, infinite at `x = 1`.
fn theta(x: f64) -> f64 {
    0.5 * (2.0 / (x - 1.0)).ln_1p()
}

/// `Λ_p(x) = ((x+1)^p + (x-1)^p) / ((x+1)^p - (x-1)^p)`.
pub fn lambda_p(p: f64, x: f64) -> Result<f64> {
    check_order(p, x)?;
    if x <= 1.0 {
        return Ok(1.0);
    }
    Ok(1.0 / (p * theta(x)).tanh())
}

/// `G_p(x) = 2^p / ((x+1)^p - (x-1)^p)`.
pub fn g_p(p: f64, x: f64) -> Result<f64> {
    Ok(ln_g_p(p, x)?.exp())
}

/// `ln G_p(x)`, evaluated as `(p-1) ln 2 + p ln sinh θ - ln sinh pθ`.
pub fn ln_g_p(p: f64, x: f64) -> Result<f64> {
    check_order(p, x)?;
    if x <= 1.0 {
        return Ok(0.0);
    }
    let t = theta(x);
    Ok((p - 1.0) * std::f64::consts::LN_2 + p * ln_sinh(t) - ln_sinh(p * t))
}

fn ln_sinh(t: f64) -> f64 {
    if t > 20.0 {
        t - std::f64::consts::LN_2 + (-2.0 * t).exp_m1().ln_1p()
    } else {
        t.sinh().ln()
    }
}

/// Argument of `Λ_p`, `G_p` at working precision, with the `p`-independent
/// logarithms cached for repeated evaluation at varying `p`.
struct WideArg {
    ln_plus: Wide,
    /// `None` when `x = 1`, where `Λ_p = G_p = 1`.
    ln_minus: Option<Wide>,
}

impl WideArg {
    fn new(x: &Wide) -> Self {
        let one = Wide::one();
        let xm1 = x - &one;
        WideArg {
            ln_plus: (x + &one).ln(),
            ln_minus: (xm1 > Wide::zero()).then(|| xm1.ln()),
        }
    }

    /// `(Λ_p(x), 2^p / G_p(x))`.
    fn lambda_and_den(&self, p: &Wide) -> (Wide, Wide) {
        match &self.ln_minus {
            None => (Wide::one(), (p * Wide::from_f64(std::f64::consts::LN_2)).exp()),
            Some(ln_minus) => {
                let u = (p * &self.ln_plus).exp();
                let v = (p * ln_minus).exp();
                let den = &u - &v;
                ((u + v) / &den, den)
            }
        }
    }
}

/// Cached arguments `[α1, α2, β1, β2]` of one closed form.
struct WideArgs([WideArg; 4]);

impl WideArgs {
    fn new(a1: &Wide, a2: &Wide, b1: &Wide, b2: &Wide) -> Self {
        WideArgs([WideArg::new(a1), WideArg::new(a2), WideArg::new(b1), WideArg::new(b2)])
    }

    /// `Λ_s(α1), Λ_s(α2), Λ_{1-s}(β1), Λ_{1-s}(β2)` and
    /// `4 G_s(α1) G_s(α2) G_{1-s}(β1) G_{1-s}(β2)`.
    fn evaluate(&self, s: f64) -> ([Wide; 4], Wide) {
        let s_w = Wide::from_f64(s);
        let t_w = Wide::one() - &s_w;
        let [a1, a2, b1, b2] = &self.0;
        let (la1, d1) = a1.lambda_and_den(&s_w);
        let (la2, d2) = a2.lambda_and_den(&s_w);
        let (lb1, d3) = b1.lambda_and_den(&t_w);
        let (lb2, d4) = b2.lambda_and_den(&t_w);
        // the powers of two multiply to 2^(2s + 2(1-s)) = 4
        let g = Wide::from_i64(16) / (d1 * d2 * d3 * d4);
        ([la1, la2, lb1, lb2], g)
    }
}

/// Per-pair evaluator of `ln Q_s`.
enum Overlap<'a> {
    Equal,
    Tms(TmsClosedForm, WideArgs),
    Tss(TssClosedForm, WideArgs),
    Sigma(&'a HypothesisPair),
}

impl<'a> Overlap<'a> {
    fn for_pair(pair: &'a HypothesisPair) -> Self {
        if pair.v0 == pair.v1 && pair.means[0] == pair.means[1] {
            return Overlap::Equal;
        }
        let tms = |cf: TmsClosedForm| {
            let args = WideArgs::new(&cf.b, &cf.a_tilde, &cf.beta1, &cf.beta2);
            Overlap::Tms(cf, args)
        };
        match pair.origin() {
            Some(ScenarioParams {
                scenario,
                n_s,
                n_b,
                kappa,
                ..
            }) => match *scenario {
                Scenario::Tmsv => tms(TmsClosedForm::new(*n_s, *n_b, *kappa, 0.0)),
                Scenario::Tms { r } => tms(TmsClosedForm::new(*n_s, *n_b, *kappa, r)),
                Scenario::Tss { r1, r2 } => match TssClosedForm::new(*n_s, *n_b, *kappa, r1, r2) {
                    Ok(cf) => {
                        let args = WideArgs::new(&cf.b, &cf.a, &cf.beta1, &cf.beta2);
                        Overlap::Tss(cf, args)
                    }
                    Err(_) => Overlap::Sigma(pair),
                },
            },
            None => Overlap::Sigma(pair),
        }
    }

    fn log_q(&self, s: f64) -> Result<f64> {
        match self {
            Overlap::Equal => Ok(0.0),
            Overlap::Tms(cf, args) => Ok(tms_log_q(cf, args, s)),
            Overlap::Tss(cf, args) => Ok(tss_log_q(cf, args, s)),
            Overlap::Sigma(pair) => sigma_log_q(pair, s),
        }
    }
}

fn tms_log_q(cf: &TmsClosedForm, args: &WideArgs, s: f64) -> f64 {
    let ([la1, la2, lb1, lb2], g) = args.evaluate(s);
    let xp2 = &cf.x_plus * &cf.x_plus;
    let xm2 = &cf.x_minus * &cf.x_minus;
    let y1 = &lb1 * &xp2 + &lb2 * &xm2 + &la1;
    let y2 = &lb1 * &xm2 + &lb2 * &xp2 + &la2;
    let z3 = (&lb1 + &lb2) * &cf.x_plus * &cf.x_minus;
    (g / (y1 * y2 - &z3 * &z3)).ln().to_f64()
}

fn tss_log_q(cf: &TssClosedForm, args: &WideArgs, s: f64) -> f64 {
    let [y1, y2, y3, y4, y5, y6, y5p, y6p] = &cf.y;
    let ([la1, la2, lb1, lb2], g) = args.evaluate(s);
    let z2 = &cf.zeta * &cf.zeta;
    let x1 = &la1 + y1 * y1 * &lb1 + y5 * y5 * &lb2;
    let x2 = &la1 + y2 * y2 * &lb1 + y6 * y6 * &lb2;
    let x3 = &la2 / &z2 + y5p * y5p * &lb1 + y3 * y3 * &lb2;
    let x4 = &la2 * &z2 + y6p * y6p * &lb1 + y4 * y4 * &lb2;
    let x5 = y1 * y5p * &lb1 + y3 * y5 * &lb2;
    let x6 = y2 * y6p * &lb1 + y4 * y6 * &lb2;
    let det = (x1 * x3 - &x5 * &x5) * (x2 * x4 - &x6 * &x6);
    (g / det.sqrt()).ln().to_f64()
}

/// `Σ(s)` assembled from the pair's Williamson data.
pub fn sigma_matrix(pair: &HypothesisPair, s: f64) -> Result<DMatrix<f64>> {
    let l0: Vec<f64> = pair
        .w0
        .sympl_eigenvalues
        .iter()
        .map(|&a| lambda_p(s, a))
        .collect::<Result<_>>()?;
    let l1: Vec<f64> = pair
        .w1
        .sympl_eigenvalues
        .iter()
        .map(|&b| lambda_p(1.0 - s, b))
        .collect::<Result<_>>()?;
    let s0 = pair.w0.transform.entries();
    let s1 = pair.w1.transform.entries();
    Ok(s0 * diag_from_modes(&l0) * s0.transpose() + s1 * diag_from_modes(&l1) * s1.transpose())
}

fn sigma_log_q(pair: &HypothesisPair, s: f64) -> Result<f64> {
    let n = pair.n_modes();
    let sigma = sigma_matrix(pair, s)?;
    let chol = sigma
        .cholesky()
        .ok_or_else(|| Error::Numerical(format!("Σ(s) is singular at s = {s}")))?;
    let log_det: f64 = 2.0 * chol.l().diagonal().iter().map(|x| x.ln()).sum::<f64>();
    let mut log_q = n as f64 * std::f64::consts::LN_2 - 0.5 * log_det;
    for &a in &pair.w0.sympl_eigenvalues {
        log_q += ln_g_p(s, a)?;
    }
    for &b in &pair.w1.sympl_eigenvalues {
        log_q += ln_g_p(1.0 - s, b)?;
    }
    let d: DVector<f64> = &pair.means[0] - &pair.means[1];
    if d.iter().any(|&x| x != 0.0) {
        let sol = chol.solve(&d);
        log_q -= 0.5 * d.dot(&sol);
    }
    Ok(log_q)
}

fn check_s(s: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(invalid("s", format!("{s} is outside [0, 1]")));
    }
    Ok(())
}

/// `Q_s` for the pair; `Q_0 = Q_1 = 1` and `s` is clamped into
/// `[S_MIN, S_MAX]` otherwise.
pub fn q_s(pair: &HypothesisPair, s: f64) -> Result<OverlapResult> {
    check_s(s)?;
    if s == 0.0 || s == 1.0 {
        return Ok(OverlapResult::from_log(s, 0.0));
    }
    let log_q = Overlap::for_pair(pair).log_q(s.clamp(S_MIN, S_MAX))?;
    Ok(OverlapResult::from_log(s, log_q))
}

/// `Q_s` through the `f64` `Σ(s)` route from whatever Williamson data the
/// pair carries, bypassing the closed forms.
pub fn q_s_generic(pair: &HypothesisPair, s: f64) -> Result<OverlapResult> {
    check_s(s)?;
    if s == 0.0 || s == 1.0 {
        return Ok(OverlapResult::from_log(s, 0.0));
    }
    Ok(OverlapResult::from_log(s, sigma_log_q(pair, s.clamp(S_MIN, S_MAX))?))
}

/// `det Σ(s)` of a TSS pair through the factorization
/// `(x1 x3 - x5²)(x2 x4 - x6²)`.
pub fn tss_det_sigma_factorized(params: &ScenarioParams, s: f64) -> Result<f64> {
    params.validate()?;
    let Scenario::Tss { r1, r2 } = params.scenario else {
        return Err(invalid("kind", "expected a TSS scenario"));
    };
    check_s(s)?;
    let cf = TssClosedForm::new(params.n_s, params.n_b, params.kappa, r1, r2).map_err(Error::Numerical)?;
    let [y1, y2, y3, y4, y5, y6, y5p, y6p] = cf.y_f64();
    let (la1, la2) = (lambda_p(s, cf.b.to_f64())?, lambda_p(s, cf.a.to_f64())?);
    let (lb1, lb2) = (
        lambda_p(1.0 - s, cf.beta1.to_f64())?,
        lambda_p(1.0 - s, cf.beta2.to_f64())?,
    );
    let z2 = cf.zeta.to_f64().powi(2);
    let x1 = la1 + y1 * y1 * lb1 + y5 * y5 * lb2;
    let x2 = la1 + y2 * y2 * lb1 + y6 * y6 * lb2;
    let x3 = la2 / z2 + y5p * y5p * lb1 + y3 * y3 * lb2;
    let x4 = la2 * z2 + y6p * y6p * lb1 + y4 * y4 * lb2;
    let x5 = y1 * y5p * lb1 + y3 * y5 * lb2;
    let x6 = y2 * y6p * lb1 + y4 * y6 * lb2;
    Ok((x1 * x3 - x5 * x5) * (x2 * x4 - x6 * x6))
}

fn check_copies(m: u64) -> Result<()> {
    if m == 0 {
        return Err(invalid("m", "copy count must be at least 1"));
    }
    Ok(())
}

/// Bhattacharyya bound `½ Q_{1/2}^M`.
pub fn qb_bound(pair: &HypothesisPair, m: u64) -> Result<BoundResult> {
    check_copies(m)?;
    let q = q_s(pair, 0.5)?;
    Ok(BoundResult::from_exponent(-q.log_q_s, m, 0.5, false))
}

/// Chernoff bound `½ (min_s Q_s)^M`.
///
/// A 101-point scan of `s` brackets the minimum, golden-section search
/// refines it, and the result is never worse than the scan or `s = ½`.
pub fn qc_bound(pair: &HypothesisPair, m: u64) -> Result<BoundResult> {
    check_copies(m)?;
    let ev = Overlap::for_pair(pair);
    if matches!(ev, Overlap::Equal) {
        return Ok(BoundResult::from_exponent(0.0, m, 0.5, true));
    }
    let grid: Vec<f64> = (0..GRID_POINTS)
        .map(|i| (i as f64 / (GRID_POINTS - 1) as f64).clamp(S_MIN, S_MAX))
        .collect();
    let values: Vec<f64> = grid.iter().map(|&s| ev.log_q(s)).collect::<Result<_>>()?;
    let best = (0..GRID_POINTS)
        .min_by(|&a, &b| values[a].total_cmp(&values[b]))
        .unwrap_or(GRID_POINTS / 2);
    let lo = grid[best.saturating_sub(1)];
    let hi = grid[(best + 1).min(GRID_POINTS - 1)];
    let refined = golden_section(|s| ev.log_q(s), lo, hi, S_TOLERANCE, MAX_ITERATIONS)?;
    let half = ev.log_q(0.5)?;
    let (s_star, log_q) = [(refined.x, refined.value), (grid[best], values[best]), (0.5, half)]
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty");
    Ok(BoundResult::from_exponent(-log_q, m, s_star, true))
}

fn check_channel(n_s: f64, n_b: f64, kappa: f64, m: u64) -> Result<()> {
    check_photons("n_s", n_s)?;
    check_photons("n_b", n_b)?;
    if !(0.0..1.0).contains(&kappa) {
        return Err(invalid("kappa", format!("{kappa} is outside [0, 1)")));
    }
    check_copies(m)
}

/// Coherent-state benchmark
/// `½ exp[-(√(1+N_B) - √N_B)/(√(1+N_B) + √N_B) · MκN_S]`.
pub fn coherent_qb_bound(n_s: f64, n_b: f64, kappa: f64, m: u64) -> Result<BoundResult> {
    check_channel(n_s, n_b, kappa, m)?;
    // (√(1+N_B) - √N_B)/(√(1+N_B) + √N_B) = 1/(√(1+N_B) + √N_B)²
    let root_sum = (1.0 + n_b).sqrt() + n_b.sqrt();
    Ok(BoundResult::from_exponent(kappa * n_s / (root_sum * root_sum), m, 0.5, false))
}

/// Large-`N_B` form of the coherent benchmark, `½ exp[-MκN_S/(4N_B)]`.
pub fn coherent_qb_asymptotic(n_s: f64, n_b: f64, kappa: f64, m: u64) -> Result<BoundResult> {
    check_channel(n_s, n_b, kappa, m)?;
    require_background(n_b)?;
    Ok(BoundResult::from_exponent(kappa * n_s / (4.0 * n_b), m, 0.5, false))
}

/// Single-mode pair for coherent-state illumination: the return mode is
/// thermal with mean `N_B`, displaced by `√(κN_S)` when the target is present.
pub fn coherent_pair(n_s: f64, n_b: f64, kappa: f64) -> Result<HypothesisPair> {
    check_channel(n_s, n_b, kappa, 1)?;
    let v = crate::symplectic::CovarianceMatrix::thermal(&[n_b])?;
    let rho0 = crate::symplectic::GaussianState::zero_mean(v.clone());
    let mean = DVector::from_vec(vec![2.0 * (kappa * n_s).sqrt(), 0.0]);
    let rho1 = crate::symplectic::GaussianState::new(mean, v)?;
    HypothesisPair::from_states(&rho0, &rho1)
}

fn require_background(n_b: f64) -> Result<()> {
    if n_b > 0.0 {
        Ok(())
    } else {
        Err(invalid("n_b", "asymptotic forms need N_B > 0"))
    }
}

/// `A + √(A² - 1)` for a pure-state diagonal `A`.
fn a_plus_root(a: f64) -> f64 {
    a + (a * a - 1.0).max(0.0).sqrt()
}

/// Large-`N_B` TMSV form `½ exp[-(M/4N_B) κC²/(A + √(A² - 1))]`.
pub fn tmsv_qb_asymptotic(params: &ScenarioParams) -> Result<BoundResult> {
    params.validate()?;
    require_background(params.n_b)?;
    let a = 2.0 * params.n_s + 1.0;
    let c2 = 4.0 * params.n_s * (1.0 + params.n_s);
    let e = params.kappa * c2 / (4.0 * params.n_b * a_plus_root(a));
    Ok(BoundResult::from_exponent(e, params.m, 0.5, false))
}

/// The `N_S ≪ 1` simplification `½ exp[-MκN_S/N_B]`.
pub fn tmsv_qb_simple(params: &ScenarioParams) -> Result<BoundResult> {
    params.validate()?;
    require_background(params.n_b)?;
    let e = params.kappa * params.n_s / params.n_b;
    Ok(BoundResult::from_exponent(e, params.m, 0.5, false))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TssAsymptotic {
    pub bound: BoundResult,
    pub k1: f64,
    pub k2: f64,
}

/// Large-`N_B` TSS form
/// `½ exp[-(MκC²/4N_B)(2n1 + 1)/(A + √(A² - 1))]`, with the correction
/// coefficients `K1`, `K2`.
pub fn tss_qb_asymptotic(params: &ScenarioParams) -> Result<TssAsymptotic> {
    params.validate()?;
    require_background(params.n_b)?;
    let Scenario::Tss { r1, .. } = params.scenario else {
        return Err(invalid("kind", "expected a TSS scenario"));
    };
    let (n_s, kappa) = (params.n_s, params.kappa);
    let a = 2.0 * n_s + 1.0;
    let c2 = 4.0 * n_s * (1.0 + n_s);
    let n1 = r1.sinh().powi(2);
    let e = kappa * c2 * (2.0 * n1 + 1.0) / (4.0 * params.n_b * a_plus_root(a));
    let gsum = (2.0 * r1).exp() + (-2.0 * r1).exp();
    let root = (a * a - 1.0).max(0.0).sqrt();
    let base = 2.0 * (2.0 - kappa) + kappa * a * gsum;
    let (k1, k2) = if root > 0.0 {
        (
            base - kappa * c2 / root * gsum,
            base - kappa * a * c2 / (root * (a + root)) * gsum,
        )
    } else {
        (base, base)
    };
    Ok(TssAsymptotic {
        bound: BoundResult::from_exponent(e, params.m, 0.5, false),
        k1,
        k2,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TmsAsymptotic {
    pub bound: BoundResult,
    pub j1: f64,
    pub j2: f64,
}

/// `Ã = A cosh 2r + C sinh 2r`, `C̃ = A sinh 2r + C cosh 2r`.
pub fn tms_tilde(n_s: f64, r: f64) -> (f64, f64) {
    let a = 2.0 * n_s + 1.0;
    let c = 2.0 * (n_s * (1.0 + n_s)).sqrt();
    let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    (a * ch + c * sh, a * sh + c * ch)
}

/// Large-`N_B` TMS form `½ exp[-(M/4N_B) κC̃²/(Ã + √(Ã² - 1))]`, with the
/// correction coefficients `J1`, `J2`.
pub fn tms_qb_asymptotic(params: &ScenarioParams) -> Result<TmsAsymptotic> {
    params.validate()?;
    require_background(params.n_b)?;
    let Scenario::Tms { r } = params.scenario else {
        return Err(invalid("kind", "expected a TMS scenario"));
    };
    let kappa = params.kappa;
    let (at, ct) = tms_tilde(params.n_s, r);
    // Ã² - C̃² = 1 for the pure probe
    let root = ct.abs();
    let e = kappa * ct * ct / (4.0 * params.n_b * (at + root));
    let base = 2.0 - kappa + kappa * at;
    let (j1, j2) = if root > 0.0 {
        (
            base - kappa * ct * ct / root,
            base - kappa * ct * ct * at / (root * (at + root)),
        )
    } else {
        (base, base)
    };
    Ok(TmsAsymptotic {
        bound: BoundResult::from_exponent(e, params.m, 0.5, false),
        j1,
        j2,
    })
}

/// Asymptotic QB bound for whichever scenario `params` names.
pub fn qb_asymptotic(params: &ScenarioParams) -> Result<BoundResult> {
    match params.scenario {
        Scenario::Tmsv => tmsv_qb_asymptotic(params),
        Scenario::Tss { .. } => Ok(tss_qb_asymptotic(params)?.bound),
        Scenario::Tms { .. } => Ok(tms_qb_asymptotic(params)?.bound),
    }
}

fn check_signal(n_s: f64) -> Result<()> {
    if n_s > 0.0 && n_s.is_finite() {
        Ok(())
    } else {
        Err(invalid("n_s", format!("{n_s} must be positive")))
    }
}

/// Advantage of the TSS probe over coherent illumination with the same
/// signal photon number,
/// `Γ1 = 4N_S(1+N_S)(2n1+1) / ((N_S + 2n1 N_S + n1)(√(1+N_S) + √N_S)²)`.
pub fn gamma1(n_s: f64, n1: f64) -> Result<AdvantageResult> {
    check_signal(n_s)?;
    check_photons("n1", n1)?;
    let root_sum = (1.0 + n_s).sqrt() + n_s.sqrt();
    let g = 4.0 * n_s * (1.0 + n_s) * (2.0 * n1 + 1.0) / ((n_s + 2.0 * n1 * n_s + n1) * root_sum * root_sum);
    Ok(AdvantageResult::new(g))
}

/// `Γ1` rewritten in terms of the squeezed signal photon number `Ñ_S`:
/// `4(Ñ_S - n1)(Ñ_S + n1 + 1) / (Ñ_S (√(Ñ_S + n1 + 1) + √(Ñ_S - n1))²)`.
pub fn gamma1_from_signal_photons(n_tilde: f64, n1: f64) -> Result<AdvantageResult> {
    check_photons("n1", n1)?;
    if !(n_tilde > n1) {
        return Err(invalid("n_tilde", "must exceed n1"));
    }
    let (u, v) = (n_tilde - n1, n_tilde + n1 + 1.0);
    let root_sum = v.sqrt() + u.sqrt();
    Ok(AdvantageResult::new(4.0 * u * v / (n_tilde * root_sum * root_sum)))
}

/// `Γ1` at local squeeze `r1` (`n1 = sinh² r1`).
pub fn gamma1_at(n_s: f64, r1: f64) -> Result<AdvantageResult> {
    gamma1(n_s, r1.sinh().powi(2))
}

/// Advantage of the TMS probe, `Γ2 = C̃² / (N̄_S (Ã + √(Ã² - 1)))`.
pub fn gamma2(n_s: f64, r: f64) -> Result<AdvantageResult> {
    check_photons("n_s", n_s)?;
    if !r.is_finite() {
        return Err(invalid("r", "must be finite"));
    }
    // With N_S = sinh² s the probe is a TMSV of squeezing t = s + r, so
    // N̄_S = sinh² t, Ã = 1 + 2N̄_S, C̃ = sinh 2t and √(Ã² - 1) = C̃. This
    // avoids the cancellation in Ã - 1 at small N_S.
    let t = n_s.sqrt().asinh() + r;
    let n_bar = t.sinh().powi(2);
    if !(n_bar > 0.0) {
        return Err(invalid("n_s", "N_S = 0 with r = 0 leaves no signal photons"));
    }
    let (at, ct) = (1.0 + 2.0 * n_bar, (2.0 * t).sinh());
    Ok(AdvantageResult::new(ct * ct / (n_bar * (at + ct.abs()))))
}

/// Upper end of the bracket searched by [`critical_r1`].
pub const CRITICAL_R1_MAX: f64 = 20.0;

/// The local squeeze `r1 > 0` at which `Γ1 = 1`.
pub fn critical_r1(n_s: f64) -> Result<f64> {
    check_signal(n_s)?;
    let f = |r1: f64| gamma1_at(n_s, r1).map(|g| g.gamma - 1.0).unwrap_or(f64::NAN);
    bisect(f, 0.0, CRITICAL_R1_MAX, 1e-12, 400).map_err(|e| match e {
        Error::NoRoot(_) => Error::NoRoot(format!("Γ1 does not cross 1 on [0, {CRITICAL_R1_MAX}] for N_S = {n_s}")),
        other => other,
    })
}
