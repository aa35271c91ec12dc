//! Oracle construction of the hypothesis states for a scenario.

use super::{
    lossy_thermal_channel, squeeze_unitary_single, squeeze_unitary_two, tmsv_ket, FockOperator,
    TruncationReport, DEFAULT_ENV_DIM, DEFAULT_IDLER_DIM, DEFAULT_SIGNAL_DIM, DEFAULT_TAIL_TOLERANCE,
};
use crate::error::{invalid, Error, Result};
use crate::models::{Scenario, ScenarioParams};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    pub signal_dim: usize,
    pub idler_dim: usize,
    pub env_dim: usize,
    pub tail_tolerance: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            signal_dim: DEFAULT_SIGNAL_DIM,
            idler_dim: DEFAULT_IDLER_DIM,
            env_dim: DEFAULT_ENV_DIM,
            tail_tolerance: DEFAULT_TAIL_TOLERANCE,
        }
    }
}

impl OracleConfig {
    pub fn with_dims(signal_dim: usize, idler_dim: usize, env_dim: usize) -> Self {
        OracleConfig {
            signal_dim,
            idler_dim,
            env_dim,
            ..Default::default()
        }
    }
}

/// Oracle hypothesis states with the truncation diagnostic of the probe,
/// both outputs and the environment.
#[derive(Debug, Clone)]
pub struct OraclePair {
    pub rho0: FockOperator,
    pub rho1: FockOperator,
    pub report: TruncationReport,
}

impl OraclePair {
    /// Fails with [`Error::Truncation`] unless the truncation converged.
    pub fn require_converged(&self, tolerance: f64) -> Result<()> {
        if self.report.converged {
            Ok(())
        } else {
            Err(Error::Truncation {
                tail_mass: self.report.tail_mass,
                tolerance,
            })
        }
    }
}

/// Fock levels added to each mode while the squeezed probe is prepared.
const PREPARATION_MARGIN: usize = 16;

/// Prepares the probe by acting on the truncated TMSV ket, sends the signal
/// through the lossy thermal channel (`κ` for `ρ1`, `0` for `ρ0`).
pub fn oracle_hypotheses(params: &ScenarioParams, config: &OracleConfig) -> Result<OraclePair> {
    params.validate()?;
    let (ds, di) = (config.signal_dim, config.idler_dim);
    if ds < 2 || di < 2 || config.env_dim < 2 {
        return Err(invalid("dims", "truncation dimensions must be at least 2"));
    }
    // Squeezers act on a larger space so nothing is lost above the cutoff
    // during preparation; only the prepared probe is truncated.
    let work = match params.scenario {
        Scenario::Tmsv => ds.max(di),
        _ => ds.max(di) + PREPARATION_MARGIN,
    };
    let mut probe = tmsv_ket(params.n_s, work)?;
    match params.scenario {
        Scenario::Tmsv => {}
        Scenario::Tss { r1, r2 } => {
            let u = squeeze_unitary_single(r1, work)?.tensor(&squeeze_unitary_single(r2, work)?);
            probe = u.apply(&probe)?;
        }
        Scenario::Tms { r } => {
            probe = squeeze_unitary_two(r, [work, work])?.apply(&probe)?;
        }
    }
    let probe = crop(&probe, ds, di)?;
    let tol = config.tail_tolerance;
    let rho = probe.density();
    let env_n = params.n_b / (1.0 - params.kappa);
    let env_tail = env_tail_mass(env_n, config.env_dim);
    let rho0 = lossy_thermal_channel(&rho, 0.0, params.n_b, config.env_dim)?;
    let rho1 = lossy_thermal_channel(&rho, params.kappa, params.n_b, config.env_dim)?;
    let report = TruncationReport::new(probe.tail_mass(), tol)
        .merge(TruncationReport::new(rho0.tail_mass(), tol))
        .merge(TruncationReport::new(rho1.tail_mass(), tol))
        .merge(TruncationReport::new(env_tail, tol));
    Ok(OraclePair { rho0, rho1, report })
}

fn env_tail_mass(n: f64, dim: usize) -> f64 {
    // top two levels of the geometric distribution
    let q = n / (1.0 + n);
    q.powi(dim as i32 - 2) * (1.0 - q * q)
}

fn crop(ket: &super::FockKet, ds: usize, di: usize) -> Result<super::FockKet> {
    let d = ket.mode_dims()[0];
    let amps = nalgebra::DVector::from_fn(ds * di, |k, _| {
        let (s, i) = (k / di, k % di);
        ket.amplitudes()[s * d + i]
    });
    super::FockKet::new(vec![ds, di], amps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dims_flag_truncation() {
        let p = ScenarioParams::tmsv(0.1, 0.2, 0.1, 1).unwrap();
        let pair = oracle_hypotheses(&p, &OracleConfig::with_dims(4, 4, 24)).unwrap();
        assert!(!pair.report.converged);
        assert!(pair.require_converged(1e-8).is_err());
        let pair = oracle_hypotheses(&p, &OracleConfig::default()).unwrap();
        assert!(pair.report.converged, "{:?}", pair.report);
    }
}
