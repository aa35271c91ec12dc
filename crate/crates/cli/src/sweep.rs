//! Grid evaluation engine shared by `sweep` and the figure commands.

use rayon::prelude::*;
use serde::Deserialize;

use qillum::bounds::{
    coherent_qb_bound, critical_r1, gamma1, gamma1_at, gamma2, qb_asymptotic, qb_bound, qc_bound,
};
use qillum::models::{hypotheses, Scenario, ScenarioParams};
use qillum::symplectic::log_negativity;

use crate::error::{CliError, Result};
use crate::table::{format_number, Table};

/// Probe preparation, as named on the command line and in configs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Tmsv,
    Tss,
    Tms,
}

impl Kind {
    pub fn name(self) -> &'static str {
        match self {
            Kind::Tmsv => "tmsv",
            Kind::Tss => "tss",
            Kind::Tms => "tms",
        }
    }
}

/// Scenario fields as given by the user; squeeze fields must match the kind.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScenarioInput {
    pub kind: Kind,
    pub ns: f64,
    pub nb: f64,
    pub kappa: f64,
    pub m: u64,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub r: Option<f64>,
}

impl ScenarioInput {
    pub fn build(&self) -> Result<ScenarioParams> {
        let allowed: &[&str] = match self.kind {
            Kind::Tmsv => &[],
            Kind::Tss => &["r1", "r2"],
            Kind::Tms => &["r"],
        };
        for (name, value) in [("r1", self.r1), ("r2", self.r2), ("r", self.r)] {
            if value.is_some() && !allowed.contains(&name) {
                return Err(CliError::Usage(format!("`{name}` does not apply to kind `{}`", self.kind.name())));
            }
        }
        let scenario = match self.kind {
            Kind::Tmsv => Scenario::Tmsv,
            Kind::Tss => Scenario::Tss {
                r1: self.r1.unwrap_or(0.0),
                r2: self.r2.unwrap_or(0.0),
            },
            Kind::Tms => Scenario::Tms { r: self.r.unwrap_or(0.0) },
        };
        Ok(ScenarioParams::new(scenario, self.ns, self.nb, self.kappa, self.m)?)
    }
}

/// A quantity that can be evaluated at each grid point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantity {
    QbExact,
    QcExact,
    QbAsymptotic,
    Coherent,
    Gamma,
    AdvantageDb,
    LogNegativity,
    CriticalR1,
}

impl Quantity {
    pub const ALL_BOUNDS: [Quantity; 7] = [
        Quantity::QbExact,
        Quantity::QcExact,
        Quantity::QbAsymptotic,
        Quantity::Coherent,
        Quantity::Gamma,
        Quantity::AdvantageDb,
        Quantity::LogNegativity,
    ];

    pub fn columns(self) -> &'static [&'static str] {
        match self {
            Quantity::QbExact => &["qb_exact", "qb_exact_exponent"],
            Quantity::QcExact => &["qc_exact", "qc_exact_exponent", "qc_s"],
            Quantity::QbAsymptotic => &["qb_asymptotic", "qb_asymptotic_exponent"],
            Quantity::Coherent => &["coherent", "coherent_exponent"],
            Quantity::Gamma => &["gamma"],
            Quantity::AdvantageDb => &["advantage_db"],
            Quantity::LogNegativity => &["log_negativity"],
            Quantity::CriticalR1 => &["r1_star", "residual"],
        }
    }

    /// Values for [`Quantity::columns`]; `None` cells come with a warning.
    pub fn evaluate(self, p: &ScenarioParams) -> Result<(Vec<Option<f64>>, Option<String>)> {
        let some = |v: Vec<f64>| Ok((v.into_iter().map(Some).collect(), None));
        match self {
            Quantity::QbExact => {
                let b = qb_bound(&hypotheses(p)?, p.m)?;
                some(vec![b.value, b.total_exponent()])
            }
            Quantity::QcExact => {
                let b = qc_bound(&hypotheses(p)?, p.m)?;
                some(vec![b.value, b.total_exponent(), b.s_used])
            }
            Quantity::QbAsymptotic => {
                let b = qb_asymptotic(p)?;
                some(vec![b.value, b.total_exponent()])
            }
            Quantity::Coherent => {
                let (_, photons) = p.probe()?;
                let b = coherent_qb_bound(photons.signal, p.n_b, p.kappa, p.m)?;
                some(vec![b.value, b.total_exponent()])
            }
            Quantity::Gamma => some(vec![advantage(p)?]),
            Quantity::AdvantageDb => some(vec![10.0 * advantage(p)?.log10()]),
            Quantity::LogNegativity => some(vec![log_negativity(&p.probe()?.0)?]),
            Quantity::CriticalR1 => match critical_r1(p.n_s) {
                Ok(root) => {
                    let residual = (gamma1_at(p.n_s, root)?.gamma - 1.0).abs();
                    some(vec![root, residual])
                }
                Err(qillum::Error::NoRoot(msg)) => Ok((vec![None, None], Some(msg))),
                Err(e) => Err(e.into()),
            },
        }
    }
}

/// Closed-form advantage of the scenario's probe over coherent light.
pub fn advantage(p: &ScenarioParams) -> Result<f64> {
    let g = match p.scenario {
        Scenario::Tmsv => gamma1(p.n_s, 0.0)?,
        Scenario::Tss { r1, .. } => gamma1_at(p.n_s, r1)?,
        Scenario::Tms { r } => gamma2(p.n_s, r)?,
    };
    Ok(g.gamma)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Grid {
    Values(Vec<f64>),
    Range {
        start: f64,
        stop: f64,
        count: usize,
        spacing: Spacing,
    },
}

impl Grid {
    pub fn linear(start: f64, stop: f64, count: usize) -> Self {
        Grid::Range {
            start,
            stop,
            count,
            spacing: Spacing::Linear,
        }
    }

    pub fn log(start: f64, stop: f64, count: usize) -> Self {
        Grid::Range {
            start,
            stop,
            count,
            spacing: Spacing::Log,
        }
    }

    /// The grid points, checked to be finite and strictly monotone.
    pub fn points(&self) -> Result<Vec<f64>> {
        let pts = match *self {
            Grid::Values(ref v) => v.clone(),
            Grid::Range {
                start,
                stop,
                count,
                spacing,
            } => {
                if count < 2 {
                    return Err(CliError::Config(format!("`count` must be at least 2, got {count}")));
                }
                if spacing == Spacing::Log && !(start > 0.0 && stop > 0.0) {
                    return Err(CliError::Config("log grids need positive `start` and `stop`".into()));
                }
                let (a, b) = match spacing {
                    Spacing::Linear => (start, stop),
                    Spacing::Log => (start.ln(), stop.ln()),
                };
                let last = (count - 1) as f64;
                (0..count)
                    .map(|i| {
                        // hit both ends exactly
                        let x = if i + 1 == count { b } else { a + (b - a) * i as f64 / last };
                        match spacing {
                            Spacing::Linear => x,
                            Spacing::Log if i == 0 => start,
                            Spacing::Log if i + 1 == count => stop,
                            Spacing::Log => x.exp(),
                        }
                    })
                    .collect()
            }
        };
        if pts.len() < 2 {
            return Err(CliError::Config("a grid needs at least 2 points".into()));
        }
        if pts.iter().any(|x| !x.is_finite()) {
            return Err(CliError::Config("grid points must be finite".into()));
        }
        let up = pts.windows(2).all(|w| w[1] > w[0]);
        let down = pts.windows(2).all(|w| w[1] < w[0]);
        if !(up || down) {
            return Err(CliError::Config("grid must be strictly monotone".into()));
        }
        Ok(pts)
    }
}

/// One parameter varied over a grid, all others fixed by the template.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub template: ScenarioParams,
    pub axis: String,
    pub grid: Grid,
    pub outputs: Vec<Quantity>,
    pub parallel: bool,
}

impl SweepSpec {
    pub fn run(&self) -> Result<Table> {
        if self.outputs.is_empty() {
            return Err(CliError::Config("`outputs` must name at least one quantity".into()));
        }
        let points = self.grid.points()?;
        // Reject an unknown or inapplicable axis before any work.
        self.template.with_field(&self.axis, points[0])?;

        let eval = |x: &f64| -> Result<(Vec<String>, Vec<String>)> {
            let p = self.template.with_field(&self.axis, *x)?;
            let mut row = vec![format_number(*x)];
            let mut warnings = Vec::new();
            for q in &self.outputs {
                let (values, warning) = q.evaluate(&p)?;
                row.extend(values.into_iter().map(|v| v.map(format_number).unwrap_or_default()));
                if let Some(w) = warning {
                    warnings.push(format!("{} = {}: {w}", self.axis, format_number(*x)));
                }
            }
            Ok((row, warnings))
        };
        // Results keep grid order either way; the first failing point in
        // grid order is the one reported.
        let results: Vec<Result<(Vec<String>, Vec<String>)>> = if self.parallel {
            points.par_iter().map(eval).collect()
        } else {
            points.iter().map(eval).collect()
        };

        let mut table = Table {
            header: std::iter::once(self.axis.clone())
                .chain(self.outputs.iter().flat_map(|q| q.columns().iter().map(|c| c.to_string())))
                .collect(),
            ..Default::default()
        };
        for r in results {
            let (row, warnings) = r?;
            table.rows.push(row);
            table.warnings.extend(warnings);
        }
        Ok(table)
    }
}
