//! TOML configuration of the `sweep` command.
//!
//! ```toml
//! axis = "kappa"
//! outputs = ["qb_exact", "qb_asymptotic"]
//! start = 0.001          # or: values = [0.001, 0.002, ...]
//! stop = 0.01
//! count = 10
//! spacing = "linear"     # or "log"
//! parallel = true
//! out = "kappa.csv"      # optional, standard output otherwise
//!
//! [scenario]
//! kind = "tmsv"          # "tss" takes r1, r2; "tms" takes r
//! ns = 0.01
//! nb = 100.0
//! kappa = 0.01
//! m = 1000000
//! ```

use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::error::{CliError, Result};
use crate::sweep::{Grid, Kind, Quantity, ScenarioInput, Spacing, SweepSpec};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub axis: String,
    pub outputs: Vec<Quantity>,
    pub values: Option<Vec<f64>>,
    pub start: Option<f64>,
    pub stop: Option<f64>,
    pub count: Option<usize>,
    pub spacing: Option<Spacing>,
    #[serde(default = "default_parallel")]
    pub parallel: bool,
    pub out: Option<PathBuf>,
    pub scenario: ScenarioConfig,
}

fn default_parallel() -> bool {
    true
}

fn default_copies() -> u64 {
    1
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioConfig {
    pub kind: Kind,
    pub ns: f64,
    pub nb: f64,
    pub kappa: f64,
    #[serde(default = "default_copies")]
    pub m: u64,
    pub r1: Option<f64>,
    pub r2: Option<f64>,
    pub r: Option<f64>,
}

impl SweepConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| CliError::Config(format!("invalid sweep config: {}", e.message())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    pub fn grid(&self) -> Result<Grid> {
        match (&self.values, self.start, self.stop, self.count) {
            (Some(v), None, None, None) => {
                if self.spacing.is_some() {
                    return Err(CliError::Config("`spacing` applies to start/stop/count grids only".into()));
                }
                Ok(Grid::Values(v.clone()))
            }
            (None, Some(start), Some(stop), Some(count)) => Ok(Grid::Range {
                start,
                stop,
                count,
                spacing: self.spacing.unwrap_or_default(),
            }),
            (Some(_), ..) => Err(CliError::Config(
                "give either `values` or `start`/`stop`/`count`, not both".into(),
            )),
            _ => Err(CliError::Config(
                "grid needs `values` or all of `start`, `stop`, `count`".into(),
            )),
        }
    }

    pub fn spec(&self) -> Result<SweepSpec> {
        if self.outputs.is_empty() {
            return Err(CliError::Config("`outputs` must name at least one quantity".into()));
        }
        let s = &self.scenario;
        let template = ScenarioInput {
            kind: s.kind,
            ns: s.ns,
            nb: s.nb,
            kappa: s.kappa,
            m: s.m,
            r1: s.r1,
            r2: s.r2,
            r: s.r,
        }
        .build()
        .map_err(|e| CliError::Config(format!("[scenario]: {e}")))?;
        Ok(SweepSpec {
            template,
            axis: self.axis.clone(),
            grid: self.grid()?,
            outputs: self.outputs.clone(),
            parallel: self.parallel,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASE: &str = r#"
axis = "kappa"
outputs = ["qb_exact"]
start = 0.001
stop = 0.01
count = 4

[scenario]
kind = "tmsv"
ns = 0.01
nb = 100.0
kappa = 0.01
"#;

    #[test]
    fn parses_the_documented_layout() {
        let c = SweepConfig::parse(BASE).unwrap();
        let spec = c.spec().unwrap();
        assert_eq!(spec.template.m, 1);
        assert!(spec.parallel);
        assert_eq!(spec.grid.points().unwrap().len(), 4);
    }

    #[test]
    fn schema_errors_name_the_field() {
        let err = SweepConfig::parse(&BASE.replace("outputs", "output")).unwrap_err().to_string();
        assert!(err.contains("output"), "{err}");
        let err = SweepConfig::parse(&BASE.replace("\"qb_exact\"", "\"qb\"")).unwrap_err().to_string();
        assert!(err.contains("qb"), "{err}");
        let c = SweepConfig::parse(&BASE.replace("[\"qb_exact\"]", "[]")).unwrap();
        assert!(c.spec().unwrap_err().to_string().contains("outputs"));
        let c = SweepConfig::parse(&BASE.replace("kappa = 0.01\n", "kappa = 0.01\nr = 0.3\n")).unwrap();
        assert!(c.spec().unwrap_err().to_string().contains("`r`"));
        let c = SweepConfig::parse(&BASE.replace("count = 4", "")).unwrap();
        assert!(c.spec().unwrap_err().to_string().contains("count"));
    }
}
