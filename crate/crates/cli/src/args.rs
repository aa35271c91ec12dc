use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::sweep::Kind;

#[derive(Debug, Parser)]
#[command(name = "qillum", version, about = "Error-probability bounds for squeezed-probe quantum illumination")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Exact and asymptotic bounds at one parameter point, as one CSV row.
    Bounds(BoundsArgs),
    /// Advantage Γ1 of locally squeezed probes against r1.
    Fig1a(GammaFigArgs),
    /// Critical local squeeze r1* against N_S.
    Fig1b(CriticalFigArgs),
    /// Advantage Γ2 of two-mode squeezed probes against r.
    Fig2(GammaFigArgs),
    /// Sweep one parameter as described by a TOML config.
    Sweep(SweepArgs),
    /// Compare the Gaussian formulas with a truncated Fock-space simulation.
    VerifyOracle(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct BoundsArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Mean signal photon number of the undisplaced TMSV.
    #[arg(long)]
    pub ns: f64,
    /// Mean background photon number.
    #[arg(long)]
    pub nb: f64,
    /// Target reflectivity.
    #[arg(long)]
    pub kappa: f64,
    /// Number of probe copies.
    #[arg(long, default_value_t = 1)]
    pub m: u64,
    #[arg(long)]
    pub r1: Option<f64>,
    #[arg(long)]
    pub r2: Option<f64>,
    #[arg(long)]
    pub r: Option<f64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GammaFigArgs {
    /// Signal photon numbers, one column pair each.
    #[arg(long, value_delimiter = ',', default_values_t = [0.01, 0.1, 1.0])]
    pub ns: Vec<f64>,
    #[arg(long, default_value_t = 0.0)]
    pub start: f64,
    #[arg(long, default_value_t = 3.0)]
    pub stop: f64,
    #[arg(long, default_value_t = 301)]
    pub points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CriticalFigArgs {
    /// Log-spaced N_S grid.
    #[arg(long, default_value_t = 0.01)]
    pub start: f64,
    #[arg(long, default_value_t = 1.0)]
    pub stop: f64,
    #[arg(long, default_value_t = 101)]
    pub points: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    pub config: PathBuf,
    /// Overrides `out` in the config.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Scenario to check; all three when omitted.
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    #[arg(long, default_value_t = 0.1)]
    pub ns: f64,
    #[arg(long, default_value_t = 0.2)]
    pub nb: f64,
    #[arg(long, default_value_t = 0.1)]
    pub kappa: f64,
    #[arg(long, default_value_t = 0.1)]
    pub r1: f64,
    #[arg(long, default_value_t = 0.1)]
    pub r2: f64,
    #[arg(long, default_value_t = 0.1)]
    pub r: f64,
    /// Truncation dimensions: `S=I`, `S,I` or `S,I,env`.
    #[arg(long, value_delimiter = ',', num_args = 1..=3)]
    pub dims: Vec<usize>,
}
