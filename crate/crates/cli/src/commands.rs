//! Subcommand implementations.

use std::fmt::Write as _;

use qillum::bounds::q_s;
use qillum::models::{hypotheses, Scenario, ScenarioParams};
use qillum::oracle::{
    covariance_of, helstrom_error_single_copy, oracle_hypotheses, q_s_numeric, OracleConfig, DEFAULT_ENV_DIM,
    DEFAULT_SIGNAL_DIM,
};

use crate::args::{BoundsArgs, CriticalFigArgs, GammaFigArgs, VerifyArgs};
use crate::config::SweepConfig;
use crate::error::{CliError, Result};
use crate::sweep::{Grid, Kind, Quantity, ScenarioInput, SweepSpec};
use crate::table::{format_number, Table};

pub fn bounds(args: &BoundsArgs) -> Result<Table> {
    let p = ScenarioInput {
        kind: args.kind,
        ns: args.ns,
        nb: args.nb,
        kappa: args.kappa,
        m: args.m,
        r1: args.r1,
        r2: args.r2,
        r: args.r,
    }
    .build()?;
    let (r1, r2, r) = match p.scenario {
        Scenario::Tmsv => (None, None, None),
        Scenario::Tss { r1, r2 } => (Some(r1), Some(r2), None),
        Scenario::Tms { r } => (None, None, Some(r)),
    };
    let opt = |x: Option<f64>| x.map(format_number).unwrap_or_default();
    let mut table = Table {
        header: ["kind", "ns", "nb", "kappa", "m", "r1", "r2", "r"].map(String::from).to_vec(),
        ..Default::default()
    };
    let mut row = vec![
        p.scenario.name().to_string(),
        format_number(p.n_s),
        format_number(p.n_b),
        format_number(p.kappa),
        p.m.to_string(),
        opt(r1),
        opt(r2),
        opt(r),
    ];
    for q in Quantity::ALL_BOUNDS {
        table.header.extend(q.columns().iter().map(|c| c.to_string()));
        let (values, warning) = q.evaluate(&p)?;
        row.extend(values.into_iter().map(|v| v.map(format_number).unwrap_or_default()));
        table.warnings.extend(warning);
    }
    table.rows.push(row);
    Ok(table)
}

/// Columns `gamma_ns=<N_S>` and `db_ns=<N_S>` for each requested `N_S`.
fn gamma_figure(args: &GammaFigArgs, template: ScenarioParams, axis: &str) -> Result<Table> {
    if args.ns.is_empty() {
        return Err(CliError::Usage("`--ns` needs at least one value".into()));
    }
    let mut tables = Vec::new();
    let mut suffixes = Vec::new();
    for &ns in &args.ns {
        let spec = SweepSpec {
            template: template.with_field("ns", ns)?,
            axis: axis.into(),
            grid: Grid::linear(args.start, args.stop, args.points),
            outputs: vec![Quantity::Gamma, Quantity::AdvantageDb],
            parallel: true,
        };
        let mut t = spec.run()?;
        t.header = vec![axis.into(), "gamma".into(), "db".into()];
        tables.push(t);
        suffixes.push(format!("_ns={ns}"));
    }
    Table::join(&tables, &suffixes)
}

// Γ depends on N_S and the squeezing only; N_B and κ are placeholders.
fn figure_template(kind: Kind) -> ScenarioParams {
    let p = match kind {
        Kind::Tss => ScenarioParams::tss(0.01, 1.0, 0.01, 0.0, 0.0, 1),
        Kind::Tms => ScenarioParams::tms(0.01, 1.0, 0.01, 0.0, 1),
        Kind::Tmsv => ScenarioParams::tmsv(0.01, 1.0, 0.01, 1),
    };
    p.expect("valid template")
}

pub fn fig1a(args: &GammaFigArgs) -> Result<Table> {
    gamma_figure(args, figure_template(Kind::Tss), "r1")
}

pub fn fig2(args: &GammaFigArgs) -> Result<Table> {
    gamma_figure(args, figure_template(Kind::Tms), "r")
}

pub fn fig1b(args: &CriticalFigArgs) -> Result<Table> {
    SweepSpec {
        template: figure_template(Kind::Tss),
        axis: "ns".into(),
        grid: Grid::log(args.start, args.stop, args.points),
        outputs: vec![Quantity::CriticalR1],
        parallel: true,
    }
    .run()
}

pub fn sweep(config: &SweepConfig) -> Result<Table> {
    config.spec()?.run()
}

/// Largest background the oracle accepts.
pub const ORACLE_MAX_BACKGROUND: f64 = 1.0;
pub const COVARIANCE_TOLERANCE: f64 = 1e-5;
pub const OVERLAP_TOLERANCE: f64 = 1e-3;

/// Outcome of [`verify_oracle`]: the printable report and the failure count.
#[derive(Debug, Clone)]
pub struct OracleReport {
    pub text: String,
    pub failures: usize,
}

fn oracle_config(dims: &[usize]) -> Result<OracleConfig> {
    let (s, i, e) = match *dims {
        [] => (DEFAULT_SIGNAL_DIM, DEFAULT_SIGNAL_DIM, DEFAULT_ENV_DIM),
        [d] => (d, d, DEFAULT_ENV_DIM),
        [s, i] => (s, i, DEFAULT_ENV_DIM),
        [s, i, e] => (s, i, e),
        _ => return Err(CliError::Usage("`--dims` takes one to three values".into())),
    };
    Ok(OracleConfig::with_dims(s, i, e))
}

pub fn verify_oracle(args: &VerifyArgs) -> Result<OracleReport> {
    if args.nb > ORACLE_MAX_BACKGROUND {
        return Err(CliError::Refused(format!(
            "N_B = {} is outside the oracle regime (N_B <= {ORACLE_MAX_BACKGROUND}): the thermal environment \
             would need far more Fock levels than a dense simulation can hold; large backgrounds are covered \
             by the exact-versus-asymptotic comparisons instead",
            args.nb
        )));
    }
    let config = oracle_config(&args.dims)?;
    let kinds = match args.kind {
        Some(k) => vec![k],
        None => vec![Kind::Tmsv, Kind::Tss, Kind::Tms],
    };
    let mut text = String::new();
    let mut failures = 0;
    let mut check = |text: &mut String, name: &str, detail: String, ok: bool| {
        if !ok {
            failures += 1;
        }
        let _ = writeln!(text, "  {name:<14} {detail} {}", if ok { "PASS" } else { "FAIL" });
    };
    for kind in kinds {
        let p = ScenarioInput {
            kind,
            ns: args.ns,
            nb: args.nb,
            kappa: args.kappa,
            m: 1,
            r1: (kind == Kind::Tss).then_some(args.r1),
            r2: (kind == Kind::Tss).then_some(args.r2),
            r: (kind == Kind::Tms).then_some(args.r),
        }
        .build()?;
        let _ = writeln!(
            text,
            "{p} dims {}/{}/{}",
            config.signal_dim, config.idler_dim, config.env_dim
        );
        let oracle = oracle_hypotheses(&p, &config)?;
        let pair = hypotheses(&p)?;
        check(
            &mut text,
            "truncation",
            format!("tail_mass={:.3e} tolerance={:.1e}", oracle.report.tail_mass, config.tail_tolerance),
            oracle.report.converged,
        );
        for (name, rho, v) in [("covariance_v0", &oracle.rho0, &pair.v0), ("covariance_v1", &oracle.rho1, &pair.v1)] {
            let residual = (covariance_of(rho)?.cov().entries() - v.entries()).amax();
            check(
                &mut text,
                name,
                format!("residual={residual:.3e} tolerance={COVARIANCE_TOLERANCE:.1e}"),
                residual <= COVARIANCE_TOLERANCE,
            );
        }
        let numeric = q_s_numeric(&oracle.rho0, &oracle.rho1, 0.5)?;
        let exact = q_s(&pair, 0.5)?.q_s;
        let rel = (numeric / exact - 1.0).abs();
        check(
            &mut text,
            "overlap_half",
            format!("oracle={numeric:.12} gaussian={exact:.12} relative={rel:.3e} tolerance={OVERLAP_TOLERANCE:.1e}"),
            rel <= OVERLAP_TOLERANCE,
        );
        let helstrom = helstrom_error_single_copy(&oracle.rho0, &oracle.rho1)?;
        check(
            &mut text,
            "helstrom",
            format!("error={helstrom:.6e} half_overlap={:.6e}", 0.5 * numeric),
            helstrom <= 0.5 * numeric,
        );
    }
    let _ = if failures == 0 {
        writeln!(text, "all checks passed")
    } else {
        writeln!(text, "{failures} check(s) failed")
    };
    Ok(OracleReport { text, failures })
}
