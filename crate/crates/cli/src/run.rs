//! Command dispatch: turns a [`RunConfig`] into checks and auxiliary outputs.

use std::fs;

use anyhow::{Context, Result};
use grolab_core::certify::certified_chain;
use grolab_core::chain::{final_chain, kappa_eff, neighborhood_drop, ChainParams, DROP_NEAR_COEFF, K0, KAPPA0, L0};
use grolab_core::explorer::{beta_derivative_scan, scan_csv, scan_rows};
use grolab_core::profile::{gap_certificate, lp_maximize, moment, V_value};
use grolab_core::reeds::LAMBDA_STAR;
use grolab_core::{Profile, ReedsParams};

use crate::config::{Command, RunConfig};
use crate::report::{Check, VerificationOutcome};
use crate::suites::{self, SuiteContext, CRITERIA};

/// Everything a command produces besides its checks.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RunOutput {
    pub outcome: VerificationOutcome,
    /// The chain report JSON (`chain` only).
    pub chain_json: Option<String>,
    /// The β-scan CSV (`explore` only).
    pub csv: Option<String>,
    /// The optimizer's profile in text form (`profile` only).
    pub profile_text: Option<String>,
}

fn collect(result: Result<Vec<Check>>, label: &str) -> Vec<Check> {
    result.unwrap_or_else(|e| vec![Check::error(label, format!("{e:#}"))])
}

fn tagged(n: u8, ctx: &SuiteContext) -> Vec<Check> {
    suites::criterion(n, ctx)
        .into_iter()
        .map(|mut c| {
            c.name = format!("[{n}] {}", c.name);
            c
        })
        .collect()
}

pub fn run(config: &RunConfig) -> Result<RunOutput> {
    let ctx = SuiteContext { spec: config.quadrature, seed: config.seed };
    let mut out = RunOutput::default();
    let checks: Vec<Check> = match config.command {
        Command::Constants => [1, 2, 3].iter().flat_map(|&n| tagged(n, &ctx)).collect(),
        Command::Baseline => [1, 2, 5].iter().flat_map(|&n| tagged(n, &ctx)).collect(),
        Command::Pairing => tagged(3, &ctx),
        Command::Profile => profile_command(config, &ctx, &mut out),
        Command::Chain => chain_command(config, &mut out),
        Command::Explore => {
            let mut checks = tagged(9, &ctx);
            checks.extend(collect(explore_csv(config, &mut out), "beta scan CSV"));
            checks
        }
        Command::VerifyAll => CRITERIA.iter().flat_map(|&(n, _)| tagged(n, &ctx)).collect(),
    };
    out.outcome = VerificationOutcome::new(checks);
    Ok(out)
}

fn profile_command(config: &RunConfig, ctx: &SuiteContext, out: &mut RunOutput) -> Vec<Check> {
    let mut checks = collect(suites::dual_certificate(ctx, config.grid), "dual certificate");
    let spec = &config.quadrature;
    let lp = ReedsParams::reeds_point(LAMBDA_STAR)
        .map_err(anyhow::Error::from)
        .and_then(|p| Ok(lp_maximize(&p, config.grid, spec)?));
    match lp {
        Ok((prof, _)) => out.profile_text = Some(prof.to_text()),
        Err(e) => checks.push(Check::error("lp_maximize", e)),
    }
    if let Some(path) = &config.profile_in {
        checks.extend(collect(loaded_profile_checks(path, config), "profile input"));
    }
    checks
}

fn loaded_profile_checks(path: &std::path::Path, config: &RunConfig) -> Result<Vec<Check>> {
    let spec = &config.quadrature;
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let prof = Profile::from_text(&text)?;
    let alpha = moment(&prof, spec)?;
    let params = ReedsParams::new(LAMBDA_STAR, alpha)?;
    let v = V_value(&prof, &params, spec)?;
    let g = gap_certificate(&prof, &params, spec)?;
    Ok(vec![
        Check::within("input profile: (D - V) - tail_integral", 0.0, g.gap - g.tail_integral, 1e-10),
        Check::at_most("input profile: V - D(-alpha)", 1e-12, v - g.dual_d),
    ])
}

fn chain_command(config: &RunConfig, out: &mut RunOutput) -> Vec<Check> {
    let beta = config.beta;
    let mut checks = collect(
        (|| {
            let k = kappa_eff(config.epsilon, KAPPA0, K0, L0, LAMBDA_STAR)?;
            let params = ChainParams::new(ChainParams { epsilon: config.epsilon, ..ChainParams::standard(beta)? })?;
            let drop = neighborhood_drop(&params)?;
            Ok(vec![
                Check::at_least(format!("kappa_eff({:e})", config.epsilon), 0.0058, k),
                Check::at_least(format!("neighborhood_drop/beta at beta={beta:e}"), DROP_NEAR_COEFF, drop / beta),
            ])
        })(),
        "neighbourhood drop",
    );
    if config.certified {
        match certified_chain(beta) {
            Ok(c) => {
                let fmt = |i: &grolab_core::interval::Interval| format!("[{:e}, {:e}]", i.lo(), i.hi());
                checks.push(Check::at_least(
                    format!("certified neighborhood_drop/beta in {}", fmt(&c.near_drop_ratio)),
                    DROP_NEAR_COEFF,
                    if c.near_drop_ratio.lo() > DROP_NEAR_COEFF { c.near_drop_ratio.lo() } else { f64::NAN },
                ));
                checks.push(Check::at_least(format!("certified final_drop in {}", fmt(&c.final_drop)), f64::MIN_POSITIVE, c.final_drop.lo()));
                checks.push(Check::at_least(format!("certified kg_increment in {}", fmt(&c.kg_increment)), 1e-26, c.kg_increment.lo()));
                out.chain_json = Some(c.report.to_json());
            }
            Err(e) => checks.push(Check::error("certified chain", e)),
        }
    } else {
        match final_chain(beta) {
            Ok(r) => {
                checks.push(Check::at_least("final_drop", f64::MIN_POSITIVE, r.final_drop));
                checks.push(Check::at_least("kg_increment vs 1e-26", 1e-26, r.kg_increment.unwrap_or(f64::NAN)));
                out.chain_json = Some(r.to_json());
            }
            Err(e) => checks.push(Check::error("final chain", e)),
        }
    }
    if beta == 8e-25 {
        checks.extend(collect(suites::final_chain_checks(beta), "final chain"));
    }
    checks
}

fn explore_csv(config: &RunConfig, out: &mut RunOutput) -> Result<Vec<Check>> {
    let p = ReedsParams::reeds_point(LAMBDA_STAR)?;
    let member = Profile::with_inner(p.eta(), vec![0.0])?;
    let betas: Vec<f64> = (0..8).map(|k| 1e-2 / 2f64.powi(k)).collect();
    let rows = scan_rows(&beta_derivative_scan(&member, &p, &betas, &config.quadrature)?);
    out.csv = Some(scan_csv(&rows));
    Ok(vec![])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_command_default() {
        let out = run(&RunConfig::new(Command::Chain)).unwrap();
        assert!(out.outcome.overall, "{:?}", out.outcome);
        let json = out.chain_json.unwrap();
        assert!(json.starts_with("{\"kappa_eff\": "));
        assert!(json.contains("\"certified\": false"));
    }

    #[test]
    fn certified_chain_command() {
        let mut c = RunConfig::new(Command::Chain);
        c.certified = true;
        let out = run(&c).unwrap();
        assert!(out.outcome.overall, "{:?}", out.outcome);
        assert!(out.chain_json.unwrap().contains("\"certified\": true"));
    }

    #[test]
    fn chain_without_drop_fails() {
        let mut c = RunConfig::new(Command::Chain);
        c.beta = 4e-24;
        let out = run(&c).unwrap();
        assert!(!out.outcome.overall);
        assert!(out.chain_json.unwrap().contains("\"kg_increment\": null"));
    }

    #[test]
    fn constants_command() {
        let out = run(&RunConfig::new(Command::Constants)).unwrap();
        assert!(out.outcome.overall);
        let c = out.outcome.checks.iter().find(|c| c.name.contains("davie_reeds_bound")).unwrap();
        assert!((c.actual - 1.676_956_674_215_576).abs() < 1e-12);
    }
}
