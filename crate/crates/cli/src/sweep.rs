//! One-parameter sweeps written as CSV.

use std::str::FromStr;

use anyhow::{bail, Result};
use grolab_core::chain::{final_chain, kappa_eff, neighborhood_drop, p3_perturbation_bound, sign_stability, ChainParams, K0, KAPPA0, L0};
use grolab_core::profile::{lp_maximize, F_value_dual};
use grolab_core::reeds::{davie_reeds_bound, solve_eta_star, LAMBDA_STAR};
use grolab_core::{QuadratureSpec, ReedsParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    Lambda,
    Epsilon,
    Beta,
    Grid,
}

impl FromStr for SweepParam {
    type Err = anyhow::Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "lambda" => SweepParam::Lambda,
            "epsilon" => SweepParam::Epsilon,
            "beta" => SweepParam::Beta,
            "grid" => SweepParam::Grid,
            other => bail!("unknown sweep parameter {other:?} (expected lambda, epsilon, beta or grid)"),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepRange {
    pub lo: f64,
    pub hi: f64,
    pub steps: usize,
    pub log: bool,
}

impl SweepRange {
    pub fn new(lo: f64, hi: f64, steps: usize, log: bool) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            bail!("sweep range needs finite lo < hi, got ({lo}, {hi})");
        }
        if steps < 2 {
            bail!("sweep needs at least 2 steps, got {steps}");
        }
        if log && lo <= 0.0 {
            bail!("log-spaced sweep needs lo > 0, got {lo}");
        }
        Ok(Self { lo, hi, steps, log })
    }

    pub fn points(&self) -> Vec<f64> {
        let n = (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                let t = i as f64 / n;
                if i == self.steps - 1 {
                    self.hi
                } else if self.log {
                    (self.lo.ln() + t * (self.hi.ln() - self.lo.ln())).exp()
                } else {
                    self.lo + t * (self.hi - self.lo)
                }
            })
            .collect()
    }
}

fn field(x: grolab_core::Result<f64>) -> String {
    match x {
        Ok(v) if v.is_finite() => format!("{v:.16e}"),
        _ => String::new(),
    }
}

pub fn header(param: SweepParam) -> &'static str {
    match param {
        SweepParam::Lambda => "lambda,eta_star,alpha_star,bound_c",
        SweepParam::Epsilon => "epsilon,p3_perturbation,sign_stability,kappa_eff",
        SweepParam::Beta => "beta,neighborhood_drop,drop_over_beta,final_drop,kg_increment",
        SweepParam::Grid => "grid,lp_value,dual_value,lp_error",
    }
}

/// CSV with a header row and one LF-terminated row per grid point. Points where a quantity is undefined get an empty field.
pub fn sweep(param: SweepParam, range: &SweepRange, spec: &QuadratureSpec) -> Result<String> {
    let mut out = String::from(header(param));
    out.push('\n');
    let star = ReedsParams::reeds_point(LAMBDA_STAR)?;
    let dual = if param == SweepParam::Grid { Some(F_value_dual(&star, spec)?) } else { None };
    for x in range.points() {
        let row: Vec<String> = match param {
            SweepParam::Lambda => {
                let eta = solve_eta_star(x);
                vec![
                    field(Ok(x)),
                    field(eta.clone()),
                    field(eta.map(|e| x / e)),
                    field(davie_reeds_bound(x)),
                ]
            }
            SweepParam::Epsilon => vec![
                field(Ok(x)),
                field(p3_perturbation_bound(x)),
                field(sign_stability(x, L0, LAMBDA_STAR)),
                field(kappa_eff(x, KAPPA0, K0, L0, LAMBDA_STAR)),
            ],
            SweepParam::Beta => {
                let drop = ChainParams::standard(x).and_then(|p| neighborhood_drop(&p));
                let chain = final_chain(x);
                vec![
                    field(Ok(x)),
                    field(drop.clone()),
                    field(drop.map(|d| d / x)),
                    field(chain.clone().map(|c| c.final_drop)),
                    chain.ok().and_then(|c| c.kg_increment).map(|v| format!("{v:.16e}")).unwrap_or_default(),
                ]
            }
            SweepParam::Grid => {
                let n = x.round() as usize;
                let lp = lp_maximize(&star, n.max(2), spec).map(|r| r.1);
                let d = dual.unwrap_or(f64::NAN);
                vec![format!("{}", n.max(2)), field(lp.clone()), field(Ok(d)), field(lp.map(|v| d - v))]
            }
        };
        out.push_str(&row.join(","));
        out.push('\n');
    }
    Ok(out)
}
