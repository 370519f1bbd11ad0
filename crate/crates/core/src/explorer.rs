//! Norms of `R_λ` and `R_{λ,β}` on functions whose law given `Z = P₁f/α` is a
//! biased coin with mean `θ(Z)`.
//!
//! For such `f`, `R_{λ,β}f = αZ − λf − βc₃H₃(Z)` with `c₃ = ∫θH₃γ₁/6`, so
//! `‖R_{λ,β}f‖₁ = ∫γ₁(p|αz − λ − βc₃H₃| + q|αz + λ − βc₃H₃|)` with
//! `p = (1 + θ)/2`, `q = (1 − θ)/2`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{domain, ensure_finite, Result};
use crate::gauss::{h3, h3_tail_integral, QuadratureSpec};
use crate::profile::{ensure_feasible, moment, Profile, TailRule, V_value};
use crate::reeds::ReedsParams;
use crate::roots::scan_roots;

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalNormInput {
    pub profile: Profile,
    pub params: ReedsParams,
    pub beta: f64,
}

impl ConditionalNormInput {
    pub fn new(profile: Profile, params: ReedsParams, beta: f64) -> Result<Self> {
        ensure_finite("ConditionalNormInput", "beta", beta)?;
        if beta < 0.0 {
            return Err(domain("ConditionalNormInput", format!("beta must be nonnegative, got {beta}")));
        }
        Ok(Self { profile, params, beta })
    }
}

/// `c₃ = ∫θH₃γ₁/6`.
pub fn third_chaos_coefficient(profile: &Profile, spec: &QuadratureSpec) -> Result<f64> {
    let zc = profile.z_cut();
    Ok(profile.integrate(|z, t| t * h3(z), f64::NEG_INFINITY, f64::INFINITY, &[-zc, zc], spec)? / 6.0)
}

/// `‖R_λ g‖₁ = λ(2Φ(η) − 1) + 2αγ₁(η) + ∫θBγ₁`.
pub fn r_lambda_norm_1d(input: &ConditionalNormInput, spec: &QuadratureSpec) -> Result<f64> {
    if input.beta != 0.0 {
        return Err(domain("r_lambda_norm_1d", "beta must be 0; use r_lambda_beta_norm_1d"));
    }
    ensure_feasible("r_lambda_norm_1d", &input.profile, &input.params, spec)?;
    V_value(&input.profile, &input.params, spec)
}

fn two_point_norm(profile: &Profile, params: &ReedsParams, beta: f64, c3: f64, spec: &QuadratureSpec) -> Result<f64> {
    let (l, a) = (params.lambda(), params.alpha());
    let k = beta * c3;
    let minus = |z: f64| a * z - l - k * h3(z);
    let plus = |z: f64| a * z + l - k * h3(z);
    let t = spec.truncation;
    let mut kinks = scan_roots(minus, -t, t, 4096);
    kinks.extend(scan_roots(plus, -t, t, 4096));
    let zc = profile.z_cut();
    kinks.extend([-zc, zc]);
    profile.integrate(
        |z, th| 0.5 * (1.0 + th) * minus(z).abs() + 0.5 * (1.0 - th) * plus(z).abs(),
        f64::NEG_INFINITY,
        f64::INFINITY,
        &kinks,
        spec,
    )
}

/// `‖R_{λ,β}f‖₁` for the two-point conditional model.
pub fn r_lambda_beta_norm_1d(input: &ConditionalNormInput, spec: &QuadratureSpec) -> Result<f64> {
    ensure_feasible("r_lambda_beta_norm_1d", &input.profile, &input.params, spec)?;
    let c3 = third_chaos_coefficient(&input.profile, spec)?;
    two_point_norm(&input.profile, &input.params, input.beta, c3, spec)
}

/// `(β, (‖R_λθ‖₁ − ‖R_{λ,β}θ‖₁)/β)` for each `β`.
pub fn beta_derivative_scan(
    profile: &Profile,
    params: &ReedsParams,
    betas: &[f64],
    spec: &QuadratureSpec,
) -> Result<Vec<(f64, f64)>> {
    ensure_feasible("beta_derivative_scan", profile, params, spec)?;
    if betas.iter().any(|b| !(b.is_finite() && *b > 0.0)) {
        return Err(domain("beta_derivative_scan", "betas must be positive and finite"));
    }
    let c3 = third_chaos_coefficient(profile, spec)?;
    let base = two_point_norm(profile, params, 0.0, c3, spec)?;
    betas
        .iter()
        .map(|&b| Ok((b, (base - two_point_norm(profile, params, b, c3, spec)?) / b)))
        .collect()
}

/// Neville extrapolation of `(x, y)` samples to `x = 0`.
pub fn richardson_limit(points: &[(f64, f64)]) -> f64 {
    let n = points.len();
    if n == 0 {
        return f64::NAN;
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0).collect();
    let mut p: Vec<f64> = points.iter().map(|p| p.1).collect();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i + m] * p[i] - xs[i] * p[i + 1]) / (xs[i + m] - xs[i]);
        }
    }
    p[0]
}

/// `(B² − A²)/6` with `A = ∫_{−η}^{η} H₃θγ₁` by quadrature and `B = 2∫_η^∞ H₃γ₁`.
pub fn derivative_oracle(profile: &Profile, params: &ReedsParams, spec: &QuadratureSpec) -> Result<f64> {
    let eta = params.eta();
    let a = profile.integrate(|z, t| t * h3(z), -eta, eta, &[], spec)?;
    let b = h3_tail_integral(eta)?;
    Ok((b * b - a * a) / 6.0)
}

/// One row of the β-scan CSV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub beta: f64,
    pub norm_drop: f64,
    pub drop_over_beta: f64,
    pub derivative_limit_estimate: f64,
}

pub fn scan_rows(scan: &[(f64, f64)]) -> Vec<ScanRow> {
    let limit = richardson_limit(scan);
    scan.iter()
        .map(|&(beta, q)| ScanRow {
            beta,
            norm_drop: q * beta,
            drop_over_beta: q,
            derivative_limit_estimate: limit,
        })
        .collect()
}

pub fn scan_csv(rows: &[ScanRow]) -> String {
    let mut out = String::from("beta,norm_drop,drop_over_beta,derivative_limit_estimate\n");
    for r in rows {
        out.push_str(&format!(
            "{:.16e},{:.16e},{:.16e},{:.16e}\n",
            r.beta, r.norm_drop, r.drop_over_beta, r.derivative_limit_estimate
        ));
    }
    out
}

/// Value of `‖R_λ·‖₁` for a profile at its own moment `α`, flipping the sign
/// when `α < 0` (which leaves the norm unchanged).
pub fn own_moment_norm(profile: &Profile, lambda: f64, spec: &QuadratureSpec) -> Result<(Profile, f64, f64)> {
    let m = moment(profile, spec)?;
    let (p, alpha) = if m < 0.0 { (profile.negated(), -m) } else { (profile.clone(), m) };
    if alpha < 1e-14 {
        return Err(domain("sign_ascent", "profile has zero moment; the ascent direction is undefined"));
    }
    let params = ReedsParams::new(lambda, alpha)?;
    let v = V_value(&p, &params, spec)?;
    Ok((p, alpha, v))
}

/// Alternating maximization `g ↦ sign(R_λ g)` on conditional profiles.
///
/// With `α` the current moment and `η = λ/α`, the new profile is `sign(z)`
/// for `|z| > η` and `−θ(z)` inside. The returned sequence starts with the
/// value of `initial` and has one entry per iteration.
pub fn sign_ascent(
    initial: &Profile,
    params: &ReedsParams,
    iterations: usize,
    spec: &QuadratureSpec,
) -> Result<(Profile, Vec<f64>)> {
    if iterations == 0 {
        return Err(domain("sign_ascent", "iterations must be >= 1"));
    }
    let lambda = params.lambda();
    let (mut current, mut alpha, v0) = own_moment_norm(initial, lambda, spec)?;
    let mut values = vec![v0];
    for _ in 0..iterations {
        let eta = lambda / alpha;
        let zc = current.z_cut().max(eta);
        let mut bps: Vec<f64> = current.breakpoints().to_vec();
        bps.extend([-eta, eta, -zc, zc]);
        bps.retain(|z| z.abs() <= zc);
        bps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        bps.dedup();
        let prev = current.clone();
        let next = Profile::from_breakpoints_fn(bps, TailRule::SignTails, |z| {
            if z.abs() > eta {
                z.signum()
            } else {
                -prev.eval(z)
            }
        })?;
        let (p, a, v) = own_moment_norm(&next, lambda, spec)?;
        current = p;
        alpha = a;
        values.push(v);
    }
    Ok((current, values))
}

/// Monte Carlo configuration. Samples are drawn in fixed chunks, each from its own ChaCha8 stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct McConfig {
    pub dimension: usize,
    pub samples: usize,
    pub seed: u64,
}

const MC_CHUNK: usize = 65_536;

/// `(estimate, standard error)` of `‖R_{λ,β}f‖₁` for `f` a `θ(Z)`-biased coin.
///
/// In dimension 2, `Z = ⟨X, u⟩` for a fixed unit vector `u` not aligned with an axis.
pub fn mc_norm_estimate(profile: &Profile, config: &McConfig, params: &ReedsParams, beta: f64) -> Result<(f64, f64)> {
    const OP: &str = "mc_norm_estimate";
    if !(config.dimension == 1 || config.dimension == 2) {
        return Err(domain(OP, format!("dimension must be 1 or 2, got {}", config.dimension)));
    }
    if config.samples < 10_000 {
        return Err(domain(OP, format!("samples must be >= 10000, got {}", config.samples)));
    }
    ensure_finite(OP, "beta", beta)?;
    let c3 = third_chaos_coefficient(profile, &QuadratureSpec::default())?;
    let (l, a, k) = (params.lambda(), params.alpha(), beta * c3);
    let (u1, u2) = (0.6f64, 0.8f64);

    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    let mut remaining = config.samples;
    let mut stream = 0u64;
    while remaining > 0 {
        let n = remaining.min(MC_CHUNK);
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(stream);
        let (mut s, mut s2) = (0.0, 0.0);
        for _ in 0..n {
            let z = if config.dimension == 1 {
                rng.sample::<f64, _>(StandardNormal)
            } else {
                let x1: f64 = rng.sample(StandardNormal);
                let x2: f64 = rng.sample(StandardNormal);
                u1 * x1 + u2 * x2
            };
            let coin: f64 = rng.random();
            let f = if coin < 0.5 * (1.0 + profile.eval(z)) { 1.0 } else { -1.0 };
            let v = (a * z - l * f - k * h3(z)).abs();
            s += v;
            s2 += v * v;
        }
        sum += s;
        sum_sq += s2;
        remaining -= n;
        stream += 1;
    }
    let n = config.samples as f64;
    let mean = sum / n;
    let var = ((sum_sq / n - mean * mean) * n / (n - 1.0)).max(0.0);
    Ok((mean, (var / n).sqrt()))
}
