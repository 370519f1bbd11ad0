//! The Davie–Reeds baseline.
//!
//! For `λ ∈ (0, 1)` the Reeds point `η*(λ)` is the root in `(0, 1)` of
//! `√(2/π)·η·e^{−η²/2} = λ`, and `α*(λ) = λ/η* = 2γ₁(η*)`. The ratio
//! `(1 − λ)/((λ/η)² + λ(1 − 4Φ(−η)))` is a lower bound for `K_G`.

use crate::error::{domain, ensure_finite, Result};
use crate::gauss::{cdf, half_mass, pdf, SQRT_2_OVER_PI};
use crate::roots::{bisect, golden_section_max};

/// The working value of `λ*` used for every constant downstream.
pub const LAMBDA_STAR: f64 = 0.197_479_091;

/// The optimizer of the baseline ratio, to double precision.
pub const LAMBDA_OPT: f64 = 0.197_479_090_994_981_96;

/// The largest `λ` for which the Reeds equation has a root in `(0, 1)`: `√(2/π)·e^{−1/2}`.
pub fn lambda_max() -> f64 {
    SQRT_2_OVER_PI * (-0.5f64).exp()
}

/// Operator parameters `(λ, α)`. `η = λ/α` is derived, never stored.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReedsParams {
    lambda: f64,
    alpha: f64,
}

impl ReedsParams {
    pub fn new(lambda: f64, alpha: f64) -> Result<Self> {
        ensure_finite("ReedsParams", "lambda", lambda)?;
        ensure_finite("ReedsParams", "alpha", alpha)?;
        if !(lambda > 0.0 && lambda < 1.0) {
            return Err(domain("ReedsParams", format!("lambda must lie in (0, 1), got {lambda}")));
        }
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(domain("ReedsParams", format!("alpha must lie in (0, 1), got {alpha}")));
        }
        Ok(Self { lambda, alpha })
    }

    /// The Reeds point `(λ, α*(λ))`.
    pub fn reeds_point(lambda: f64) -> Result<Self> {
        let eta = solve_eta_star(lambda)?;
        Self::new(lambda, lambda / eta)
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn eta(&self) -> f64 {
        self.lambda / self.alpha
    }

    pub fn with_alpha(&self, alpha: f64) -> Result<Self> {
        Self::new(self.lambda, alpha)
    }
}

/// Summary of the baseline bound at a given `λ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineReport {
    pub lambda_star: f64,
    pub eta_star: f64,
    pub alpha_star: f64,
    pub denominator: f64,
    pub bound_c: f64,
}

pub fn baseline(lambda: f64) -> Result<BaselineReport> {
    let eta = solve_eta_star(lambda)?;
    let denominator = denominator_at(lambda, eta);
    Ok(BaselineReport {
        lambda_star: lambda,
        eta_star: eta,
        alpha_star: lambda / eta,
        denominator,
        bound_c: (1.0 - lambda) / denominator,
    })
}

fn reeds_lhs(eta: f64) -> f64 {
    SQRT_2_OVER_PI * eta * (-0.5 * eta * eta).exp()
}

/// Root `η ∈ (0, 1)` of `√(2/π)·η·e^{−η²/2} = λ`.
pub fn solve_eta_star(lambda: f64) -> Result<f64> {
    const OP: &str = "solve_eta_star";
    ensure_finite(OP, "lambda", lambda)?;
    let lmax = lambda_max();
    if !(lambda > 0.0 && lambda < lmax) {
        return Err(domain(OP, format!("lambda must lie in (0, {lmax}), got {lambda}")));
    }
    let g = |eta: f64| reeds_lhs(eta) - lambda;
    let eta = bisect(g, 0.0, 1.0, 0.0)?;
    // One Newton step; the derivative √(2/π)(1 − η²)e^{−η²/2} is bounded away from 0 for η < 1.
    let d = SQRT_2_OVER_PI * (1.0 - eta * eta) * (-0.5 * eta * eta).exp();
    let polished = eta - g(eta) / d;
    if polished > 0.0 && polished < 1.0 && g(polished).abs() <= g(eta).abs() {
        Ok(polished)
    } else {
        Ok(eta)
    }
}

fn denominator_at(lambda: f64, eta: f64) -> f64 {
    let a = lambda / eta;
    a * a + lambda * (1.0 - 4.0 * cdf(-eta))
}

/// `(λ/η)² + λ(1 − 4Φ(−η))` at `η = η*(λ)`.
pub fn reeds_denominator(lambda: f64) -> Result<f64> {
    let eta = solve_eta_star(lambda)?;
    Ok(denominator_at(lambda, eta))
}

/// `(1 − λ)/reeds_denominator(λ)`.
pub fn davie_reeds_bound(lambda: f64) -> Result<f64> {
    Ok((1.0 - lambda) / reeds_denominator(lambda)?)
}

/// Maximizer of [`davie_reeds_bound`] on `(0, 0.4)`.
///
/// Golden-section search locates the peak; the polish solves the stationarity
/// condition exactly. By the envelope theorem the denominator has
/// `dD/dλ = 1 − 4Φ(−η*)`, so the bound is stationary where
/// `α*² + 1 − 4Φ(−η*) = 0`, i.e. `4γ₁(η)² + 1 − 4Φ(−η) = 0` in `η`, then `λ = 2ηγ₁(η)`.
pub fn optimize_lambda() -> f64 {
    let coarse = golden_section_max(|l| davie_reeds_bound(l).unwrap_or(f64::NEG_INFINITY), 1e-6, 0.4, 1e-7);
    let eta_coarse = solve_eta_star(coarse).unwrap_or(0.25);
    let stationarity = |eta: f64| {
        let a = 2.0 * pdf(eta);
        a * a + 1.0 - 4.0 * cdf(-eta)
    };
    let lo = (eta_coarse - 0.01).max(1e-3);
    let hi = (eta_coarse + 0.01).min(0.999);
    match bisect(stationarity, lo, hi, 0.0) {
        Ok(eta) => 2.0 * eta * pdf(eta),
        Err(_) => coarse,
    }
}

fn check_positive(op: &'static str, alpha: f64, lambda: f64) -> Result<()> {
    ensure_finite(op, "alpha", alpha)?;
    ensure_finite(op, "lambda", lambda)?;
    if !(alpha > 0.0 && lambda > 0.0) {
        return Err(domain(op, format!("alpha and lambda must be positive, got ({alpha}, {lambda})")));
    }
    Ok(())
}

/// `F(α) = 4λγ₁([0, λ/α]) − α² + 4αγ₁(λ/α) − λ`.
#[allow(non_snake_case)]
pub fn F_value(alpha: f64, lambda: f64) -> Result<f64> {
    check_positive("F_value", alpha, lambda)?;
    Ok(f_value_unchecked(alpha, lambda))
}

pub(crate) fn f_value_unchecked(alpha: f64, lambda: f64) -> f64 {
    let eta = lambda / alpha;
    4.0 * lambda * half_mass(eta) - alpha * alpha + 4.0 * alpha * pdf(eta) - lambda
}

/// `(F′(α), F″(α))` in closed form.
#[allow(non_snake_case)]
pub fn F_derivatives(alpha: f64, lambda: f64) -> Result<(f64, f64)> {
    check_positive("F_derivatives", alpha, lambda)?;
    let g = pdf(lambda / alpha);
    let d1 = 4.0 * g - 2.0 * alpha;
    let d2 = 4.0 * lambda * lambda * g / (alpha * alpha * alpha) - 2.0;
    Ok((d1, d2))
}

/// The bathtub threshold: the `h > 0` with `√(2/π)(2e^{−h²/2} − 1) = α`.
pub fn solve_h(alpha: f64) -> Result<f64> {
    ensure_finite("solve_h", "alpha", alpha)?;
    if !(alpha > 0.0 && alpha < SQRT_2_OVER_PI) {
        return Err(domain("solve_h", format!("alpha must lie in (0, sqrt(2/pi)), got {alpha}")));
    }
    let e = (alpha / SQRT_2_OVER_PI + 1.0) / 2.0;
    Ok((-2.0 * e.ln()).sqrt())
}
