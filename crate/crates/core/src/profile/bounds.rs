use super::Profile;
use crate::error::{domain, ensure_finite, Result};
use crate::gauss::QuadratureSpec;
use crate::reeds::ReedsParams;

/// Scalar inputs to the quantitative gap bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapInputs {
    /// `L¹` distance to Θ.
    pub d: f64,
    /// Inner moment defect `Δ`.
    pub delta: f64,
    /// `|α − α*|`.
    pub alpha_err: f64,
    /// Tail deficit mass `m = ∫_{|z|>η} δγ₁`.
    pub m: f64,
    /// Weighted tail deficit `J = ∫_{|z|>η}(|z| − η)δγ₁`.
    pub j: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapRegime {
    SmallDelta,
    LargeDelta,
}

impl GapInputs {
    pub fn new(d: f64, delta: f64, alpha_err: f64, m: f64, j: f64) -> Result<Self> {
        for (name, x) in [("d", d), ("delta", delta), ("alpha_err", alpha_err), ("m", m), ("J", j)] {
            ensure_finite("GapInputs", name, x)?;
            if x < 0.0 {
                return Err(domain("GapInputs", format!("{name} must be nonnegative, got {x}")));
            }
        }
        Ok(Self {
            d,
            delta,
            alpha_err,
            m,
            j,
        })
    }

    /// `Δ ≤ η* d/4` selects the small-defect bound, otherwise the large-defect one.
    pub fn regime(&self, eta_star: f64) -> GapRegime {
        if self.delta <= eta_star * self.d / 4.0 {
            GapRegime::SmallDelta
        } else {
            GapRegime::LargeDelta
        }
    }

    pub fn gap_lower_bound(&self, eta_star: f64, lambda: f64) -> Result<f64> {
        match self.regime(eta_star) {
            GapRegime::SmallDelta => gap_lower_small_delta(self.d, self.alpha_err),
            GapRegime::LargeDelta => gap_lower_large_delta(self.d, self.alpha_err, lambda),
        }
    }
}

fn check_common(op: &'static str, d: f64, alpha_err: f64) -> Result<()> {
    ensure_finite(op, "d", d)?;
    ensure_finite(op, "alpha_err", alpha_err)?;
    if d < 0.0 || alpha_err < 0.0 {
        return Err(domain(op, "d and alpha_err must be nonnegative"));
    }
    if alpha_err >= 0.01 {
        return Err(domain(op, format!("alpha_err must be < 0.01, got {alpha_err}")));
    }
    Ok(())
}

/// `(d − 2.6|α − α*|)²/32.7`, valid when `Δ ≤ η* d/4`.
pub fn gap_lower_small_delta(d: f64, alpha_err: f64) -> Result<f64> {
    const OP: &str = "gap_lower_small_delta";
    check_common(OP, d, alpha_err)?;
    let x = d - 2.6 * alpha_err;
    if !(x > 0.0) {
        return Err(domain(OP, format!("d - 2.6*alpha_err must be positive, got {x:e}")));
    }
    Ok(x * x / 32.7)
}

/// `min[d(λ/8 − |α − α*|), (0.98/8)(d(1 − 4|α − α*|)/8 − 6.4|α − α*|)²]`, valid when `Δ ≥ η* d/4`.
pub fn gap_lower_large_delta(d: f64, alpha_err: f64, lambda: f64) -> Result<f64> {
    const OP: &str = "gap_lower_large_delta";
    check_common(OP, d, alpha_err)?;
    ensure_finite(OP, "lambda", lambda)?;
    let first = lambda / 8.0 - alpha_err;
    let inner = d * (1.0 - 4.0 * alpha_err) / 8.0 - 6.4 * alpha_err;
    if !(inner > 0.0) || !(first > 0.0) {
        return Err(domain(
            OP,
            format!("bound degenerates: d/8(1-4a) - 6.4a = {inner:e}, lambda/8 - a = {first:e}"),
        ));
    }
    Ok((d * first).min(0.98 / 8.0 * inner * inner))
}

/// Tail deficits `(m, J)` of a profile at the parameters' `η`.
pub fn mj_tail_defects(profile: &Profile, params: &ReedsParams, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    let eta = params.eta();
    let delta = |z: f64, t: f64| 1.0 - t * z.signum();
    let m = profile.integrate(delta, eta, f64::INFINITY, &[], spec)?
        + profile.integrate(delta, f64::NEG_INFINITY, -eta, &[], spec)?;
    let w = |z: f64, t: f64| (z.abs() - eta) * delta(z, t);
    let j = profile.integrate(w, eta, f64::INFINITY, &[], spec)?
        + profile.integrate(w, f64::NEG_INFINITY, -eta, &[], spec)?;
    Ok((m, j))
}
