use super::{inner_moment_defect, mass_weighted, moment_exact, sort_dedup, Profile, TailRule};
use crate::error::{domain, Error, Result};
use crate::gauss::{first_moment, mass, QuadratureSpec};
use crate::roots::bisect;

/// Inner-moment tolerance used for membership in Θ.
pub const THETA_TOL: f64 = 1e-12;

/// Projects a profile onto Θ = {sign tails beyond `η*`, zero inner moment}.
///
/// First the tails are replaced by `sign(z)`. The remaining inner moment
/// `Δ' = ∫_{−η*}^{η*} zθγ₁` is then cancelled on the symmetric strip
/// `S = {η*/2 < |z| < t₀}`, where `θ` is set to `−sign(Δ')·sign(z)` and
/// `t₀` is the first point at which the strip has absorbed `|Δ'|`.
///
/// Returns the repaired profile and `‖θ − ξ‖₁`, which never exceeds the tail
/// defect plus `2Δ/η*`.
pub fn repair_to_theta(profile: &Profile, eta_star: f64, spec: &QuadratureSpec) -> Result<(Profile, f64)> {
    const OP: &str = "repair_to_theta";
    if !(eta_star > 0.0 && eta_star.is_finite()) {
        return Err(domain(OP, format!("eta_star must be positive, got {eta_star}")));
    }
    let eta = eta_star;
    let tail_cost = mass_weighted(profile, eta, f64::INFINITY, |v| 1.0 - v)
        + mass_weighted(profile, f64::NEG_INFINITY, -eta, |v| 1.0 + v);

    let delta_prime = moment_exact(profile, -eta, eta);
    let delta = delta_prime.abs();
    let s = if delta_prime >= 0.0 { 1.0 } else { -1.0 };

    // g(z) = z(sign z + sθ) ≥ 0 on the strip; G(t) = ∫_{η/2<|z|<t} g γ₁.
    let pieces = profile.pieces();
    let g_int = |t: f64| -> f64 {
        let mut acc = 0.0;
        for &(a, b, v) in &pieces {
            let (ra, rb) = (a.max(0.5 * eta), b.min(t));
            if rb > ra {
                acc += (1.0 + s * v) * first_moment(ra, rb);
            }
            let (la, lb) = (a.max(-t), b.min(-0.5 * eta));
            if lb > la {
                acc += (-1.0 + s * v) * first_moment(la, lb);
            }
        }
        acc
    };

    let mut extra = vec![-eta, eta];
    let mut strip: Option<f64> = None;
    if delta > 0.0 {
        let capacity = g_int(eta);
        if capacity < delta * (1.0 - 1e-12) {
            return Err(Error::Consistency(format!(
                "strip capacity {capacity:e} is below the inner moment defect {delta:e}"
            )));
        }
        let t0 = if capacity <= delta {
            eta
        } else {
            bisect(|t| g_int(t) - delta, 0.5 * eta, eta, 0.0)?
        };
        extra.extend([-t0, -0.5 * eta, 0.5 * eta, t0]);
        strip = Some(t0);
    }

    let mut bps: Vec<f64> = profile
        .breakpoints()
        .iter()
        .copied()
        .filter(|z| z.abs() < eta)
        .collect();
    bps.extend(extra);
    if profile.z_cut() < eta {
        bps.extend([-profile.z_cut(), profile.z_cut()]);
    }
    sort_dedup(&mut bps);
    let in_strip = |z: f64| matches!(strip, Some(t0) if z.abs() > 0.5 * eta && z.abs() < t0);
    let repaired = Profile::from_breakpoints_fn(bps, TailRule::SignTails, |z| {
        if in_strip(z) {
            -s * z.signum()
        } else {
            profile.eval(z)
        }
    })?;

    let mut inner_cost = 0.0;
    if let Some(t0) = strip {
        for &(a, b, v) in &pieces {
            let (ra, rb) = (a.max(0.5 * eta), b.min(t0));
            if rb > ra {
                inner_cost += (1.0 + s * v) * mass(ra, rb);
            }
            let (la, lb) = (a.max(-t0), b.min(-0.5 * eta));
            if lb > la {
                inner_cost += (1.0 - s * v) * mass(la, lb);
            }
        }
    }

    let residual = inner_moment_defect(&repaired, eta, spec)?;
    if residual > THETA_TOL {
        return Err(Error::Consistency(format!(
            "repaired profile has inner moment {residual:e}"
        )));
    }
    Ok((repaired, tail_cost + inner_cost))
}

/// Sign tails beyond `η*` (within `tol` in `L¹`) and inner moment at most `tol`.
pub fn is_theta_member(profile: &Profile, eta_star: f64, tol: f64, spec: &QuadratureSpec) -> Result<bool> {
    let tail = mass_weighted(profile, eta_star, f64::INFINITY, |v| 1.0 - v)
        + mass_weighted(profile, f64::NEG_INFINITY, -eta_star, |v| 1.0 + v);
    Ok(tail <= tol && inner_moment_defect(profile, eta_star, spec)? <= tol)
}
