//! Third-chaos pairing constants at the Reeds point.
//!
//! With `B = 2∫_η^∞ H₃γ₁` and `A_max = η²(γ₁(0) − γ₁(η))`, the zonal pairing
//! constant is `κ_Q = (B² − A_max²)/6`. The transverse loss is bounded by
//! `p² + s₁² + t₂²/2`.

use crate::error::{domain, ensure_finite, Error, Result};
use crate::gauss::{h3, h3_tail_integral, half_mass, pdf, QuadratureSpec, INV_SQRT_2PI};
use crate::profile::{mass_weighted, Profile, FEASIBILITY_TOL};

#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(non_snake_case)]
pub struct PairingConstants {
    pub eta_star: f64,
    pub B: f64,
    pub A_max: f64,
    pub kappa_Q: f64,
    pub p: f64,
    pub s1: f64,
    pub t2: f64,
    pub transverse: f64,
    pub pairing_lower: f64,
    pub K0_upper: f64,
}

fn check_eta(op: &'static str, eta: f64) -> Result<()> {
    ensure_finite(op, "eta", eta)?;
    if eta <= 0.0 {
        return Err(domain(op, format!("eta must be positive, got {eta}")));
    }
    Ok(())
}

pub fn pairing_constants(eta: f64) -> Result<PairingConstants> {
    let (p, s1, t2) = inner_constants(eta)?;
    let (b, a_max, kappa_q) = kappa_Q(eta)?;
    let transverse = transverse_bound(p, s1, t2)?;
    Ok(PairingConstants {
        eta_star: eta,
        B: b,
        A_max: a_max,
        kappa_Q: kappa_q,
        p,
        s1,
        t2,
        transverse,
        pairing_lower: kappa_q - transverse,
        K0_upper: K0_upper(eta)?,
    })
}

/// `(p, s₁, t₂) = (2Φ(η) − 1, 2(γ₁(0) − γ₁(η)), p − 2ηγ₁(η))`.
pub fn inner_constants(eta: f64) -> Result<(f64, f64, f64)> {
    check_eta("inner_constants", eta)?;
    let p = 2.0 * half_mass(eta);
    // γ₁(0) − γ₁(η) = −γ₁(0)·expm1(−η²/2), free of cancellation.
    let s1 = -2.0 * INV_SQRT_2PI * (-0.5 * eta * eta).exp_m1();
    let t2 = p - 2.0 * eta * pdf(eta);
    Ok((p, s1, t2))
}

/// `(B, A_max, κ_Q)`.
#[allow(non_snake_case)]
pub fn kappa_Q(eta: f64) -> Result<(f64, f64, f64)> {
    check_eta("kappa_Q", eta)?;
    let b = h3_tail_integral(eta)?;
    let a_max = eta * eta * -INV_SQRT_2PI * (-0.5 * eta * eta).exp_m1();
    Ok((b, a_max, (b * b - a_max * a_max) / 6.0))
}

/// `p² + s₁² + t₂²/2`.
pub fn transverse_bound(p: f64, s1: f64, t2: f64) -> Result<f64> {
    for (name, x) in [("p", p), ("s1", s1), ("t2", t2)] {
        ensure_finite("transverse_bound", name, x)?;
        if x < 0.0 {
            return Err(domain("transverse_bound", format!("{name} must be nonnegative, got {x}")));
        }
    }
    Ok(p * p + s1 * s1 + 0.5 * t2 * t2)
}

/// `κ_Q − (p² + s₁² + t₂²/2)`.
pub fn pairing_lower_bound(eta: f64) -> Result<f64> {
    let (p, s1, t2) = inner_constants(eta)?;
    let (_, _, k) = kappa_Q(eta)?;
    Ok(k - transverse_bound(p, s1, t2)?)
}

/// `√((|B| + A_max)²/6 + p² + s₁² + t₂²/2)`.
#[allow(non_snake_case)]
pub fn K0_upper(eta: f64) -> Result<f64> {
    let (p, s1, t2) = inner_constants(eta)?;
    let (b, a, _) = kappa_Q(eta)?;
    let s = b.abs() + a;
    Ok((s * s / 6.0 + transverse_bound(p, s1, t2)?).sqrt())
}

/// `(|A(θ)|, η²(γ₁(0) − γ₁(η)))` with `A(θ) = ∫_{−η}^{η} H₃θγ₁`.
///
/// Requires the inner moment `∫_{−η}^{η} zθγ₁` to vanish.
#[allow(non_snake_case)]
pub fn A_bound_check(profile: &Profile, eta: f64, spec: &QuadratureSpec) -> Result<(f64, f64)> {
    check_eta("A_bound_check", eta)?;
    let m = profile.integrate(|z, t| z * t, -eta, eta, &[], spec)?;
    if m.abs() > FEASIBILITY_TOL {
        return Err(Error::Infeasible {
            op: "A_bound_check",
            residual: m,
            detail: "inner moment must vanish".into(),
        });
    }
    let a = profile.integrate(|z, t| h3(z) * t, -eta, eta, &[], spec)?;
    let (_, a_max, _) = kappa_Q(eta)?;
    Ok((a.abs(), a_max))
}

/// `2(2e^{−η²/2} − 1)/√(2π)`: the smallest moment of a profile with sign tails beyond `η`.
pub fn mombd_bound(eta: f64) -> f64 {
    2.0 * (2.0 * (-0.5 * eta * eta).exp() - 1.0) * INV_SQRT_2PI
}

/// Moment `∫θzγ₁` of a profile with sign tails beyond `η < 1/2`, checked against [`mombd_bound`].
pub fn mombd_lower(profile: &Profile, eta: f64, spec: &QuadratureSpec) -> Result<f64> {
    const OP: &str = "mombd_lower";
    check_eta(OP, eta)?;
    if eta >= 0.5 {
        return Err(domain(OP, format!("eta must be < 1/2, got {eta}")));
    }
    let tail = mass_weighted(profile, eta, f64::INFINITY, |v| 1.0 - v)
        + mass_weighted(profile, f64::NEG_INFINITY, -eta, |v| 1.0 + v);
    if tail > 1e-12 {
        return Err(Error::Infeasible {
            op: OP,
            residual: tail,
            detail: "profile must equal sign(z) beyond eta".into(),
        });
    }
    let m = crate::profile::moment(profile, spec)?;
    let bound = mombd_bound(eta);
    if m < bound - 1e-12 {
        return Err(Error::Consistency(format!("moment {m} is below the bound {bound}")));
    }
    Ok(m)
}

/// `(|a − βb|, |a| − β sign(a) b + 2β|b|·1{|a| ≤ β|b|})`.
pub fn signflip_check(a: f64, b: f64, beta: f64) -> Result<(f64, f64)> {
    ensure_finite("signflip_check", "a", a)?;
    ensure_finite("signflip_check", "b", b)?;
    ensure_finite("signflip_check", "beta", beta)?;
    if beta < 0.0 {
        return Err(domain("signflip_check", format!("beta must be nonnegative, got {beta}")));
    }
    let lhs = (a - beta * b).abs();
    let sign_a = if a > 0.0 {
        1.0
    } else if a < 0.0 {
        -1.0
    } else {
        0.0
    };
    let flip = if a.abs() <= beta * b.abs() { 2.0 * beta * b.abs() } else { 0.0 };
    Ok((lhs, a.abs() - beta * sign_a * b + flip))
}
