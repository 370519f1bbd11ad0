//! Stability constants and the final inequality chain.
//!
//! Every quantity of size below about `1e-20` is carried as its own `f64` and
//! never added to an O(1) number, so nothing is lost to rounding.

use std::f64::consts::{E, PI};

use crate::error::{domain, ensure_finite, Error, Result};
use crate::gauss::{log_upper_tail, mills_ratio};
use crate::json::JsonObject;
use crate::profile::gap_lower_large_delta;
use crate::reeds::{davie_reeds_bound, LAMBDA_STAR};

/// `(e/√3)³`, the hypercontractive constant for the third chaos in `L¹`.
pub fn p3_l1_coefficient() -> f64 {
    (E / 3f64.sqrt()).powi(3)
}

/// The rounded-up coefficient used in the stability estimates.
pub const P3_COEFF: f64 = 3.87;

/// The drop coefficient asserted for the near-neighbourhood case.
pub const DROP_NEAR_COEFF: f64 = 0.0057;

/// Branch constant for `|α − α*| > 1e-12`: `(9/10)·(1e-12)²`.
pub const FAR_ALPHA_GAP: f64 = 0.9e-24;

/// `L¹` radius and `α` accuracy used for the large-defect branch.
pub const FAR_D: f64 = 1e-10;
pub const FAR_ALPHA_ERR: f64 = 1e-12;

/// Rounded constants of the near-neighbourhood estimate.
pub const KAPPA0: f64 = 0.0454;
pub const K0: f64 = 0.359;
pub const L0: f64 = 2.66;

#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(non_snake_case)]
pub struct ChainParams {
    pub epsilon: f64,
    pub beta: f64,
    pub rho: f64,
    pub alpha_min: f64,
    pub z0: f64,
    pub kappa0: f64,
    pub K0: f64,
    pub L0: f64,
    pub lambda: f64,
    /// `‖R_λ‖_{2→2}`. Carried for completeness; no estimate uses it.
    pub L: Option<f64>,
}

impl ChainParams {
    /// `ε = 1e-7`, `ρ = 0.7`, `α_min = 0.6`, `z₀ = 1/3 + β^ρ/α_min`, rounded `κ₀, K₀, L₀`, `λ = λ*`.
    pub fn standard(beta: f64) -> Result<Self> {
        let rho = 0.7;
        let alpha_min = 0.6;
        Self::new(ChainParams {
            epsilon: 1e-7,
            beta,
            rho,
            alpha_min,
            z0: 1.0 / 3.0 + beta.powf(rho) / alpha_min,
            kappa0: KAPPA0,
            K0,
            L0,
            lambda: LAMBDA_STAR,
            L: None,
        })
    }

    pub fn new(p: ChainParams) -> Result<Self> {
        const OP: &str = "ChainParams";
        for (name, x) in [
            ("epsilon", p.epsilon),
            ("beta", p.beta),
            ("rho", p.rho),
            ("alpha_min", p.alpha_min),
            ("z0", p.z0),
            ("kappa0", p.kappa0),
            ("K0", p.K0),
            ("L0", p.L0),
            ("lambda", p.lambda),
        ] {
            ensure_finite(OP, name, x)?;
        }
        if !(p.epsilon > 0.0 && p.epsilon < 0.01) {
            return Err(domain(OP, format!("epsilon must lie in (0, 0.01), got {}", p.epsilon)));
        }
        if !(p.beta > 0.0 && p.beta < 1.0) {
            return Err(domain(OP, format!("beta must lie in (0, 1), got {}", p.beta)));
        }
        if !(p.rho > 0.0 && p.rho < 1.0) {
            return Err(domain(OP, format!("rho must lie in (0, 1), got {}", p.rho)));
        }
        if !(p.alpha_min > 0.0 && p.alpha_min < 1.0) {
            return Err(domain(OP, format!("alpha_min must lie in (0, 1), got {}", p.alpha_min)));
        }
        if !(p.z0 > p.lambda / p.alpha_min) {
            return Err(domain(OP, format!("z0 = {} must exceed lambda/alpha_min", p.z0)));
        }
        Ok(p)
    }
}

fn check_pos(op: &'static str, name: &str, x: f64) -> Result<()> {
    ensure_finite(op, name, x)?;
    if x <= 0.0 {
        return Err(domain(op, format!("{name} must be positive, got {x}")));
    }
    Ok(())
}

/// `H₃²/6 + H₂²/2 + z² + 1 = z⁶/6 − z⁴/2 + 3z²/2 + 3/2`.
pub fn cz0_integrand(z: f64) -> f64 {
    let h3 = z * (z * z - 3.0);
    let h2 = z * z - 1.0;
    h3 * h3 / 6.0 + h2 * h2 / 2.0 + z * z + 1.0
}

/// Grid supremum of [`cz0_integrand`] over `|z| ≤ z0` with `points` nodes on `[0, z0]` (endpoint included).
pub fn c_z0_grid(z0: f64, points: usize) -> Result<f64> {
    check_pos("C_z0", "z0", z0)?;
    let n = points.max(2) - 1;
    Ok((0..=n)
        .map(|i| cz0_integrand(if i == n { z0 } else { z0 * i as f64 / n as f64 }))
        .fold(f64::NEG_INFINITY, f64::max))
}

/// `C_{z₀} = sup_{|z|≤z₀}(H₃²/6 + H₂²/2 + z² + 1)` on a `10⁵`-point grid.
///
/// The integrand is even with derivative `z(z⁴ − 2z² + 3) > 0` for `z > 0`,
/// so the supremum is attained at `z₀`, which the grid includes.
#[allow(non_snake_case)]
pub fn C_z0(z0: f64) -> Result<f64> {
    c_z0_grid(z0, 100_000)
}

/// `8√C_{z₀}/(α_min √(2π))`.
#[allow(non_snake_case)]
pub fn K_strip(z0: f64, alpha_min: f64) -> Result<f64> {
    check_pos("K_strip", "alpha_min", alpha_min)?;
    Ok(k_strip_from_c(C_z0(z0)?, alpha_min))
}

pub fn k_strip_from_c(c: f64, alpha_min: f64) -> f64 {
    8.0 * c.sqrt() / (alpha_min * (2.0 * PI).sqrt())
}

/// `4/(α_min √(2π))`.
#[allow(non_snake_case)]
pub fn L0_bound(alpha_min: f64) -> Result<f64> {
    check_pos("L0_bound", "alpha_min", alpha_min)?;
    Ok(4.0 / (alpha_min * (2.0 * PI).sqrt()))
}

/// `(½‖h‖₁ ln(1/‖h‖₁), (e/√3)³‖h‖₁ (ln(1/‖h‖₁))^{3/2})`.
pub fn l1_projection_bounds(h_norm1: f64) -> Result<(f64, f64)> {
    ensure_finite("l1_projection_bounds", "h_norm1", h_norm1)?;
    if !(h_norm1 > 0.0 && h_norm1 <= 0.01) {
        return Err(domain("l1_projection_bounds", format!("norm must lie in (0, 0.01], got {h_norm1}")));
    }
    let l = (1.0 / h_norm1).ln();
    Ok((0.5 * h_norm1 * l, p3_l1_coefficient() * h_norm1 * l.powf(1.5)))
}

/// `3.87 ε (ln(2/ε))^{3/2}`.
pub fn p3_perturbation_bound(epsilon: f64) -> Result<f64> {
    check_epsilon("p3_perturbation_bound", epsilon)?;
    Ok(P3_COEFF * epsilon * (2.0 / epsilon).ln().powf(1.5))
}

/// `exp(−½(s/e)^{2/3} − ½)` for `s ≥ e`.
pub fn h3_tail_bound(s: f64) -> Result<f64> {
    ensure_finite("h3_tail_bound", "s", s)?;
    if s < E {
        return Err(domain("h3_tail_bound", format!("s must be >= e, got {s}")));
    }
    Ok((-0.5 * (s / E).powf(2.0 / 3.0) - 0.5).exp())
}

fn check_epsilon(op: &'static str, epsilon: f64) -> Result<()> {
    ensure_finite(op, "epsilon", epsilon)?;
    if !(epsilon > 0.0 && epsilon < 0.01) {
        return Err(domain(op, format!("epsilon must lie in (0, 0.01), got {epsilon}")));
    }
    Ok(())
}

/// `2^{3/2}[ε L₀ (λ + ½ ln(2/ε))]^{1/4}`.
pub fn sign_stability(epsilon: f64, l0: f64, lambda: f64) -> Result<f64> {
    check_epsilon("sign_stability", epsilon)?;
    Ok(2f64.powf(1.5) * (epsilon * l0 * (lambda + 0.5 * (2.0 / epsilon).ln())).powf(0.25))
}

/// `κ₀ − 3.87ε(ln(2/ε))^{3/2} − 2^{3/2}[εL₀(λ + ½ln(2/ε))]^{1/4} K₀`.
pub fn kappa_eff(epsilon: f64, kappa0: f64, k0: f64, l0: f64, lambda: f64) -> Result<f64> {
    Ok(kappa0 - p3_perturbation_bound(epsilon)? - sign_stability(epsilon, l0, lambda)? * k0)
}

/// Same bound as [`kappa_eff`], named for the pairing stability estimate.
pub fn pairing_stability_lower(epsilon: f64, kappa0: f64, k0: f64, l0: f64, lambda: f64) -> Result<f64> {
    kappa_eff(epsilon, kappa0, k0, l0, lambda)
}

/// `κ_eff β − K_strip β^{1+ρ} − 2β exp(−½e^{−2/3} β^{−(2/3)(1−ρ)} − ½)`.
pub fn neighborhood_drop(params: &ChainParams) -> Result<f64> {
    let p = ChainParams::new(*params)?;
    let t = p.beta.powf(p.rho);
    if p.z0 < (p.lambda + t) / p.alpha_min {
        return Err(domain(
            "neighborhood_drop",
            format!("z0 = {} is below (lambda + beta^rho)/alpha_min", p.z0),
        ));
    }
    let k = kappa_eff(p.epsilon, p.kappa0, p.K0, p.L0, p.lambda)?;
    let ks = K_strip(p.z0, p.alpha_min)?;
    let tail = (-0.5 * (-2.0f64 / 3.0).exp() * p.beta.powf(-(2.0 / 3.0) * (1.0 - p.rho)) - 0.5).exp();
    Ok(k * p.beta - ks * p.beta * t - 2.0 * p.beta * tail)
}

/// `K_strip βt + 2β exp(−½(t/(eβ))^{2/3} − ½)`.
pub fn flip_correction(beta: f64, t: f64, z0: f64, alpha_min: f64) -> Result<f64> {
    const OP: &str = "flip_correction";
    ensure_finite(OP, "beta", beta)?;
    ensure_finite(OP, "t", t)?;
    if beta < 0.0 {
        return Err(domain(OP, "beta must be nonnegative"));
    }
    if !(t > 0.0 && t < LAMBDA_STAR) {
        return Err(domain(OP, format!("t must lie in (0, lambda*), got {t}")));
    }
    if beta == 0.0 {
        return Ok(0.0);
    }
    if !(t / beta > E) {
        return Err(domain(OP, format!("t/beta = {} must exceed e", t / beta)));
    }
    let ks = K_strip(z0, alpha_min)?;
    Ok(ks * beta * t + 2.0 * beta * h3_tail_bound(t / beta)?)
}

/// `γ₁(a) / (0.583 Φ(−a) ln(1/Φ(−a)))`, evaluated through the Mills ratio so it stays finite for large `a`.
pub fn envelope_ratio(a: f64) -> f64 {
    let log_tail = log_upper_tail(a);
    1.0 / (0.583 * mills_ratio(a) * (-log_tail))
}

/// Output of [`final_chain`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainReport {
    pub kappa_eff: f64,
    pub drop_near_coeff: f64,
    pub branches: [f64; 3],
    pub beta_star: f64,
    /// `−max(branches)`; positive exactly when the chain yields an improvement.
    pub final_drop: f64,
    /// `c·final_drop/‖R_λ‖`; absent when `final_drop ≤ 0`.
    pub kg_increment: Option<f64>,
    pub certified: bool,
}

impl ChainReport {
    pub fn to_json(&self) -> String {
        let mut o = JsonObject::new();
        o.number("kappa_eff", self.kappa_eff);
        o.number("drop_near_coeff", self.drop_near_coeff);
        o.numbers("branches", &self.branches);
        o.number("beta_star", self.beta_star);
        o.number("final_drop", self.final_drop);
        o.optional_number("kg_increment", self.kg_increment);
        o.boolean("certified", self.certified);
        o.finish()
    }
}

/// The three branches at `β`: `−0.0057β`, `β − 0.9e-24`, `β − gap(1e-10, 1e-12)`.
pub fn final_chain(beta: f64) -> Result<ChainReport> {
    ensure_finite("final_chain", "beta", beta)?;
    if !(beta > 0.0 && beta < 1e-10) {
        return Err(domain("final_chain", format!("beta must lie in (0, 1e-10), got {beta}")));
    }
    let params = ChainParams::standard(beta)?;
    let near = neighborhood_drop(&params)?;
    if near < DROP_NEAR_COEFF * beta {
        return Err(Error::Consistency(format!(
            "neighbourhood drop {near:e} is below {DROP_NEAR_COEFF}*beta"
        )));
    }
    let k = kappa_eff(params.epsilon, params.kappa0, params.K0, params.L0, params.lambda)?;
    let b1 = -DROP_NEAR_COEFF * beta;
    let b2 = beta - FAR_ALPHA_GAP;
    let b3 = beta - gap_lower_large_delta(FAR_D, FAR_ALPHA_ERR, LAMBDA_STAR)?;
    let max = b1.max(b2).max(b3);
    let final_drop = -max;
    let kg_increment = if final_drop > 0.0 {
        Some(kg_lower_bound(final_drop, LAMBDA_STAR, davie_reeds_bound(LAMBDA_STAR)?)?)
    } else {
        None
    };
    Ok(ChainReport {
        kappa_eff: k,
        drop_near_coeff: DROP_NEAR_COEFF,
        branches: [b1, b2, b3],
        beta_star: beta,
        final_drop,
        kg_increment,
        certified: false,
    })
}

/// `c·drop/‖R_λ‖` with `‖R_λ‖ = (1 − λ)/c`.
pub fn kg_lower_bound(final_drop: f64, lambda: f64, c: f64) -> Result<f64> {
    ensure_finite("kg_lower_bound", "final_drop", final_drop)?;
    if !(final_drop > 0.0) {
        return Err(domain("kg_lower_bound", format!("final_drop must be positive, got {final_drop:e}")));
    }
    let norm = (1.0 - lambda) / c;
    Ok(c * final_drop / norm)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_z0_examples() {
        let c = C_z0(0.36).unwrap();
        assert!((c - 1.686_37).abs() < 1e-4);
        assert!(c <= 1.7);
        assert_eq!(C_z0(1e-300).unwrap(), 1.5);
        assert!(C_z0(0.2).unwrap() <= C_z0(0.36).unwrap());
        assert!((c_z0_grid(0.36, 200_000).unwrap() - c).abs() < 1e-6);
        assert!(C_z0(0.0).is_err());
    }

    #[test]
    fn k_strip_examples() {
        let k = K_strip(0.36, 0.6).unwrap();
        assert!(k <= 7.0);
        assert!((k - 6.9075).abs() < 1e-3);
        assert!((k_strip_from_c(1.7, 0.6) - 6.94).abs() < 5e-3);
        assert!((K_strip(0.36, 0.3).unwrap() - 2.0 * k).abs() < 1e-12);
        assert!(K_strip(0.36, 0.0).is_err());
    }

    #[test]
    fn l0_examples() {
        assert!((L0_bound(0.6).unwrap() - 2.6596).abs() < 1e-4);
        assert!(L0_bound(0.6).unwrap() <= 2.66);
        assert!((L0_bound(1.0).unwrap() - 1.5958).abs() < 1e-4);
        assert!((L0_bound(0.3).unwrap() - 5.3192).abs() < 1e-4);
    }

    #[test]
    fn projection_bounds() {
        assert!((p3_perturbation_bound(1e-7).unwrap() / 2.667e-5 - 1.0).abs() < 1e-3);
        let (p1, _) = l1_projection_bounds(1e-2).unwrap();
        assert!((p1 - 0.023_03).abs() < 1e-5);
        assert!((p3_l1_coefficient() - 3.865_46).abs() < 1e-5);
        assert!(p3_l1_coefficient() <= P3_COEFF);
        assert!(l1_projection_bounds(0.02).is_err());
    }

    #[test]
    fn tail_bound_examples() {
        assert!((h3_tail_bound(E).unwrap() - (-1f64).exp()).abs() < 1e-15);
        assert!((h3_tail_bound(8.0 * E).unwrap() - (-2.5f64).exp()).abs() < 1e-14);
        let beta: f64 = 1e-10;
        assert!(2.0 * h3_tail_bound(beta.powf(0.7) / beta).unwrap() < 1e-10);
        assert!(h3_tail_bound(2.0).is_err());
    }

    #[test]
    fn sign_stability_values() {
        let s = sign_stability(1e-7, 2.66, LAMBDA_STAR).unwrap();
        assert!((s - 0.110_01).abs() < 1e-4);
        assert!((s * K0 - 0.0395).abs() < 1e-4);
        assert!(sign_stability(1e-300, 2.66, LAMBDA_STAR).unwrap() < 1e-70);
        let mut prev = 0.0;
        for i in 1..100 {
            let e = 0.0099 * i as f64 / 100.0;
            let v = sign_stability(e, 2.66, LAMBDA_STAR).unwrap();
            assert!(v > prev);
            prev = v;
        }
    }

    #[test]
    fn kappa_eff_values() {
        let k = kappa_eff(1e-7, KAPPA0, K0, L0, LAMBDA_STAR).unwrap();
        assert!(k >= 0.0058);
        assert!((k - 0.005_879).abs() < 1e-5);
        assert!((kappa_eff(1e-300, KAPPA0, K0, L0, LAMBDA_STAR).unwrap() - KAPPA0).abs() < 1e-60);
        assert!(kappa_eff(1e-4, KAPPA0, K0, L0, LAMBDA_STAR).unwrap() < 0.0);
        assert_eq!(pairing_stability_lower(1e-7, KAPPA0, K0, L0, LAMBDA_STAR).unwrap(), k);
    }

    #[test]
    fn drop_examples() {
        for beta in [1e-10, 1e-12, 1e-20, 8e-25] {
            let p = ChainParams::standard(beta).unwrap();
            let d = neighborhood_drop(&p).unwrap();
            assert!(d >= DROP_NEAR_COEFF * beta, "beta {beta}: {d}");
        }
        let beta: f64 = 1e-10;
        assert!(K_strip(0.36, 0.6).unwrap() * beta.powf(0.7) <= 1e-6);
        let k = kappa_eff(1e-7, KAPPA0, K0, L0, LAMBDA_STAR).unwrap();
        let p = ChainParams::standard(1e-30).unwrap();
        assert!((neighborhood_drop(&p).unwrap() / 1e-30 - k).abs() < 1e-12);
        let mut bad = ChainParams::standard(1e-10).unwrap();
        bad.z0 = LAMBDA_STAR / 0.6 + 1e-8;
        assert!(neighborhood_drop(&bad).is_err());
    }

    #[test]
    fn flip_correction_examples() {
        let v = flip_correction(1e-10, 1e-7, 0.36, 0.6).unwrap();
        let lead = K_strip(0.36, 0.6).unwrap() * 1e-17;
        assert!((v - lead).abs() < 1e-21);
        assert!((v - 6.91e-17).abs() < 1e-19);
        assert!(flip_correction(1.0e-3, E * 1e-3, 0.36, 0.6).is_err());
        assert_eq!(flip_correction(0.0, 1e-7, 0.36, 0.6).unwrap(), 0.0);
        assert!(flip_correction(1e-10, 0.3, 0.36, 0.6).is_err());
    }

    #[test]
    fn chain_at_beta_star() {
        let r = final_chain(8e-25).unwrap();
        assert!((r.final_drop - 4.56e-27).abs() < 1e-30);
        assert!((r.branches[0] + 4.56e-27).abs() < 1e-40);
        assert!((r.branches[1] + 1e-25).abs() < 1e-38);
        assert!((r.branches[2] + 3.758e-24).abs() < 1e-27);
        let inc = r.kg_increment.unwrap();
        assert!(inc >= 1.596e-26);
        assert!(inc > 1e-26);
    }

    #[test]
    fn chain_without_drop() {
        let r = final_chain(4e-24).unwrap();
        assert!(r.branches[1] > 0.0);
        assert!(r.final_drop < 0.0);
        assert!(r.kg_increment.is_none());
        assert!(r.to_json().contains("\"kg_increment\": null"));
        assert!(final_chain(1e-9).is_err());
        assert!(final_chain(0.0).is_err());
    }

    #[test]
    fn final_drop_monotone() {
        let top = 9e-25 * 0.994 / 1.0057;
        let mut prev = f64::NEG_INFINITY;
        for i in 1..=200 {
            let beta = top * i as f64 / 200.0;
            let d = final_chain(beta).unwrap().final_drop;
            assert!(d > prev);
            prev = d;
        }
    }

    #[test]
    fn kg_increment_examples() {
        let c = davie_reeds_bound(LAMBDA_STAR).unwrap();
        let inc = kg_lower_bound(45.6e-28, LAMBDA_STAR, c).unwrap();
        assert!(inc >= 159.6e-28);
        assert!(kg_lower_bound(0.0, LAMBDA_STAR, c).is_err());
    }

    #[test]
    fn envelope_on_grid() {
        let mut worst: f64 = 0.0;
        for i in 0..=3770 {
            let a = 2.3 + 0.01 * i as f64;
            worst = worst.max(envelope_ratio(a));
        }
        assert!(worst <= 1.0, "{worst}");
        assert!((envelope_ratio(2.3) - 0.999_008_26).abs() < 1e-7);
    }

    #[test]
    fn report_json_keys() {
        let j = final_chain(8e-25).unwrap().to_json();
        let v: serde_json::Value = serde_json::from_str(&j).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|s| s.as_str()).collect();
        for k in ["kappa_eff", "drop_near_coeff", "branches", "beta_star", "final_drop", "kg_increment", "certified"] {
            assert!(keys.contains(&k));
        }
        assert_eq!(keys.len(), 7);
    }
}
