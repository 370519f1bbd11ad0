//! Conditional profiles `θ: ℝ → [−1, 1]` and the one-dimensional
//! variational problem built on them.
//!
//! A profile is piecewise constant on `[−z_cut, z_cut]` and constant (or
//! sign-valued) beyond. With `A(z) = (|αz − λ| + |αz + λ|)/2` and
//! `B(z) = (|αz − λ| − |αz + λ|)/2`, the primal value is
//! `V(θ) = ∫(A + θB)γ₁` under the moment constraint `∫zθγ₁ = α`, and the
//! dual is `D(μ) = ∫Aγ₁ + μα + ∫|B − μz|γ₁`.

mod bounds;
mod format;
mod lp;
mod repair;

pub use bounds::{gap_lower_large_delta, gap_lower_small_delta, mj_tail_defects, GapInputs, GapRegime};
pub use lp::lp_maximize;
pub use repair::{is_theta_member, repair_to_theta};

use crate::error::{domain, ensure_finite, Error, Result};
use crate::gauss::{cdf, first_moment, integrate_gaussian, mass, pdf, QuadratureSpec};
use crate::reeds::{solve_eta_star, ReedsParams};

/// Absolute tolerance on the moment constraint.
pub const FEASIBILITY_TOL: f64 = 1e-10;

/// Behaviour of a profile beyond `±z_cut`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailRule {
    /// `θ(z) = sign(z)` for `|z| > z_cut`.
    SignTails,
    /// `θ = left` for `z < −z_cut` and `θ = right` for `z > z_cut`.
    ExplicitConstant { left: f64, right: f64 },
}

impl TailRule {
    pub fn values(&self) -> (f64, f64) {
        match *self {
            TailRule::SignTails => (-1.0, 1.0),
            TailRule::ExplicitConstant { left, right } => (left, right),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Profile {
    z_cut: f64,
    breakpoints: Vec<f64>,
    values: Vec<f64>,
    tail: TailRule,
}

fn check_unit(op: &'static str, name: &str, v: f64) -> Result<()> {
    ensure_finite(op, name, v)?;
    if !(-1.0..=1.0).contains(&v) {
        return Err(domain(op, format!("{name} must lie in [-1, 1], got {v}")));
    }
    Ok(())
}

impl Profile {
    /// Breakpoints must run strictly increasing from `−z_cut` to `z_cut`.
    pub fn new(z_cut: f64, breakpoints: Vec<f64>, values: Vec<f64>, tail: TailRule) -> Result<Self> {
        const OP: &str = "Profile";
        ensure_finite(OP, "z_cut", z_cut)?;
        if z_cut <= 0.0 {
            return Err(domain(OP, format!("z_cut must be positive, got {z_cut}")));
        }
        if breakpoints.len() < 2 || values.len() + 1 != breakpoints.len() {
            return Err(domain(
                OP,
                format!("need n+1 breakpoints for n values, got {} and {}", breakpoints.len(), values.len()),
            ));
        }
        if breakpoints[0] != -z_cut || *breakpoints.last().unwrap() != z_cut {
            return Err(domain(OP, "breakpoints must start at -z_cut and end at z_cut"));
        }
        if breakpoints.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(domain(OP, "breakpoints must be strictly increasing"));
        }
        for v in &values {
            check_unit(OP, "value", *v)?;
        }
        if let TailRule::ExplicitConstant { left, right } = tail {
            check_unit(OP, "left tail", left)?;
            check_unit(OP, "right tail", right)?;
        }
        Ok(Self {
            z_cut,
            breakpoints,
            values,
            tail,
        })
    }

    /// Builds a profile on the given breakpoints by sampling `f` at cell midpoints (clamped to `[−1, 1]`).
    pub fn from_breakpoints_fn<F: Fn(f64) -> f64>(breakpoints: Vec<f64>, tail: TailRule, f: F) -> Result<Self> {
        let z_cut = breakpoints.last().copied().unwrap_or(0.0);
        let values = breakpoints
            .windows(2)
            .map(|w| f(0.5 * (w[0] + w[1])).clamp(-1.0, 1.0))
            .collect();
        Self::new(z_cut, breakpoints, values, tail)
    }

    /// Uniform grid of `cells` cells on `[−z_cut, z_cut]`, sampled at midpoints.
    pub fn from_fn<F: Fn(f64) -> f64>(z_cut: f64, cells: usize, tail: TailRule, f: F) -> Result<Self> {
        if cells == 0 {
            return Err(domain("Profile::from_fn", "need at least one cell"));
        }
        Self::from_breakpoints_fn(uniform_grid(z_cut, cells), tail, f)
    }

    /// `θ = sign(z)` everywhere.
    pub fn sign(z_cut: f64) -> Result<Self> {
        Self::new(z_cut, vec![-z_cut, 0.0, z_cut], vec![-1.0, 1.0], TailRule::SignTails)
    }

    /// `θ ≡ c` everywhere.
    pub fn constant(c: f64, z_cut: f64) -> Result<Self> {
        Self::new(
            z_cut,
            vec![-z_cut, z_cut],
            vec![c],
            TailRule::ExplicitConstant { left: c, right: c },
        )
    }

    /// The odd bathtub: `−1` on `(0, h)`, `+1` on `(h, ∞)`.
    pub fn bathtub(h: f64, z_cut: f64) -> Result<Self> {
        if !(h > 0.0 && h < z_cut) {
            return Err(domain("Profile::bathtub", format!("need 0 < h < z_cut, got h = {h}, z_cut = {z_cut}")));
        }
        Self::new(
            z_cut,
            vec![-z_cut, -h, 0.0, h, z_cut],
            vec![-1.0, 1.0, -1.0, 1.0],
            TailRule::SignTails,
        )
    }

    /// Uniform inner grid on `[−η, η]` with the given values and sign tails beyond `η`.
    pub fn with_inner(eta: f64, inner: Vec<f64>) -> Result<Self> {
        if inner.is_empty() {
            return Err(domain("Profile::with_inner", "need at least one inner value"));
        }
        Self::new(eta, uniform_grid(eta, inner.len()), inner, TailRule::SignTails)
    }

    pub fn z_cut(&self) -> f64 {
        self.z_cut
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn tail(&self) -> TailRule {
        self.tail
    }

    /// `θ(z)`. At a breakpoint the value of the cell to the right is returned.
    pub fn eval(&self, z: f64) -> f64 {
        let (l, r) = self.tail.values();
        if z >= self.z_cut {
            return if z == self.z_cut { *self.values.last().unwrap() } else { r };
        }
        if z < -self.z_cut {
            return l;
        }
        let idx = self.breakpoints.partition_point(|b| *b <= z);
        self.values[idx.saturating_sub(1).min(self.values.len() - 1)]
    }

    /// All constant pieces `(a, b, v)` of θ on ℝ, tails included with infinite endpoints.
    pub fn pieces(&self) -> Vec<(f64, f64, f64)> {
        let (l, r) = self.tail.values();
        let mut out = Vec::with_capacity(self.values.len() + 2);
        out.push((f64::NEG_INFINITY, -self.z_cut, l));
        for (w, v) in self.breakpoints.windows(2).zip(self.values.iter()) {
            out.push((w[0], w[1], *v));
        }
        out.push((self.z_cut, f64::INFINITY, r));
        out
    }

    /// Re-grids onto the union of the current breakpoints and `extra` (restricted to `[−z_cut, z_cut]`).
    pub fn refined(&self, extra: &[f64]) -> Result<Self> {
        let mut bps: Vec<f64> = self.breakpoints.clone();
        bps.extend(extra.iter().copied().filter(|x| x.abs() < self.z_cut));
        sort_dedup(&mut bps);
        Self::from_breakpoints_fn(bps, self.tail, |z| self.eval(z))
    }

    /// `θ ↦ −θ`.
    pub fn negated(&self) -> Self {
        let (l, r) = self.tail.values();
        let tail = match self.tail {
            TailRule::SignTails => TailRule::ExplicitConstant { left: 1.0, right: -1.0 },
            TailRule::ExplicitConstant { .. } => TailRule::ExplicitConstant { left: -l, right: -r },
        };
        Self {
            z_cut: self.z_cut,
            breakpoints: self.breakpoints.clone(),
            values: self.values.iter().map(|v| -v).collect(),
            tail,
        }
    }

    /// Quadrature of `∫_lo^hi g(z, θ(z)) γ₁(z) dz` aligned with every breakpoint and `extra` kink.
    pub fn integrate<G: Fn(f64, f64) -> f64>(
        &self,
        g: G,
        lo: f64,
        hi: f64,
        extra: &[f64],
        spec: &QuadratureSpec,
    ) -> Result<f64> {
        let mut kinks = self.breakpoints.clone();
        kinks.extend_from_slice(extra);
        integrate_gaussian(|z| g(z, self.eval(z)), lo, hi, &kinks, spec).map(|e| e.value)
    }
}

pub(crate) fn uniform_grid(z_cut: f64, cells: usize) -> Vec<f64> {
    let mut bps: Vec<f64> = (0..=cells)
        .map(|i| -z_cut + 2.0 * z_cut * i as f64 / cells as f64)
        .collect();
    bps[0] = -z_cut;
    bps[cells] = z_cut;
    bps
}

pub(crate) fn sort_dedup(v: &mut Vec<f64>) {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v.dedup();
}

/// `ψ(z) = (|αz − λ| − |αz + λ|)/2`.
pub fn psi_eval(z: f64, params: &ReedsParams) -> f64 {
    a_b(z, params).1
}

/// `(A(z), B(z))`.
#[allow(non_snake_case)]
pub fn A_B_eval(z: f64, params: &ReedsParams) -> (f64, f64) {
    a_b(z, params)
}

#[inline]
fn a_b(z: f64, params: &ReedsParams) -> (f64, f64) {
    let (l, a) = (params.lambda(), params.alpha());
    let u = (a * z - l).abs();
    let w = (a * z + l).abs();
    (0.5 * (u + w), 0.5 * (u - w))
}

/// `∫Aγ₁ = λ(2Φ(η) − 1) + 2αγ₁(η)`.
pub(crate) fn a_integral(params: &ReedsParams) -> f64 {
    let eta = params.eta();
    params.lambda() * (1.0 - 2.0 * cdf(-eta)) + 2.0 * params.alpha() * pdf(eta)
}

/// `∫_{zc}^∞ Bγ₁`.
fn b_right_tail(zc: f64, params: &ReedsParams) -> f64 {
    let eta = params.eta();
    if zc >= eta {
        -params.lambda() * cdf(-zc)
    } else {
        -params.alpha() * (pdf(zc) - pdf(eta)) - params.lambda() * cdf(-eta)
    }
}

/// `V(θ) = ∫(A + θB)γ₁`. The inner window is integrated numerically and the tails in closed form.
#[allow(non_snake_case)]
pub fn V_value(profile: &Profile, params: &ReedsParams, spec: &QuadratureSpec) -> Result<f64> {
    let eta = params.eta();
    let zc = profile.z_cut();
    let inner = profile.integrate(|z, t| t * a_b(z, params).1, -zc, zc, &[-eta, eta], spec)?;
    let (l, r) = profile.tail().values();
    Ok(a_integral(params) + inner + (r - l) * b_right_tail(zc, params))
}

/// `∫zθ(z)γ₁(z)dz`.
pub fn moment(profile: &Profile, spec: &QuadratureSpec) -> Result<f64> {
    let zc = profile.z_cut();
    let inner = profile.integrate(|z, t| z * t, -zc, zc, &[], spec)?;
    let (l, r) = profile.tail().values();
    Ok(inner + (r - l) * pdf(zc))
}

/// Exact moment over `[lo, hi]` from the piecewise-constant structure.
pub(crate) fn moment_exact(profile: &Profile, lo: f64, hi: f64) -> f64 {
    profile
        .pieces()
        .iter()
        .map(|&(a, b, v)| {
            let (a, b) = (a.max(lo), b.min(hi));
            if b > a {
                v * first_moment(a, b)
            } else {
                0.0
            }
        })
        .sum()
}

/// Exact `∫_{lo}^{hi} g(θ)γ₁` for a function of the value only.
pub fn mass_weighted<G: Fn(f64) -> f64>(profile: &Profile, lo: f64, hi: f64, g: G) -> f64 {
    profile
        .pieces()
        .iter()
        .map(|&(a, b, v)| {
            let (a, b) = (a.max(lo), b.min(hi));
            if b > a {
                g(v) * mass(a, b)
            } else {
                0.0
            }
        })
        .sum()
}

/// `D(μ) = ∫Aγ₁ + μα + ∫|B − μz|γ₁`, integrated entirely by quadrature.
pub fn dual_value(mu: f64, params: &ReedsParams, spec: &QuadratureSpec) -> Result<f64> {
    ensure_finite("dual_value", "mu", mu)?;
    let eta = params.eta();
    let mut kinks = vec![0.0, -eta, eta];
    if mu < 0.0 {
        let r = -params.lambda() / mu;
        kinks.push(r);
        kinks.push(-r);
    }
    let integral = integrate_gaussian(
        |z| {
            let (a, b) = a_b(z, params);
            a + (b - mu * z).abs()
        },
        f64::NEG_INFINITY,
        f64::INFINITY,
        &kinks,
        spec,
    )?
    .value;
    Ok(integral + mu * params.alpha())
}

/// `F_{α,λ} = D(−α)`, defined only for `|α − α*(λ)| < 1/100`.
#[allow(non_snake_case)]
pub fn F_value_dual(params: &ReedsParams, spec: &QuadratureSpec) -> Result<f64> {
    let alpha_star = params.lambda() / solve_eta_star(params.lambda())?;
    let dist = (params.alpha() - alpha_star).abs();
    if !(dist < 0.01) {
        return Err(domain(
            "F_value_dual",
            format!("|alpha - alpha*| = {dist} is outside the certified window (< 0.01)"),
        ));
    }
    dual_value(-params.alpha(), params, spec)
}

/// Primal value, dual value at `μ = −α`, their gap, and the tail integral
/// `∫_{|z|>η}(α|z| − λ)(1 − θ sign z)γ₁` computed independently.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapCertificate {
    pub primal_v: f64,
    pub dual_d: f64,
    pub gap: f64,
    pub tail_integral: f64,
    pub mu: f64,
}

pub(crate) fn ensure_feasible(op: &'static str, profile: &Profile, params: &ReedsParams, spec: &QuadratureSpec) -> Result<()> {
    let m = moment(profile, spec)?;
    let residual = m - params.alpha();
    if residual.abs() > FEASIBILITY_TOL {
        return Err(Error::Infeasible {
            op,
            residual,
            detail: format!("profile moment {m} does not match alpha {}", params.alpha()),
        });
    }
    Ok(())
}


pub fn gap_certificate(profile: &Profile, params: &ReedsParams, spec: &QuadratureSpec) -> Result<GapCertificate> {
    ensure_feasible("gap_certificate", profile, params, spec)?;
    let v = V_value(profile, params, spec)?;
    let mu = -params.alpha();
    let d = dual_value(mu, params, spec)?;
    let tail_integral = tail_integral(profile, params, spec)?;
    Ok(GapCertificate {
        primal_v: v,
        dual_d: d,
        gap: d - v,
        tail_integral,
        mu,
    })
}

/// `∫_{|z|>η}(α|z| − λ)(1 − θ(z) sign z)γ₁(z)dz` by quadrature.
pub fn tail_integral(profile: &Profile, params: &ReedsParams, spec: &QuadratureSpec) -> Result<f64> {
    let (l, a) = (params.lambda(), params.alpha());
    let eta = params.eta();
    let g = |z: f64, t: f64| (a * z.abs() - l) * (1.0 - t * z.signum());
    let right = profile.integrate(g, eta, f64::INFINITY, &[], spec)?;
    let left = profile.integrate(g, f64::NEG_INFINITY, -eta, &[], spec)?;
    Ok(left + right)
}

/// `θ^odd(z) = (θ(z) − θ(−z))/2`.
pub fn odd_part(profile: &Profile) -> Profile {
    let mut bps: Vec<f64> = profile.breakpoints().to_vec();
    bps.extend(profile.breakpoints().iter().map(|b| -b));
    sort_dedup(&mut bps);
    let values = bps
        .windows(2)
        .map(|w| {
            let m = 0.5 * (w[0] + w[1]);
            0.5 * (profile.eval(m) - profile.eval(-m))
        })
        .collect();
    let tail = match profile.tail() {
        TailRule::SignTails => TailRule::SignTails,
        TailRule::ExplicitConstant { left, right } => TailRule::ExplicitConstant {
            left: 0.5 * (left - right),
            right: 0.5 * (right - left),
        },
    };
    Profile {
        z_cut: profile.z_cut(),
        breakpoints: bps,
        values,
        tail,
    }
}

/// `((|1 − x| + |−1 − y|)/2, |1 − s|)` with `s = (x − y)/2`.
pub fn elem_identity_check(x: f64, y: f64) -> Result<(f64, f64)> {
    check_unit("elem_identity_check", "x", x)?;
    check_unit("elem_identity_check", "y", y)?;
    let s = 0.5 * (x - y);
    Ok((0.5 * ((1.0 - x).abs() + (-1.0 - y).abs()), (1.0 - s).abs()))
}

/// `Δ = |∫_{−η*}^{η*} zθγ₁|`.
pub fn inner_moment_defect(profile: &Profile, eta_star: f64, spec: &QuadratureSpec) -> Result<f64> {
    ensure_finite("inner_moment_defect", "eta_star", eta_star)?;
    if eta_star <= 0.0 {
        return Err(domain("inner_moment_defect", "eta_star must be positive"));
    }
    Ok(profile.integrate(|z, t| z * t, -eta_star, eta_star, &[], spec)?.abs())
}

/// `∫_{|z|>η}|sign(z) − θ(z)|γ₁` by quadrature.
pub fn tail_sign_defect(profile: &Profile, eta: f64, spec: &QuadratureSpec) -> Result<f64> {
    let g = |z: f64, t: f64| (z.signum() - t).abs();
    Ok(profile.integrate(g, eta, f64::INFINITY, &[], spec)? + profile.integrate(g, f64::NEG_INFINITY, -eta, &[], spec)?)
}

/// `‖θ₁ − θ₂‖_{L¹(γ₁)}` by quadrature.
pub fn l1_distance(a: &Profile, b: &Profile, spec: &QuadratureSpec) -> Result<f64> {
    let mut kinks = a.breakpoints().to_vec();
    kinks.extend_from_slice(b.breakpoints());
    kinks.extend([a.z_cut(), -a.z_cut(), b.z_cut(), -b.z_cut()]);
    integrate_gaussian(
        |z| (a.eval(z) - b.eval(z)).abs(),
        f64::NEG_INFINITY,
        f64::INFINITY,
        &kinks,
        spec,
    )
    .map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reeds::{reeds_denominator, solve_h, LAMBDA_STAR};

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn star() -> ReedsParams {
        ReedsParams::reeds_point(LAMBDA_STAR).unwrap()
    }

    #[test]
    fn psi_values() {
        let p = star();
        assert_eq!(psi_eval(0.0, &p), 0.0);
        assert!((psi_eval(0.1, &p) + 0.077_221_650_328_145).abs() < 1e-12);
        assert!((psi_eval(1.0, &p) + LAMBDA_STAR).abs() < 1e-15);
        assert_eq!(psi_eval(-0.7, &p), -psi_eval(0.7, &p));
    }

    #[test]
    fn a_b_values() {
        let p = star();
        assert_eq!(A_B_eval(0.0, &p), (LAMBDA_STAR, 0.0));
        let (_, b) = A_B_eval(p.eta(), &p);
        assert!((b + LAMBDA_STAR).abs() < 1e-15);
        let (a, _) = A_B_eval(2.0, &p);
        assert!((a - 2.0 * p.alpha()).abs() < 1e-15);
        assert!((a - 1.544_433_007).abs() < 1e-9);
    }

    #[test]
    fn a_integral_matches_quadrature() {
        let p = star();
        let q = crate::gauss::gauss_integrate(|z| A_B_eval(z, &p).0, &[-p.eta(), p.eta()], &spec()).unwrap();
        assert!((q - a_integral(&p)).abs() < 1e-13);
    }

    #[test]
    fn bathtub_value_is_denominator() {
        let p = star();
        let h = solve_h(p.alpha()).unwrap();
        let b = Profile::bathtub(h, 3.0).unwrap();
        let v = V_value(&b, &p, &spec()).unwrap();
        assert!((v - reeds_denominator(LAMBDA_STAR).unwrap()).abs() < 1e-12);
        assert!((moment(&b, &spec()).unwrap() - p.alpha()).abs() < 1e-12);
    }

    #[test]
    fn zero_inner_sign_tails() {
        let p = star();
        let prof = Profile::with_inner(p.eta(), vec![0.0]).unwrap();
        let v = V_value(&prof, &p, &spec()).unwrap();
        let expected = a_integral(&p) - 2.0 * LAMBDA_STAR * cdf(-p.eta());
        assert!((v - expected).abs() < 1e-13);
        assert!((moment(&prof, &spec()).unwrap() - p.alpha()).abs() < 1e-13);
    }

    #[test]
    fn full_sign_moment() {
        let m = moment(&Profile::constant(1.0, 5.0).unwrap(), &spec()).unwrap();
        assert!(m.abs() < 1e-14);
        let m = moment(&Profile::sign(5.0).unwrap(), &spec()).unwrap();
        assert!((m - 0.797_884_560_802_865_4).abs() < 1e-13);
    }

    #[test]
    fn dual_values() {
        let p = star();
        let s = spec();
        let f = dual_value(-p.alpha(), &p, &s).unwrap();
        assert!((f - 0.478_557_926_593_656).abs() < 1e-12);
        assert!(dual_value(-p.alpha() + 0.1, &p, &s).unwrap() >= f);
        assert!(dual_value(0.0, &p, &s).unwrap() >= f);
        assert!((F_value_dual(&p, &s).unwrap() - f).abs() < 1e-15);
        assert!(F_value_dual(&p.with_alpha(p.alpha() + 0.02).unwrap(), &s).is_err());
    }

    #[test]
    fn theta_member_has_zero_gap() {
        let p = star();
        let h = solve_h(p.alpha()).unwrap();
        let b = Profile::bathtub(h, 3.0).unwrap();
        let c = gap_certificate(&b, &p, &spec()).unwrap();
        assert!(c.gap.abs() < 1e-12);
        assert!(c.tail_integral.abs() < 1e-12);
    }

    #[test]
    fn gap_on_hole() {
        // sign(z) except 0 on (1, 1.2), evaluated at its own moment.
        let prof = Profile::new(
            3.0,
            vec![-3.0, 0.0, 1.0, 1.2, 3.0],
            vec![-1.0, 1.0, 0.0, 1.0],
            TailRule::SignTails,
        )
        .unwrap();
        let s = spec();
        let alpha = moment(&prof, &s).unwrap();
        let p = ReedsParams::new(LAMBDA_STAR, alpha).unwrap();
        let c = gap_certificate(&prof, &p, &s).unwrap();
        let direct = crate::gauss::gauss_integrate_on(|z| alpha * z - LAMBDA_STAR, 1.0, 1.2, &[], &s).unwrap();
        assert!((c.tail_integral - direct).abs() < 1e-13);
        assert!((c.gap - direct).abs() < 1e-12);
    }

    #[test]
    fn maximal_defect() {
        let p = star();
        let eta = p.eta();
        let prof = Profile::new(
            eta,
            vec![-eta, eta],
            vec![0.0],
            TailRule::ExplicitConstant { left: 1.0, right: -1.0 },
        )
        .unwrap();
        let ti = tail_integral(&prof, &p, &spec()).unwrap();
        let expected = 4.0 * (p.alpha() * pdf(eta) - LAMBDA_STAR * cdf(-eta));
        assert!((ti - expected).abs() < 1e-13);
        assert!(matches!(gap_certificate(&prof, &p, &spec()), Err(Error::Infeasible { .. })));
    }

    #[test]
    fn odd_part_examples() {
        let one = Profile::constant(1.0, 2.0).unwrap();
        let o = odd_part(&one);
        assert!(o.values().iter().all(|v| *v == 0.0));
        assert_eq!(o.tail(), TailRule::ExplicitConstant { left: 0.0, right: 0.0 });
        let b = Profile::bathtub(0.2, 2.0).unwrap();
        let ob = odd_part(&b);
        for z in [-1.5, -0.1, 0.1, 0.5, 3.0, -3.0] {
            assert_eq!(ob.eval(z), b.eval(z));
        }
    }

    #[test]
    fn elem_identity() {
        let (l, r) = elem_identity_check(0.3, -0.5).unwrap();
        assert!((l - 0.6).abs() < 1e-15 && (r - 0.6).abs() < 1e-15);
        assert_eq!(elem_identity_check(0.4, 0.4).unwrap(), (1.0, 1.0));
        assert_eq!(elem_identity_check(1.0, -1.0).unwrap(), (0.0, 0.0));
        assert!(elem_identity_check(1.5, 0.0).is_err());
    }

    #[test]
    fn inner_defect_examples() {
        let eta = star().eta();
        // θ ≡ 1 on the inner window has zero moment by symmetry; θ = sign(z) realizes s₁.
        let ones = Profile::with_inner(eta, vec![1.0]).unwrap();
        assert!(inner_moment_defect(&ones, eta, &spec()).unwrap() < 1e-17);
        let signs = Profile::with_inner(eta, vec![-1.0, 1.0]).unwrap();
        let d = inner_moment_defect(&signs, eta, &spec()).unwrap();
        assert!((d - 0.025_668_057_521_414_2).abs() < 1e-15);
        let zeros = Profile::with_inner(eta, vec![0.0]).unwrap();
        assert_eq!(inner_moment_defect(&zeros, eta, &spec()).unwrap(), 0.0);
    }

    #[test]
    fn eval_and_validation() {
        let b = Profile::bathtub(0.2, 2.0).unwrap();
        assert_eq!(b.eval(0.1), -1.0);
        assert_eq!(b.eval(-0.1), 1.0);
        assert_eq!(b.eval(5.0), 1.0);
        assert_eq!(b.eval(-5.0), -1.0);
        assert!(Profile::new(1.0, vec![-1.0, 1.0], vec![1.5], TailRule::SignTails).is_err());
        assert!(Profile::new(1.0, vec![-1.0, 0.0, 0.0, 1.0], vec![0.0; 3], TailRule::SignTails).is_err());
        assert!(Profile::new(1.0, vec![-0.5, 1.0], vec![0.0], TailRule::SignTails).is_err());
    }
}
