//! Gaussian density and distribution function, probabilists' Hermite
//! polynomials, closed-form Gaussian moments, and adaptive panel quadrature
//! against the standard Gaussian weight.
//!
//! Every integral in the crate is of the form `∫ f(z) γ₁(z) dz` where `f` is
//! piecewise smooth with a known, finite set of kinks (the breakpoints of a
//! profile, `±η`, zeros of `B(z) − μz`, ...). The integrator splits the window
//! `[−T, T]` at those kinks and runs a 20-point Gauss–Legendre rule with
//! bisection on each smooth piece, so each panel sees an analytic integrand.

use std::sync::OnceLock;

use crate::error::{domain, ensure_finite, Error, Result};

/// `1/√(2π)`, the standard Gaussian density at the origin.
pub const INV_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
/// `√(2/π)`, the first absolute moment of the standard Gaussian.
pub const SQRT_2_OVER_PI: f64 = 0.797_884_560_802_865_4;

const GL_ORDER: usize = 20;

/// Controls for [`gauss_integrate`] and everything built on it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    /// Half-width `T` of the integration window; mass beyond `|z| > T` is bounded, not integrated.
    pub truncation: f64,
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Maximum number of panel bisections for a single integral.
    pub max_subdivisions: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            truncation: 12.0,
            rel_tol: 1e-12,
            abs_tol: 1e-14,
            max_subdivisions: 200_000,
        }
    }
}

impl QuadratureSpec {
    pub fn new(truncation: f64, rel_tol: f64, abs_tol: f64, max_subdivisions: usize) -> Result<Self> {
        let spec = Self {
            truncation,
            rel_tol,
            abs_tol,
            max_subdivisions,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        const OP: &str = "QuadratureSpec";
        if !(self.truncation >= 8.0) || !self.truncation.is_finite() {
            return Err(domain(OP, format!("truncation must be >= 8, got {}", self.truncation)));
        }
        for (name, tol) in [("rel_tol", self.rel_tol), ("abs_tol", self.abs_tol)] {
            if !(tol > 0.0 && tol <= 1e-6) {
                return Err(domain(OP, format!("{name} must lie in (0, 1e-6], got {tol}")));
            }
        }
        if self.max_subdivisions < 1 {
            return Err(domain(OP, "max_subdivisions must be >= 1"));
        }
        Ok(())
    }
}

/// Standard Gaussian density without input checks. NaN propagates.
#[inline]
pub fn pdf(z: f64) -> f64 {
    INV_SQRT_2PI * (-0.5 * z * z).exp()
}

/// Standard Gaussian distribution function without input checks.
#[inline]
pub fn cdf(t: f64) -> f64 {
    0.5 * libm::erfc(-t * std::f64::consts::FRAC_1_SQRT_2)
}

/// `γ₁([0, x]) = Φ(x) − 1/2`, computed through `erf` to avoid cancellation near 0.
#[inline]
pub fn half_mass(x: f64) -> f64 {
    0.5 * libm::erf(x * std::f64::consts::FRAC_1_SQRT_2)
}

/// Gaussian measure of `[a, b]`, accurate in either tail.
pub fn mass(a: f64, b: f64) -> f64 {
    if a >= 0.0 {
        cdf(-a) - cdf(-b)
    } else if b <= 0.0 {
        cdf(b) - cdf(a)
    } else {
        half_mass(b) - half_mass(a)
    }
}

/// `∫_a^b z γ₁(z) dz = γ₁(a) − γ₁(b)`.
#[inline]
pub fn first_moment(a: f64, b: f64) -> f64 {
    pdf(a) - pdf(b)
}

/// `∫_a^b H₃(z) γ₁(z) dz = H₂(a)γ₁(a) − H₂(b)γ₁(b)`.
#[inline]
pub fn h3_moment(a: f64, b: f64) -> f64 {
    (a * a - 1.0) * pdf(a) - (b * b - 1.0) * pdf(b)
}

/// `γ₁(z) = e^{−z²/2}/√(2π)`.
pub fn gaussian_pdf(z: f64) -> Result<f64> {
    ensure_finite("gaussian_pdf", "z", z)?;
    Ok(pdf(z))
}

/// `Φ(t) = ∫_{−∞}^t γ₁`.
pub fn gaussian_cdf(t: f64) -> Result<f64> {
    ensure_finite("gaussian_cdf", "t", t)?;
    Ok(cdf(t))
}

/// Probabilists' Hermite polynomial `H_k(z)` for `k ≤ 3`.
pub fn hermite_eval(k: u32, z: f64) -> Result<f64> {
    match k {
        0 => Ok(1.0),
        1 => Ok(z),
        2 => Ok(z * z - 1.0),
        3 => Ok(z * (z * z - 3.0)),
        _ => Err(domain("hermite_eval", format!("only degrees 0..=3 are supported, got {k}"))),
    }
}

#[inline]
pub(crate) fn h3(z: f64) -> f64 {
    z * (z * z - 3.0)
}

/// `∫_η^∞ z γ₁(z) dz = γ₁(η)`.
pub fn tail_first_moment(eta: f64) -> Result<f64> {
    check_nonneg("tail_first_moment", eta)?;
    Ok(pdf(eta))
}

/// `B = 2∫_η^∞ H₃(z) γ₁(z) dz = −2(1 − η²) γ₁(η)`.
pub fn h3_tail_integral(eta: f64) -> Result<f64> {
    check_nonneg("h3_tail_integral", eta)?;
    Ok(-2.0 * (1.0 - eta * eta) * pdf(eta))
}

fn check_nonneg(op: &'static str, eta: f64) -> Result<()> {
    ensure_finite(op, "eta", eta)?;
    if eta < 0.0 {
        return Err(domain(op, format!("eta must be >= 0, got {eta}")));
    }
    Ok(())
}

/// Value of a quadrature together with its accumulated error estimate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
    pub subdivisions: usize,
}

struct GaussLegendre {
    nodes: [f64; GL_ORDER],
    weights: [f64; GL_ORDER],
}

fn gauss_legendre() -> &'static GaussLegendre {
    static RULE: OnceLock<GaussLegendre> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = GL_ORDER;
        let mut nodes = [0.0; GL_ORDER];
        let mut weights = [0.0; GL_ORDER];
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        GaussLegendre { nodes, weights }
    })
}

fn panel<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> f64 {
    let rule = gauss_legendre();
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut sum = 0.0;
    for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
        let z = mid + half * x;
        sum += w * f(z) * pdf(z);
    }
    sum * half
}

/// Adaptive quadrature of `∫_lo^hi f(z) γ₁(z) dz`, with `lo`/`hi` clipped to `[−T, T]`.
///
/// `kinks` are points where `f` may fail to be smooth; panels are aligned to
/// them. When the window is clipped, the discarded Gaussian mass times a
/// crude bound on `|f|` at the cut is added to the error estimate.
pub fn integrate_gaussian<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    kinks: &[f64],
    spec: &QuadratureSpec,
) -> Result<Estimate> {
    if lo.is_nan() || hi.is_nan() || lo > hi {
        return Err(domain("gauss_integrate", format!("invalid interval [{lo}, {hi}]")));
    }
    let t = spec.truncation;
    let a = lo.max(-t);
    let b = hi.min(t);
    let mut tail = 0.0;
    if lo < -t {
        tail += cdf(-t) * (1.0 + f(-t).abs());
    }
    if hi > t {
        tail += cdf(-t) * (1.0 + f(t).abs());
    }
    if a >= b {
        return Ok(Estimate {
            value: 0.0,
            error: tail,
            subdivisions: 0,
        });
    }

    let mut cuts: Vec<f64> = Vec::with_capacity(kinks.len() + 2);
    cuts.push(a);
    cuts.extend(kinks.iter().copied().filter(|k| *k > a && *k < b));
    cuts.push(b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup();

    let width = b - a;
    let mut stack: Vec<(f64, f64, f64)> = cuts
        .windows(2)
        .filter(|w| w[1] > w[0])
        .map(|w| (w[0], w[1], panel(&f, w[0], w[1])))
        .collect();

    let mut value = 0.0;
    let mut error = tail;
    let mut subdivisions = 0usize;
    let mut exhausted = false;
    while let Some((x0, x1, whole)) = stack.pop() {
        let m = 0.5 * (x0 + x1);
        let left = panel(&f, x0, m);
        let right = panel(&f, m, x1);
        let refined = left + right;
        let diff = (refined - whole).abs();
        let allowed = (spec.abs_tol * (x1 - x0) / width).max(spec.rel_tol * refined.abs());
        if diff <= allowed || m <= x0 || m >= x1 || exhausted {
            value += refined;
            error += diff;
            continue;
        }
        if subdivisions >= spec.max_subdivisions {
            exhausted = true;
            value += refined;
            error += diff;
            continue;
        }
        subdivisions += 1;
        stack.push((x0, m, left));
        stack.push((m, x1, right));
    }
    if exhausted {
        return Err(Error::Accuracy {
            estimate: value,
            error_bound: error,
            subdivisions,
        });
    }
    Ok(Estimate {
        value,
        error,
        subdivisions,
    })
}

/// `∫_ℝ f(z) γ₁(z) dz`.
pub fn gauss_integrate<F: Fn(f64) -> f64>(f: F, kinks: &[f64], spec: &QuadratureSpec) -> Result<f64> {
    integrate_gaussian(f, f64::NEG_INFINITY, f64::INFINITY, kinks, spec).map(|e| e.value)
}

/// `∫_lo^hi f(z) γ₁(z) dz`.
pub fn gauss_integrate_on<F: Fn(f64) -> f64>(
    f: F,
    lo: f64,
    hi: f64,
    kinks: &[f64],
    spec: &QuadratureSpec,
) -> Result<f64> {
    integrate_gaussian(f, lo, hi, kinks, spec).map(|e| e.value)
}

/// Mills ratio `Φ(−a)/γ₁(a)` for `a ≥ 0`, finite for arguments where both
/// numerator and denominator underflow.
pub fn mills_ratio(a: f64) -> f64 {
    if a < 6.0 {
        return cdf(-a) / pdf(a);
    }
    // Lentz evaluation of 1/(a + 1/(a + 2/(a + 3/(a + ...)))).
    let tiny = 1e-300;
    let mut f = a;
    let mut c = a;
    let mut d = 0.0;
    for k in 1..500 {
        let kf = k as f64;
        d = a + kf * d;
        if d.abs() < tiny {
            d = tiny;
        }
        c = a + kf / c;
        if c.abs() < tiny {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-16 {
            break;
        }
    }
    1.0 / f
}

/// `ln Φ(−a)` for `a ≥ 0`, without underflow.
pub fn log_upper_tail(a: f64) -> f64 {
    mills_ratio(a).ln() - 0.5 * a * a + INV_SQRT_2PI.ln()
}
