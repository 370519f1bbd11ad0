//! Interval re-evaluation of the headline constants and the final chain.
//!
//! Roots are certified by strict sign changes of an interval-evaluated function
//! that is monotone on the bracket. Decimal constants enter as one-ulp
//! enclosures of their correctly rounded doubles.

use crate::chain::{
    ChainReport, DROP_NEAR_COEFF, FAR_ALPHA_ERR, FAR_ALPHA_GAP, FAR_D, K0, KAPPA0, L0, P3_COEFF,
};
use crate::error::{domain, Error, Result};
use crate::interval::Interval;
use crate::reeds::{solve_eta_star, LAMBDA_OPT, LAMBDA_STAR};

/// What a certified quantity must satisfy.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Requirement {
    Within { target: f64, tol: f64 },
    Above(f64),
    Below(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedCheck {
    pub criterion: u8,
    pub name: String,
    pub enclosure: Interval,
    pub requirement: Requirement,
    pub passed: bool,
}

impl CertifiedCheck {
    pub fn new(criterion: u8, name: impl Into<String>, enclosure: Interval, requirement: Requirement) -> Self {
        let d = Interval::decimal;
        let passed = match requirement {
            Requirement::Within { target, tol } => {
                enclosure.certainly_gt(&(d(target) - d(tol))) && enclosure.certainly_lt(&(d(target) + d(tol)))
            }
            Requirement::Above(b) => enclosure.certainly_gt(&d(b)),
            Requirement::Below(b) => enclosure.certainly_lt(&d(b)),
        };
        Self { criterion, name: name.into(), enclosure, requirement, passed }
    }
}

fn p(x: f64) -> Interval {
    Interval::point(x)
}

fn d(x: f64) -> Interval {
    Interval::decimal(x)
}

/// Smallest symmetric bracket around `guess` on which the increasing function `g` changes sign strictly.
pub fn certified_root<G>(g: G, guess: f64) -> Result<Interval>
where
    G: Fn(Interval) -> Result<Interval>,
{
    let mut w = (guess.abs() * 4.0 * f64::EPSILON).max(1e-300);
    for _ in 0..80 {
        let (a, b) = (guess - w, guess + w);
        if g(p(a))?.hi() < 0.0 && g(p(b))?.lo() > 0.0 {
            return Interval::new(a, b);
        }
        w *= 2.0;
    }
    Err(Error::Consistency(format!("no certified sign change near {guess}")))
}

/// `√(2/π) η e^{−η²/2} − λ`, increasing for `η ∈ (0, 1)`.
fn reeds_equation(eta: Interval, lambda: Interval) -> Result<Interval> {
    Ok(p(2.0) * eta * eta.pdf()? - lambda)
}

/// Enclosure of the root `η ∈ (0, 1)` of `√(2/π) η e^{−η²/2} = λ`.
pub fn eta_star_enclosure(lambda: Interval) -> Result<Interval> {
    let guess = solve_eta_star(lambda.mid())?;
    let h = certified_root(|e| reeds_equation(e, lambda), guess)?;
    if !(h.lo() > 0.0 && h.hi() < 1.0) {
        return Err(domain("eta_star_enclosure", "root left (0, 1)"));
    }
    Ok(h)
}

/// `(1 − λ)/((λ/η)² + λ(1 − 4Φ(−η)))` over enclosures of `λ` and `η`.
pub fn davie_reeds_enclosure(lambda: Interval, eta: Interval) -> Result<Interval> {
    let den = lambda.div(&eta)?.sqr() + lambda * (p(1.0) - p(4.0) * (-eta).cdf()?);
    (p(1.0) - lambda).div(&den)
}

/// Enclosure of the maximizing `λ`: the root of `4γ₁(η)² + 1 − 4Φ(−η)` mapped through `λ = 2ηγ₁(η)`.
pub fn optimal_lambda_enclosure() -> Result<Interval> {
    let guess = solve_eta_star(LAMBDA_OPT)?;
    let h = certified_root(
        |e| Ok(p(4.0) * e.pdf()?.sqr() + p(1.0) - p(4.0) * (-e).cdf()?),
        guess,
    )?;
    Ok(p(2.0) * h * h.pdf()?)
}

/// Certified pairing constants at `η`, in the order
/// `B, A_max, κ_Q, p, s₁, t₂, transverse, pairing lower bound`.
pub fn pairing_enclosures(eta: Interval) -> Result<[(&'static str, Interval); 8]> {
    let g0 = p(0.0).pdf()?;
    let g = eta.pdf()?;
    let eta2 = eta.sqr();
    let b = -(p(2.0) * (p(1.0) - eta2) * g);
    let a_max = eta2 * (g0 - g);
    let kappa = (b.sqr() - a_max.sqr()).div(&p(6.0))?;
    let pp = p(2.0) * eta.cdf()? - p(1.0);
    let s1 = p(2.0) * (g0 - g);
    let t2 = pp - p(2.0) * eta * g;
    let transverse = pp.sqr() + s1.sqr() + p(0.5) * t2.sqr();
    Ok([
        ("B", b),
        ("A_max", a_max),
        ("kappa_Q", kappa),
        ("p", pp),
        ("s1", s1),
        ("t2", t2),
        ("transverse", transverse),
        ("pairing_lower", kappa - transverse),
    ])
}

/// `κ₀ − 3.87ε(ln(2/ε))^{3/2} − 2^{3/2}[εL₀(λ + ½ln(2/ε))]^{1/4}K₀` with the rounded constants.
pub fn kappa_eff_enclosure(epsilon: Interval) -> Result<Interval> {
    let l = p(2.0).div(&epsilon)?.ln()?;
    let p3 = d(P3_COEFF) * epsilon * l * l.sqrt()?;
    let inner = epsilon * d(L0) * (d(LAMBDA_STAR) + p(0.5) * l);
    let stab = p(2.0) * p(2.0).sqrt()? * inner.sqrt()?.sqrt()?;
    Ok(d(KAPPA0) - p3 - stab * d(K0))
}

/// `neighborhood_drop/β = κ_eff − K_strip β^ρ − 2exp(−½e^{−2/3}β^{−(2/3)(1−ρ)} − ½)` at the standard parameters.
pub fn near_drop_ratio_enclosure(beta: Interval) -> Result<Interval> {
    let rho = d(0.7);
    let alpha_min = d(0.6);
    let t = beta.pow(&rho)?;
    let z0 = p(1.0).div(&p(3.0))? + t.div(&alpha_min)?;
    if !z0.certainly_gt(&(d(LAMBDA_STAR) + t).div(&alpha_min)?) {
        return Err(domain("near_drop_ratio_enclosure", "z0 is not certainly above (lambda + beta^rho)/alpha_min"));
    }
    // H₃²/6 + H₂²/2 + z² + 1 is increasing in |z|, so its supremum on [−z₀, z₀] is at z₀.
    let z2 = z0.sqr();
    let h3 = z0 * (z2 - p(3.0));
    let h2 = z2 - p(1.0);
    let c = h3.sqr().div(&p(6.0))? + p(0.5) * h2.sqr() + z2 + p(1.0);
    let k_strip = p(8.0) * c.sqrt()?.div(&(alpha_min * (p(2.0) * Interval::pi()).sqrt()?))?;
    let expo = (-(p(2.0).div(&p(3.0))? * (p(1.0) - rho))) * beta.ln()?;
    let arg = -(p(0.5) * (-(p(2.0).div(&p(3.0))?)).exp()? * expo.exp()?) - p(0.5);
    Ok(kappa_eff_enclosure(d(1e-7))? - k_strip * t - p(2.0) * arg.exp()?)
}

/// Interval version of the final chain at `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifiedChain {
    pub kappa_eff: Interval,
    pub near_drop_ratio: Interval,
    pub branches: [Interval; 3],
    pub final_drop: Interval,
    pub kg_increment: Interval,
    pub bound_c: Interval,
    /// Midpoint summary with `certified` set when every strict inequality holds.
    pub report: ChainReport,
}

pub fn certified_chain(beta: f64) -> Result<CertifiedChain> {
    if !(beta > 0.0 && beta < 1e-10) {
        return Err(domain("certified_chain", format!("beta must lie in (0, 1e-10), got {beta}")));
    }
    let b = d(beta);
    let lambda = d(LAMBDA_STAR);
    let kappa = kappa_eff_enclosure(d(1e-7))?;
    let ratio = near_drop_ratio_enclosure(b)?;

    let (dd, a) = (d(FAR_D), d(FAR_ALPHA_ERR));
    let first = dd * (lambda.div(&p(8.0))? - a);
    let inner = dd * (p(1.0) - p(4.0) * a).div(&p(8.0))? - d(6.4) * a;
    let second = d(0.98).div(&p(8.0))? * inner.sqr();
    let gap = first.min(&second);

    let branches = [-(d(DROP_NEAR_COEFF) * b), b - d(FAR_ALPHA_GAP), b - gap];
    let max = branches[0].max(&branches[1]).max(&branches[2]);
    let final_drop = -max;
    let c = davie_reeds_enclosure(lambda, eta_star_enclosure(lambda)?)?;
    let kg = c.sqr() * final_drop.div(&(p(1.0) - lambda))?;

    let certified = ratio.certainly_gt(&d(DROP_NEAR_COEFF)) && final_drop.lo() > 0.0 && kg.lo() > 0.0;
    let report = ChainReport {
        kappa_eff: kappa.mid(),
        drop_near_coeff: DROP_NEAR_COEFF,
        branches: [branches[0].mid(), branches[1].mid(), branches[2].mid()],
        beta_star: beta,
        final_drop: final_drop.mid(),
        kg_increment: (final_drop.lo() > 0.0).then(|| kg.mid()),
        certified,
    };
    Ok(CertifiedChain {
        kappa_eff: kappa,
        near_drop_ratio: ratio,
        branches,
        final_drop,
        kg_increment: kg,
        bound_c: c,
        report,
    })
}

/// Certified checks for the baseline, the Reeds point, the pairing constants,
/// the neighbourhood drop and the final chain, tagged 1, 2, 3, 6, 7.
pub fn certify_criteria() -> Result<Vec<CertifiedCheck>> {
    use Requirement::*;
    let lambda = d(LAMBDA_STAR);
    let eta = eta_star_enclosure(lambda)?;
    let mut out = vec![
        CertifiedCheck::new(1, "davie_reeds_bound", davie_reeds_enclosure(lambda, eta)?, Within { target: 1.676_956_674_215_576, tol: 1e-12 }),
        CertifiedCheck::new(1, "optimize_lambda", optimal_lambda_enclosure()?, Within { target: 0.197_479_090_994_981_96, tol: 1e-8 }),
        CertifiedCheck::new(2, "eta_star", eta, Within { target: 0.255_730_213_173_163, tol: 1e-11 }),
        CertifiedCheck::new(2, "alpha_star", lambda.div(&eta)?, Within { target: 0.772_216_503_281_451, tol: 1e-11 }),
    ];
    let targets = [
        -0.721_715_133_242_779,
        0.000_839_319_067_615,
        0.086_812_004_849_191,
        0.201_840_836_034_193,
        0.025_668_057_521_414_2,
        0.004_361_745_034_193_17,
        0.041_408_084_677_776_3,
        0.045_403_920_2,
    ];
    for ((name, enc), target) in pairing_enclosures(eta)?.into_iter().zip(targets) {
        out.push(CertifiedCheck::new(3, name, enc, Within { target, tol: 1e-9 }));
    }
    out.push(CertifiedCheck::new(6, "kappa_eff(1e-7)", kappa_eff_enclosure(d(1e-7))?, Above(0.0058)));
    for beta in [1e-10, 8e-25] {
        out.push(CertifiedCheck::new(
            6,
            format!("neighborhood_drop/beta at beta={beta:e}"),
            near_drop_ratio_enclosure(d(beta))?,
            Above(DROP_NEAR_COEFF),
        ));
    }
    let chain = certified_chain(8e-25)?;
    out.push(CertifiedCheck::new(7, "final_drop", chain.final_drop, Within { target: 4.56e-27, tol: 1e-30 }));
    out.push(CertifiedCheck::new(7, "kg_increment", chain.kg_increment, Above(1.596e-26)));
    out.push(CertifiedCheck::new(7, "kg_increment vs 1e-26", chain.kg_increment, Above(1e-26)));
    Ok(out)
}
