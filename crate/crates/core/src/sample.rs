//! Random profile generators for property tests and verification suites.

use rand::Rng;

use crate::error::{domain, Error, Result};
use crate::gauss::{QuadratureSpec, SQRT_2_OVER_PI};
use crate::profile::{moment, moment_exact, repair_to_theta, Profile, TailRule, FEASIBILITY_TOL};
use crate::reeds::ReedsParams;

fn random_value<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    if rng.random_bool(0.3) {
        if rng.random_bool(0.5) { 1.0 } else { -1.0 }
    } else {
        rng.random_range(-1.0..=1.0)
    }
}

/// Random values on a uniform grid of `cells` cells over `[−z_cut, z_cut]`, with
/// sign tails half the time and random constant tails otherwise.
pub fn random_profile<R: Rng + ?Sized>(rng: &mut R, z_cut: f64, cells: usize) -> Result<Profile> {
    let tail = if rng.random_bool(0.5) {
        TailRule::SignTails
    } else {
        TailRule::ExplicitConstant { left: random_value(rng), right: random_value(rng) }
    };
    let values = (0..cells).map(|_| random_value(rng)).collect();
    let step = 2.0 * z_cut / cells as f64;
    let bps = (0..=cells).map(|i| if i == cells { z_cut } else { -z_cut + step * i as f64 }).collect();
    Profile::new(z_cut, bps, values, tail)
}

/// A random profile blended toward `±sign(z)` so that its moment equals `params.alpha()`.
pub fn random_feasible_profile<R: Rng + ?Sized>(
    rng: &mut R,
    params: &ReedsParams,
    cells: usize,
    spec: &QuadratureSpec,
) -> Result<Profile> {
    const OP: &str = "random_feasible_profile";
    let alpha = params.alpha();
    if alpha >= SQRT_2_OVER_PI {
        return Err(domain(OP, format!("alpha = {alpha} exceeds the largest attainable moment")));
    }
    let z_cut = params.eta().max(1.0) + 3.0;
    let base = random_profile(rng, z_cut, cells)?.refined(&[0.0])?;
    let m0 = moment_exact(&base, f64::NEG_INFINITY, f64::INFINITY);
    let (target, t) = if m0 <= alpha {
        (1.0, (alpha - m0) / (SQRT_2_OVER_PI - m0))
    } else {
        (-1.0, (m0 - alpha) / (m0 + SQRT_2_OVER_PI))
    };
    let (l, r) = base.tail().values();
    let tail_l = (1.0 - t) * l - t * target;
    let tail_r = (1.0 - t) * r + t * target;
    let tail = if tail_l == -1.0 && tail_r == 1.0 {
        TailRule::SignTails
    } else {
        TailRule::ExplicitConstant { left: tail_l, right: tail_r }
    };
    let blended = Profile::from_breakpoints_fn(base.breakpoints().to_vec(), tail, |z| {
        ((1.0 - t) * base.eval(z) + t * target * z.signum()).clamp(-1.0, 1.0)
    })?;
    let residual = moment(&blended, spec)? - alpha;
    if residual.abs() > FEASIBILITY_TOL {
        return Err(Error::Infeasible { op: OP, residual, detail: "blend missed the target moment".into() });
    }
    Ok(blended)
}

/// Random inner values on `[−η, η]` blended toward `∓sign(z)` to cancel the inner moment; sign tails outside.
pub fn random_zero_moment_inner<R: Rng + ?Sized>(rng: &mut R, eta: f64, cells: usize) -> Result<Profile> {
    let even = cells + cells % 2;
    let base = Profile::with_inner(eta, (0..even).map(|_| random_value(rng)).collect())?;
    let m = moment_exact(&base, -eta, eta);
    let s1 = moment_exact(&Profile::with_inner(eta, vec![-1.0, 1.0])?, -eta, eta);
    let t = m.abs() / (m.abs() + s1);
    let dir = -m.signum();
    let values = base.values().iter().zip(base.breakpoints().windows(2)).map(|(v, w)| {
        let mid = 0.5 * (w[0] + w[1]);
        (1.0 - t) * v + t * dir * mid.signum()
    });
    Profile::with_inner(eta, values.collect())
}

/// A random member of Θ: random inner values repaired to zero inner moment.
pub fn random_theta_member<R: Rng + ?Sized>(rng: &mut R, eta: f64, cells: usize, spec: &QuadratureSpec) -> Result<Profile> {
    let base = Profile::with_inner(eta, (0..cells.max(1)).map(|_| random_value(rng)).collect())?;
    Ok(repair_to_theta(&base, eta, spec)?.0)
}
