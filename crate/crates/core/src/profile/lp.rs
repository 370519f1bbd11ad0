use super::{b_right_tail, Profile, TailRule, V_value};
use crate::error::{domain, Result};
use crate::gauss::{first_moment, pdf, QuadratureSpec, SQRT_2_OVER_PI};
use crate::reeds::{solve_h, ReedsParams};
use crate::roots::bisect;

struct Cell {
    a: f64,
    b: f64,
    mom: f64,
    ratio: f64,
}

/// Maximizes `V(θ)` subject to `∫zθγ₁ = α`, `|θ| ≤ 1` on a grid of `grid_size` cells.
///
/// The problem has one linear constraint, so the optimum is bang-bang. Odd
/// profiles suffice; on the half-line every cell starts at `−1` and cells are
/// flipped to `+1` in decreasing order of `∫Bγ₁ / ∫zγ₁` (ties broken by
/// larger `z`). The cell that would overshoot is split at a threshold found by
/// bisection so the constraint holds exactly.
pub fn lp_maximize(params: &ReedsParams, grid_size: usize, spec: &QuadratureSpec) -> Result<(Profile, f64)> {
    const OP: &str = "lp_maximize";
    if grid_size < 64 {
        return Err(domain(OP, format!("grid_size must be >= 64, got {grid_size}")));
    }
    let alpha = params.alpha();
    if alpha >= SQRT_2_OVER_PI {
        return Err(domain(OP, format!("alpha = {alpha} exceeds sqrt(2/pi)")));
    }
    let eta = params.eta();
    let h = solve_h(alpha)?;
    let z_cut = eta.max(h) + 1.0;

    let half = grid_size / 2;
    let mut edges: Vec<f64> = (0..=half).map(|i| z_cut * i as f64 / half as f64).collect();
    edges[half] = z_cut;
    if eta < z_cut {
        edges.push(eta);
    }
    super::sort_dedup(&mut edges);

    let b_cell = |a: f64, b: f64| -> f64 {
        // ∫_a^b Bγ₁ on the half-line: −α z below η, −λ above.
        let lo = first_moment(a.min(eta), b.min(eta));
        let hi = crate::gauss::mass(a.max(eta), b.max(eta));
        -alpha * lo - params.lambda() * hi
    };
    let mut cells: Vec<Cell> = edges
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let obj = b_cell(a, b);
            let mom = first_moment(a, b);
            let ratio = if b <= eta { -alpha } else { obj / mom };
            Cell { a, b, mom, ratio }
        })
        .collect();
    let tail_obj = b_right_tail(z_cut, params);
    let tail_mom = pdf(z_cut);
    cells.push(Cell {
        a: z_cut,
        b: f64::INFINITY,
        mom: tail_mom,
        ratio: tail_obj / tail_mom,
    });
    cells.sort_by(|x, y| y.ratio.partial_cmp(&x.ratio).unwrap().then(y.a.partial_cmp(&x.a).unwrap()));

    // Half-line values; odd extension doubles every contribution.
    let mut moment = -2.0 * cells.iter().map(|c| c.mom).sum::<f64>();
    let mut plus: Vec<(f64, f64)> = Vec::new();
    let mut split: Option<(f64, f64, f64)> = None;
    for c in &cells {
        if moment + 4.0 * c.mom <= alpha {
            moment += 4.0 * c.mom;
            plus.push((c.a, c.b));
            continue;
        }
        let need = alpha - moment;
        let (a, b) = (c.a, c.b);
        let t = bisect(|t| 4.0 * first_moment(t, b) - need, a, b, 0.0)?;
        split = Some((a, t, b));
        break;
    }

    let value_at = |z: f64| -> f64 {
        if plus.iter().any(|&(a, b)| z > a && z < b) {
            return 1.0;
        }
        if let Some((_, t, b)) = split {
            if z > t && z < b {
                return 1.0;
            }
        }
        -1.0
    };
    let mut half_edges: Vec<f64> = edges.clone();
    if let Some((_, t, _)) = split {
        half_edges.push(t);
    }
    super::sort_dedup(&mut half_edges);
    let mut bps: Vec<f64> = half_edges.iter().rev().map(|z| -z).collect();
    bps.extend(half_edges.iter().skip(1).copied());
    bps.dedup();
    let right_tail_plus = plus.iter().any(|&(_, b)| b.is_infinite());
    let tail = if right_tail_plus {
        TailRule::SignTails
    } else {
        TailRule::ExplicitConstant { left: 1.0, right: -1.0 }
    };
    let profile = Profile::from_breakpoints_fn(bps, tail, |z| if z >= 0.0 { value_at(z) } else { -value_at(-z) })?;
    let value = V_value(&profile, params, spec)?;
    Ok((profile, value))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::profile::{moment, F_value_dual};
    use crate::reeds::LAMBDA_STAR;

    #[test]
    fn reeds_point_value() {
        let p = ReedsParams::reeds_point(LAMBDA_STAR).unwrap();
        let s = QuadratureSpec::default();
        let (prof, v) = lp_maximize(&p, 4096, &s).unwrap();
        assert!((v - 0.478_557_926_593_656).abs() < 1e-10);
        assert!((moment(&prof, &s).unwrap() - p.alpha()).abs() < 1e-12);
        let step = 2.0 * prof.z_cut() / 4096.0;
        for w in prof.breakpoints().windows(2) {
            let m = 0.5 * (w[0] + w[1]);
            if m.abs() > p.eta() + step {
                assert_eq!(prof.eval(m), m.signum());
            }
        }
    }

    #[test]
    fn off_center_alpha_matches_dual() {
        let s = QuadratureSpec::default();
        for d in [0.005, -0.005] {
            let p0 = ReedsParams::reeds_point(LAMBDA_STAR).unwrap();
            let p = p0.with_alpha(p0.alpha() + d).unwrap();
            let (_, v) = lp_maximize(&p, 1024, &s).unwrap();
            assert!((v - F_value_dual(&p, &s).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn small_alpha_gives_bathtub() {
        let p = ReedsParams::new(LAMBDA_STAR, 0.3).unwrap();
        let h = solve_h(0.3).unwrap();
        assert!(h > p.eta());
        let s = QuadratureSpec::default();
        let (prof, v) = lp_maximize(&p, 512, &s).unwrap();
        let expected = Profile::bathtub(h, prof.z_cut()).unwrap();
        let ve = V_value(&expected, &p, &s).unwrap();
        assert!((v - ve).abs() < 1e-12);
        for z in [0.5 * h, 0.99 * h, 1.01 * h, 2.0 * h] {
            assert_eq!(prof.eval(z), expected.eval(z));
            assert_eq!(prof.eval(-z), expected.eval(-z));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let p = ReedsParams::reeds_point(LAMBDA_STAR).unwrap();
        let s = QuadratureSpec::default();
        assert!(lp_maximize(&p, 32, &s).is_err());
        assert!(lp_maximize(&ReedsParams::new(0.2, 0.8).unwrap(), 128, &s).is_err());
    }
}
