//! Property tests for the invariants shared across modules.

use grolab_core::chain::{c_z0_grid, final_chain, kappa_eff, K0, KAPPA0, L0};
use grolab_core::explorer::{r_lambda_beta_norm_1d, r_lambda_norm_1d, sign_ascent, ConditionalNormInput};
use grolab_core::gauss::{gauss_integrate_on, gaussian_cdf, gaussian_pdf, h3_tail_integral, tail_first_moment};
use grolab_core::interval::Interval;
use grolab_core::pairing::{signflip_check, A_bound_check};
use grolab_core::profile::{
    dual_value, gap_certificate, is_theta_member, moment, odd_part, tail_sign_defect, V_value,
};
use grolab_core::reeds::{lambda_max, solve_eta_star, LAMBDA_STAR};
use grolab_core::sample::{random_feasible_profile, random_profile, random_theta_member, random_zero_moment_inner};
use grolab_core::{Profile, QuadratureSpec, ReedsParams};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn star() -> ReedsParams {
    ReedsParams::reeds_point(LAMBDA_STAR).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

proptest! {
    #[test]
    fn pdf_even_and_cdf_symmetric(z in -30.0f64..30.0) {
        prop_assert_eq!(gaussian_pdf(z).unwrap(), gaussian_pdf(-z).unwrap());
        prop_assert!((gaussian_cdf(z).unwrap() + gaussian_cdf(-z).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn cdf_monotone(a in -10.0f64..10.0, d in 0.0f64..5.0) {
        prop_assert!(gaussian_cdf(a).unwrap() <= gaussian_cdf(a + d).unwrap());
    }

    #[test]
    fn closed_forms_match_quadrature(eta in 0.0f64..3.0) {
        let s = spec();
        let m = gauss_integrate_on(|z| z, eta, f64::INFINITY, &[], &s).unwrap();
        prop_assert!((tail_first_moment(eta).unwrap() - m).abs() <= 1e-14f64.max(1e-12 * m.abs()));
        let h = gauss_integrate_on(|z| 2.0 * (z * z * z - 3.0 * z), eta, f64::INFINITY, &[], &s).unwrap();
        prop_assert!((h3_tail_integral(eta).unwrap() - h).abs() <= 1e-13);
    }

    #[test]
    fn eta_star_round_trip(frac in 1e-5f64..0.999) {
        let lambda = frac * lambda_max();
        let eta = solve_eta_star(lambda).unwrap();
        prop_assert!(eta > 0.0 && eta < 1.0);
        let back = (2.0 / std::f64::consts::PI).sqrt() * eta * (-0.5 * eta * eta).exp();
        prop_assert!((back - lambda).abs() < 1e-14);
    }

    #[test]
    fn signflip_inequality(a in -10.0f64..10.0, b in -10.0f64..10.0, beta in 0.0f64..1.0) {
        let (lhs, rhs) = signflip_check(a, b, beta).unwrap();
        prop_assert!(lhs <= rhs + 1e-12);
    }

    #[test]
    fn interval_functions_enclose(x in -50.0f64..50.0, y in 1e-6f64..1e6, e in -2.0f64..2.0) {
        let ex = Interval::point(x).exp().unwrap();
        prop_assert!((ex.mid() - x.exp()).abs() <= ex.width() + 2.0 * f64::EPSILON * x.exp());
        let ly = Interval::point(y).ln().unwrap();
        prop_assert!((ly.mid() - y.ln()).abs() <= ly.width() + 4.0 * f64::EPSILON * y.ln().abs());
        let er = Interval::point(e).erf().unwrap();
        prop_assert!((er.mid() - libm::erf(e)).abs() <= er.width() + 4.0 * f64::EPSILON);
    }

    #[test]
    fn c_z0_grid_converged(z0 in 0.34f64..2.0) {
        let a = c_z0_grid(z0, 100_000).unwrap();
        let b = c_z0_grid(z0, 200_000).unwrap();
        prop_assert!((a - b).abs() < 1e-6);
    }

    #[test]
    fn kappa_eff_decreasing(e1 in 1e-9f64..9.9e-3, f in 1.0001f64..10.0) {
        let e2 = (e1 * f).min(9.99e-3);
        prop_assume!(e2 > e1);
        let k1 = kappa_eff(e1, KAPPA0, K0, L0, LAMBDA_STAR).unwrap();
        let k2 = kappa_eff(e2, KAPPA0, K0, L0, LAMBDA_STAR).unwrap();
        prop_assert!(k2 < k1);
    }

    #[test]
    fn final_drop_increasing(b1 in 1e-27f64..8.8e-25, f in 1.0001f64..2.0) {
        let b2 = (b1 * f).min(9e-25 * 0.994 / 1.0057);
        prop_assume!(b2 > b1);
        prop_assert!(final_chain(b2).unwrap().final_drop > final_chain(b1).unwrap().final_drop);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn profile_text_round_trip(seed in any::<u64>(), cells in 1usize..40) {
        let p = random_profile(&mut rng(seed), 3.5, cells).unwrap();
        prop_assert_eq!(Profile::from_text(&p.to_text()).unwrap(), p);
    }

    #[test]
    fn weak_duality(seed in any::<u64>(), alpha in 0.05f64..0.79, mu in -3.0f64..3.0) {
        let s = spec();
        let params = star().with_alpha(alpha).unwrap();
        let p = random_feasible_profile(&mut rng(seed), &params, 24, &s).unwrap();
        prop_assert!(V_value(&p, &params, &s).unwrap() <= dual_value(mu, &params, &s).unwrap() + 1e-10);
    }

    #[test]
    fn gap_identity(seed in any::<u64>(), shift in -0.009f64..0.009) {
        let s = spec();
        let params = star().with_alpha(star().alpha() + shift).unwrap();
        let p = random_feasible_profile(&mut rng(seed), &params, 24, &s).unwrap();
        let g = gap_certificate(&p, &params, &s).unwrap();
        prop_assert!((g.gap - g.tail_integral).abs() <= 1e-10);
        prop_assert!(g.gap >= -1e-12);
    }

    #[test]
    fn tail_equality(seed in any::<u64>(), eta in 0.05f64..2.0) {
        let s = spec();
        let p = random_profile(&mut rng(seed), 3.0, 30).unwrap();
        let a = tail_sign_defect(&p, eta, &s).unwrap();
        let b = tail_sign_defect(&odd_part(&p), eta, &s).unwrap();
        prop_assert!((a - b).abs() <= 1e-12);
    }

    #[test]
    fn a_bound_on_zero_moment(seed in any::<u64>(), cells in 1usize..30) {
        let s = spec();
        let eta = star().eta();
        let p = random_zero_moment_inner(&mut rng(seed), eta, cells).unwrap();
        let (a, bound) = A_bound_check(&p, eta, &s).unwrap();
        prop_assert!(a <= bound + 1e-15);
    }

    #[test]
    fn repaired_profiles_are_members(seed in any::<u64>(), cells in 1usize..20) {
        let s = spec();
        let eta = star().eta();
        let p = random_theta_member(&mut rng(seed), eta, cells, &s).unwrap();
        prop_assert!(is_theta_member(&p, eta, 1e-12, &s).unwrap());
    }

    #[test]
    fn conditional_norm_matches_v(seed in any::<u64>(), alpha in 0.05f64..0.79) {
        let s = spec();
        let params = star().with_alpha(alpha).unwrap();
        let p = random_feasible_profile(&mut rng(seed), &params, 16, &s).unwrap();
        let input = ConditionalNormInput::new(p.clone(), params, 0.0).unwrap();
        let v = V_value(&p, &params, &s).unwrap();
        prop_assert!((r_lambda_norm_1d(&input, &s).unwrap() - v).abs() < 1e-10);
        prop_assert!((r_lambda_beta_norm_1d(&input, &s).unwrap() - v).abs() < 1e-10);
    }

    #[test]
    fn sign_ascent_nondecreasing(seed in any::<u64>()) {
        let s = spec();
        let start = random_profile(&mut rng(seed), 3.0, 12).unwrap();
        prop_assume!(moment(&start, &s).unwrap().abs() > 1e-3);
        let (_, vals) = sign_ascent(&start, &star(), 4, &s).unwrap();
        for w in vals.windows(2) {
            prop_assert!(w[1] >= w[0] - 1e-12, "{:?}", vals);
        }
    }
}
