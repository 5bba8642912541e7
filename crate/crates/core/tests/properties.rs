//! Invariant checks: monotonicity, linearity, bounds, round trips, and
//! algebraic identities, driven by proptest where randomization helps.

use proptest::prelude::*;
use sampleplan::filter::{solve_time_constant, RcCascade, ResponseDomain};
use sampleplan::harmonic::{forward_difference, mean_square, velocity_estimate};
use sampleplan::planner::{build_plan, combine_plans, optimize_n, PlanRequest, SamplingPlan};
use sampleplan::price_quality::{quality_error, PricingParams};
use sampleplan::sim::{alias_frequency, closed_form_error_k1, empirical_error_with, SimConfig};
use std::f64::consts::{PI, TAU};

#[test]
fn quality_error_strictly_decreases_to_zero() {
    let mut prev = quality_error(1).unwrap();
    assert_eq!(prev, 2.0);
    for n in 2..=10_000 {
        let r = quality_error(n).unwrap();
        assert!(r < prev, "r({n}) = {r} did not decrease from {prev}");
        if n >= 2 {
            assert!((0.0..=1.0).contains(&r));
        }
        prev = r;
    }
    assert!(prev < 5e-8);
}

#[test]
fn velocity_returns_factorial_for_monomials() {
    // t stays on the dt scale so the k-th difference is well conditioned
    for k in 1..=4u32 {
        let factorial: f64 = (1..=k).map(|i| i as f64).product();
        for &dt in &[1e-3, 1e-1] {
            for &t in &[0.0, dt, 5.0 * dt] {
                let v = velocity_estimate(|u| u.powi(k as i32), k, dt, t).unwrap();
                assert!(
                    (v - factorial).abs() / factorial < 1e-10,
                    "k={k} dt={dt} t={t}: {v}"
                );
            }
        }
    }
}

#[test]
fn velocity_error_halves_with_the_step() {
    // first-order forward difference: error ~ (dt/2)·f'' at fixed t
    let f = 1.0;
    let signal = |t: f64| (TAU * f * t).cos();
    let exact = |t: f64| -TAU * f * (TAU * f * t).sin();
    for &t in &[0.0, 0.13, 0.31] {
        let dt1 = 1e-3 / f;
        let dt2 = 5e-4 / f;
        let e1 = (velocity_estimate(signal, 1, dt1, t).unwrap() - exact(t)).abs();
        let e2 = (velocity_estimate(signal, 1, dt2, t).unwrap() - exact(t)).abs();
        let ratio = e1 / e2;
        assert!((1.6..=2.4).contains(&ratio), "t={t}: ratio {ratio}");
    }
}

#[test]
fn power_response_strictly_decreases_on_log_grid() {
    let filt = RcCascade::new(2, 5.12e-5).unwrap();
    let mut prev = filt.power_response(1e-3).unwrap();
    for i in 1..=120 {
        let f = 1e-3 * (10f64).powf(i as f64 / 12.0);
        let p = filt.power_response(f).unwrap();
        assert!(p < prev, "response not decreasing at {f} Hz");
        prev = p;
    }
}

#[test]
fn time_constant_round_trips_to_half_power() {
    for links in 1..=6u32 {
        for &f_half in &[0.5, 60.0, 2000.0, 1.5e6] {
            let t = solve_time_constant(links, f_half).unwrap();
            let filt = RcCascade::new(links, t).unwrap();
            let p = filt.power_response(f_half).unwrap();
            assert!((p - 0.5).abs() < 1e-10, "links={links} f={f_half}: {p}");
        }
    }
}

#[test]
fn mean_square_is_phase_invariant_over_whole_periods() {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let f = 1.7;
    let reference = mean_square(|t| (TAU * f * t).cos(), 0.0, 3.0 / f, 4096).unwrap();
    for _ in 0..10 {
        let theta: f64 = rng.gen_range(0.0..TAU);
        let ms = mean_square(|t| (TAU * f * t + theta).cos(), 0.0, 3.0 / f, 4096).unwrap();
        assert!((ms - reference).abs() / reference < 1e-9, "theta={theta}");
        assert!((ms - 0.5).abs() < 1e-9);
    }
}

#[test]
fn simulator_gap_is_negative_for_centered_comparison() {
    // the centered (alpha = 1/2) empirical error sits below the model term
    for n in 2..=60u32 {
        let mut cfg = SimConfig::new(1, n, 1000.0);
        cfg.alpha = 0.5;
        let report = sampleplan::sim::empirical_error(&cfg).unwrap();
        assert!(report.gap < 0.0, "n={n}: gap {}", report.gap);
    }
}

#[test]
fn simulator_is_phase_invariant() {
    let cfg = SimConfig::new(1, 5, 1000.0);
    let base = sampleplan::sim::empirical_error(&cfg).unwrap().r_empirical;
    for &theta in &[0.3, 1.0, 2.5, -0.7] {
        let probe = sampleplan::Harmonic::new(1.0, cfg.probe_freq_hz, theta).unwrap();
        let sum = sampleplan::HarmonicSum::new(vec![probe]).unwrap();
        let deriv = sum.derivative(cfg.order_k);
        let r = empirical_error_with(&cfg, |t| sum.eval(t), |t| deriv.eval(t))
            .unwrap()
            .r_empirical;
        assert!((r - base).abs() < 1e-8, "theta={theta}: {r} vs {base}");
    }
}

#[test]
fn raising_the_adc_budget_never_hurts() {
    let f_p = 9120.0;
    let mut prev_j = f64::INFINITY;
    let mut prev_hi = 0;
    for &f_adc in &[2.5e4, 5e4, 1e5, 5e5, 2e6] {
        let params = PricingParams::new(1, f_p, f_adc).unwrap();
        assert!(params.n_max_floor() >= prev_hi);
        prev_hi = params.n_max_floor();
        let n = optimize_n(&params).unwrap();
        let j = params.total(n).unwrap().j;
        assert!(j <= prev_j + 1e-15, "f_adc={f_adc}: J {j} rose from {prev_j}");
        prev_j = j;
    }
}

fn amplitude_strategy() -> impl Strategy<Value = f64> {
    -5.0..5.0f64
}

proptest! {
    #[test]
    fn forward_difference_is_linear(
        a in amplitude_strategy(),
        b in amplitude_strategy(),
        t in -2.0..2.0f64,
        k in 1..4u32,
    ) {
        let dt = 0.05;
        let f = |u: f64| (1.3 * u).sin();
        let g = |u: f64| u * u - 0.4 * u;
        let lhs = forward_difference(|u| a * f(u) + b * g(u), k, dt, t).unwrap();
        let rhs = a * forward_difference(f, k, dt, t).unwrap()
            + b * forward_difference(g, k, dt, t).unwrap();
        prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs.abs().max(rhs.abs())));
    }

    #[test]
    fn price_is_linear_and_bounded(
        f_p in 1.0..1e6f64,
        ratio in 4.0..1e4f64,
        seed in 0u64..1000,
    ) {
        let f_adc = f_p * ratio;
        let params = PricingParams::new(0, f_p, f_adc).unwrap();
        let hi = params.n_max_floor();
        let n = 1 + (seed as u32) % (hi / 2).max(1);
        let p1 = params.price(n).unwrap();
        let p2 = params.price(2 * n).unwrap();
        // doubling N doubles the price exactly
        prop_assert_eq!(2.0 * p1, p2);
        prop_assert!(p1 > 0.0 && p1 <= 1.0);
        let p_hi = params.price(hi).unwrap();
        prop_assert!(p_hi > 0.0 && p_hi <= 1.0);
    }

    #[test]
    fn functional_point_identities_hold(
        f_p in 1.0..1e6f64,
        ratio in 2.0..1e3f64,
        seed in 0u64..1000,
    ) {
        let params = PricingParams::new(1, f_p, f_p * ratio).unwrap();
        let hi = params.n_max_floor();
        let n = 1 + (seed as u32) % hi;
        let pt = params.total(n).unwrap();
        // decomposition is bit-exact: j is literally the sum of its parts
        prop_assert_eq!(pt.j, pt.r + pt.j2);
        prop_assert!((pt.dt_s * 2.0 * f_p * n as f64 - 1.0).abs() < 1e-12);
        prop_assert!((0.0..=2.0).contains(&pt.r));
    }

    #[test]
    fn cutoff_round_trip_random(
        t_exp in -6.0..0.0f64,
        links in 1..5u32,
        f_ratio in -1.5..1.5f64,
    ) {
        let t = (10f64).powf(t_exp);
        let filt = RcCascade::new(links, t).unwrap();
        let f_star = filt.half_power_hz() * (10f64).powf(f_ratio);
        let level = filt.power_response(f_star).unwrap();
        prop_assume!(level > 0.0 && level < 1.0);
        let back = filt.solve_cutoff(level, ResponseDomain::Power).unwrap();
        prop_assert!((back - f_star).abs() / f_star < 1e-8);
    }

    #[test]
    fn alias_folds_into_the_first_zone(
        f in 0.0..1e7f64,
        f_s in 1.0..1e6f64,
    ) {
        let folded = alias_frequency(f, f_s).unwrap();
        prop_assert!(folded >= 0.0 && folded <= f_s / 2.0 * (1.0 + 1e-12));
        let again = alias_frequency(folded, f_s).unwrap();
        prop_assert_eq!(folded, again);
    }

    #[test]
    fn closed_form_error_stays_in_range(
        x_frac in 0.01..0.99f64,
        alpha in 0.0..1.0f64,
    ) {
        let r = closed_form_error_k1(x_frac * PI, alpha).unwrap();
        prop_assert!(r.is_finite() && r >= 0.0);
    }

    #[test]
    fn plans_satisfy_their_own_invariants(
        f_v in 10.0..5e3f64,
        links in 1..4u32,
        adc_mult in 6.0..200.0f64,
        level in 0.02..0.45f64,
    ) {
        let filter = RcCascade::from_half_power(links, f_v).unwrap();
        let mut req = PlanRequest::new(f_v, 1, filter, 0.0);
        req.suppression_level = level;
        // ADC budget scaled off the (level-dependent) cutoff
        let f_s = filter.solve_cutoff(level, ResponseDomain::Power).unwrap();
        req.f_adc_hz = adc_mult * f_s;
        let plan = build_plan(&req).unwrap();
        prop_assert_eq!(plan.f_o_hz, plan.k_d as f64 * plan.f_p_hz);
        prop_assert_eq!(plan.k_d, 2 * plan.n_opt);
        prop_assert!(plan.f_o_hz <= req.f_adc_hz);
        prop_assert!(plan.f_o_hz >= 2.0 * plan.f_p_hz);
        // suppression below half power ⟹ alias-safe rate clears 2·F_v
        prop_assert!(plan.f_p_hz > 2.0 * f_v);
        let min_j = plan
            .sweep
            .iter()
            .map(|p| p.j)
            .fold(f64::INFINITY, f64::min);
        prop_assert_eq!(min_j, plan.j_at_opt);
    }

    #[test]
    fn combine_is_commutative_and_associative(
        fo in proptest::collection::vec(1e3..1e6f64, 3),
        kd in proptest::collection::vec(1u32..100, 3),
    ) {
        let plan = |f_o_hz: f64, k_d: u32| SamplingPlan {
            order_k: 0,
            f_s_hz: 100.0,
            f_p_hz: 200.0,
            n_opt: 1,
            f_o_hz,
            k_d,
            f2_min_hz: 50.0,
            r_at_opt: 0.0,
            j_at_opt: 0.0,
            sweep: vec![],
        };
        let a = plan(fo[0], kd[0]);
        let b = plan(fo[1], kd[1]);
        let c = plan(fo[2], kd[2]);
        let ab = combine_plans(&[a.clone(), b.clone()]).unwrap();
        let ba = combine_plans(&[b.clone(), a.clone()]).unwrap();
        prop_assert_eq!(ab, ba);
        // associativity via the flattened list
        let abc = combine_plans(&[a.clone(), b.clone(), c.clone()]).unwrap();
        let ab_plan = plan(ab.f_o_hz, ab.k_d);
        let ab_c = combine_plans(&[ab_plan, c.clone()]).unwrap();
        prop_assert_eq!(abc, ab_c);
    }
}
