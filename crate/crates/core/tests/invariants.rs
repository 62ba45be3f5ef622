use std::f64::consts::PI;

use proptest::prelude::*;

use tfim_gyro::analysis::{fit_eta, uniform_grid};
use tfim_gyro::approx::{gaussian_echo_approx, log_echo_partial_sum, m_parameter, ApproxParams};
use tfim_gyro::chain::{effective_lambda, ChainSpec, FieldConfig};
use tfim_gyro::echo::{
    bloch_modes, bogoliubov_angle, log_echo_at, loschmidt_echo_at, mode_factor, mode_factors, ModeGrid,
};
use tfim_gyro::protocol::{mfc_window, pmg_sample, trial_rng, NoiseModel};

fn chain() -> impl Strategy<Value = ChainSpec> {
    (1usize..300).prop_map(|h| ChainSpec::new(2 * h).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn echo_is_a_probability(spec in chain(), lt in -4.0..4.0f64, d in 0.0..1.0f64, t in 0.0..50.0f64) {
        let l = loschmidt_echo_at(&spec, lt, d, t).unwrap();
        prop_assert!((0.0..=1.0).contains(&l));
    }

    #[test]
    fn trivial_limits(spec in chain(), lt in -4.0..4.0f64, d in 0.0..1.0f64, t in 0.0..50.0f64) {
        prop_assert_eq!(loschmidt_echo_at(&spec, lt, d, 0.0).unwrap(), 1.0);
        prop_assert_eq!(loschmidt_echo_at(&spec, lt, 0.0, t).unwrap(), 1.0);
    }

    #[test]
    fn factors_bounded(spec in chain(), lt in -4.0..4.0f64, d in 0.0..1.0f64, t in 0.0..50.0f64) {
        for f in mode_factors(&spec, lt, d, t, ModeGrid::Periodic).unwrap() {
            prop_assert!((0.0..=1.0).contains(&f.value()));
        }
    }

    #[test]
    fn angle_branch_does_not_matter(tg in -5.0..5.0f64, te in -5.0..5.0f64, e in 0.0..8.0f64, t in 0.0..10.0f64) {
        let base = mode_factor(tg, te, e, t, 1.0).value();
        for shift in [PI, -PI, 2.0 * PI] {
            prop_assert!((mode_factor(tg + shift, te, e, t, 1.0).value() - base).abs() < 1e-12);
            prop_assert!((mode_factor(tg, te + shift, e, t, 1.0).value() - base).abs() < 1e-12);
        }
    }

    #[test]
    fn angles_stay_in_principal_range(spec in chain(), x in -4.0..4.0f64) {
        for mode in bloch_modes(&spec).unwrap() {
            let theta = bogoliubov_angle(&mode, x);
            prop_assert!((-PI..=PI).contains(&theta));
        }
    }

    #[test]
    fn log_echo_is_non_positive(spec in chain(), lt in -4.0..4.0f64, d in 0.0..1.0f64, t in 0.0..50.0f64) {
        for grid in [ModeGrid::Periodic, ModeGrid::AntiPeriodic] {
            prop_assert!(log_echo_at(&spec, lt, d, t, grid).unwrap() <= 0.0);
        }
    }

    #[test]
    fn partial_sums_decrease_with_cutoff(h in 2usize..80, lt in 0.0..3.0f64, d in 0.0..0.3f64, t in 0.0..5.0f64) {
        let spec = ChainSpec::new(2 * h).unwrap();
        let fields = FieldConfig::new(lt, d, 0.0).unwrap();
        let mut previous = 0.0;
        for nc in 1..=h {
            let s = log_echo_partial_sum(&spec, &fields, t, &ApproxParams::new(&spec, nc).unwrap()).unwrap();
            prop_assert!(s <= previous + 1e-15);
            previous = s;
        }
        let exact = loschmidt_echo_at(&spec, lt, d, t).unwrap();
        prop_assert!((previous.exp() - exact).abs() < 1e-10);
    }

    #[test]
    fn m_grows_with_cutoff(h in 2usize..500) {
        let spec = ChainSpec::new(2 * h).unwrap();
        let ms: Vec<f64> = (1..=h).map(|nc| m_parameter(&spec, nc).unwrap()).collect();
        prop_assert!(ms[0] > 0.0);
        prop_assert!(ms.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn gaussian_forms_are_probabilities(h in 1usize..200, lt in 1.1..3.0f64, d in 0.0..0.05f64, t in 0.0..3.0f64) {
        let spec = ChainSpec::new(400).unwrap();
        let fields = FieldConfig::new(lt, d, 0.0).unwrap();
        let g = gaussian_echo_approx(&spec, &fields, t, &ApproxParams::new(&spec, h).unwrap()).unwrap();
        prop_assert!((0.0..=1.0).contains(&g.closed_form));
        prop_assert!((0.0..=1.0).contains(&g.short_time));
    }

    #[test]
    fn rotation_enters_as_field_shift(l in -5.0..5.0f64, o in -5.0..5.0f64, j in 0.1..3.0f64, hbar in 0.1..3.0f64) {
        let spec = ChainSpec::with_units(4, 1.0, j, hbar).unwrap();
        let lt = effective_lambda(&spec, l, o);
        prop_assert!((lt - (l - hbar * o / (2.0 * j))).abs() < 1e-12);
        prop_assert!((effective_lambda(&spec, l, 0.0) - l).abs() == 0.0);
    }

    #[test]
    fn uniform_readings_stay_in_range(seed in any::<u64>(), omega in -5.0..5.0f64, sigma in 1e-6..2.0f64) {
        let mut rng = trial_rng(seed, 0);
        for model in [NoiseModel::Uniform, NoiseModel::Gaussian] {
            let x = pmg_sample(omega, sigma, model, &mut rng);
            prop_assert!((x - omega).abs() <= sigma * (1.0 + 1e-12));
        }
    }

    #[test]
    fn window_contains_midpoint(o in -10.0..10.0f64, sigma in 1e-6..2.0f64, j in 0.1..3.0f64, hbar in 0.1..3.0f64) {
        let spec = ChainSpec::with_units(4, 1.0, j, hbar).unwrap();
        let (lo, hi) = mfc_window(o, sigma, &spec);
        let mid = 1.0 + spec.omega_to_field(o);
        prop_assert!(lo <= mid && mid <= hi);
        prop_assert!((hi - lo - hbar * sigma / j).abs() < 1e-12);
    }

    #[test]
    fn grids_are_sorted(min in -5.0..5.0f64, span in 0.0..5.0f64, points in 1usize..500) {
        let g = uniform_grid(min, min + span, points).unwrap();
        prop_assert_eq!(g.len(), points);
        prop_assert!(g.windows(2).all(|w| w[1] >= w[0]));
    }

    #[test]
    fn fit_scales_with_data(slope in 0.05..2.0f64, scale in 0.1..10.0f64, n in 10usize..100000) {
        let pts: Vec<(f64, f64)> = (1..=6).map(|i| {
            let d = 0.001 * i as f64;
            (d, slope * (n as f64).sqrt() * d * (1.0 + 0.01 * (i as f64).sin()))
        }).collect();
        let scaled: Vec<(f64, f64)> = pts.iter().map(|&(d, e)| (d, e * scale)).collect();
        let a = fit_eta(&pts, n).unwrap();
        let b = fit_eta(&scaled, n).unwrap();
        prop_assert!((b.sqrt_eta / a.sqrt_eta - scale).abs() < 1e-10 * scale);
        prop_assert!((a.r_squared - b.r_squared).abs() < 1e-10);
    }
}
