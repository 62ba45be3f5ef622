use tfim_gyro::chain::ChainSpec;
use tfim_gyro::protocol::{
    estimate_omega, mfc_window, pmg_sample, run_trials, scan_and_estimate, trial_rng, NoiseModel, ProtocolConfig,
};
use tfim_gyro::Error;

fn config() -> ProtocolConfig {
    ProtocolConfig {
        true_omega: 1.5,
        sigma: 0.4,
        noise_model: NoiseModel::Uniform,
        spec: ChainSpec::new(400).unwrap(),
        delta: 0.03,
        time: Some(2.0),
        scan_points: 151,
        trials: 40,
        seed: 17,
    }
}

#[test]
fn identical_seeds_give_identical_runs() {
    let a = run_trials(&config()).unwrap();
    let b = run_trials(&config()).unwrap();
    assert_eq!(a, b);
    let mut other = config();
    other.seed = 18;
    assert_ne!(run_trials(&other).unwrap().summary, a.summary);
}

#[test]
fn every_trial_satisfies_the_estimate_relation() {
    let run = run_trials(&config()).unwrap();
    assert_eq!(run.summary.succeeded, 40);
    for record in &run.records {
        let t = record.outcome.as_ref().unwrap();
        assert_eq!(t.omega1, estimate_omega(&config().spec, t.lambda0));
        assert_eq!(t.lambda_window, mfc_window(t.omega0, 0.4, &config().spec));
        assert!((t.omega0 - 1.5).abs() <= 0.4);
        assert_eq!(t.abs_error, (t.omega1 - 1.5).abs());
    }
}

#[test]
fn critical_field_inside_window_when_reading_is_close() {
    let c = config();
    let margin = c.sigma - c.spec.field_to_omega(c.delta);
    for r in run_trials(&c).unwrap().records {
        let t = r.outcome.unwrap();
        if (t.omega0 - c.true_omega).abs() <= margin {
            assert!(t.critical_in_window, "{t:?}");
        }
    }
}

#[test]
fn single_trial_summary_is_that_trial() {
    let mut c = config();
    c.sigma = 0.1;
    c.trials = 1;
    let run = run_trials(&c).unwrap();
    let trial = run.records[0].outcome.as_ref().unwrap();
    assert!((trial.omega0 - c.true_omega).abs() <= 0.1);
    assert_eq!(run.summary.uncorrected.mean_abs_error, trial.abs_error);
    assert_eq!(run.summary.uncorrected.p95_abs_error, trial.abs_error);
    assert_eq!(run.summary.corrected.mean_abs_error, trial.corrected_abs_error);
}

#[test]
fn corrected_estimate_is_shifted_by_the_probe() {
    let c = config();
    let shift = c.spec.field_to_omega(c.delta);
    for r in run_trials(&c).unwrap().records {
        let t = r.outcome.unwrap();
        assert!((t.omega1_corrected - t.omega1 - shift).abs() < 1e-12);
    }
}

#[test]
fn infeasible_configuration_is_flagged() {
    let mut c = config();
    c.delta = 0.2;
    c.sigma = 0.1;
    assert!(c.resolution() > c.sigma);
    if let Ok(run) = run_trials(&c) {
        assert!(!run.summary.feasible);
    }
    assert!(!c.feasible());
}

#[test]
fn zero_coupling_fails_every_trial() {
    let mut c = config();
    c.delta = 0.0;
    assert!(matches!(scan_and_estimate(&c, 1.5), Err(Error::FlatScan { .. })));
    assert_eq!(run_trials(&c), Err(Error::NoSuccessfulTrials));
}

#[test]
fn gaussian_readings_cluster_near_truth() {
    let mut rng = trial_rng(3, 0);
    let draws: Vec<f64> = (0..20_000).map(|_| pmg_sample(0.0, 1.0, NoiseModel::Gaussian, &mut rng)).collect();
    let mean = draws.iter().sum::<f64>() / draws.len() as f64;
    let var = draws.iter().map(|x| x * x).sum::<f64>() / draws.len() as f64;
    assert!(mean.abs() < 0.02);
    // N(0, 1/4) truncated at ±2 standard deviations has variance ≈ 0.193
    assert!((var - 0.193).abs() < 0.01, "{var}");

    let mut c = config();
    c.noise_model = NoiseModel::Gaussian;
    assert_eq!(run_trials(&c).unwrap().summary.succeeded, 40);
}
