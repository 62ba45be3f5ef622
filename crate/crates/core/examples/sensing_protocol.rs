//! Pre-measurement, field-controller window and echo scan, repeated over
//! seeded trials.

use tfim_gyro::chain::ChainSpec;
use tfim_gyro::protocol::{run_trials, NoiseModel, ProtocolConfig};

fn main() -> Result<(), tfim_gyro::Error> {
    let spec = ChainSpec::new(2000)?;
    for noise_model in [NoiseModel::Uniform, NoiseModel::Gaussian] {
        let config = ProtocolConfig {
            true_omega: 2.0,
            sigma: 0.5 * spec.omega0(),
            noise_model,
            spec,
            delta: 0.01,
            time: None,
            scan_points: 201,
            trials: 200,
            seed: 2024,
        };
        let run = run_trials(&config)?;
        let s = run.summary;
        println!("{noise_model:?} readings, resolution {:.4}, feasible {}", s.resolution_delta_omega, s.feasible);
        for (label, stats) in [("Omega1 ", s.uncorrected), ("Omega1'", s.corrected)] {
            println!(
                "  {label}: mean |err| {:.5}, p95 {:.5}, mean signed {:+.5}, success {:.3}",
                stats.mean_abs_error, stats.p95_abs_error, stats.mean_signed_error, stats.success_rate
            );
        }
        let first = run.records[0].outcome.as_ref().expect("first trial");
        println!(
            "  trial 0: reading {:.4}, window [{:.4}, {:.4}], lambda0 {:.5}, estimate {:.5}",
            first.omega0, first.lambda_window.0, first.lambda_window.1, first.lambda0, first.omega1
        );
    }
    Ok(())
}
