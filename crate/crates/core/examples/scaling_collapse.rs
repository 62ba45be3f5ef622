//! Valley widths for chains sharing the same `delta * sqrt(N)`.

use tfim_gyro::analysis::{collapse_check, CollapseCase, HalfWidthConvention};

fn main() -> Result<(), tfim_gyro::Error> {
    let cases = [(200, 0.1), (500, 0.063), (2000, 0.032), (20000, 0.01)]
        .iter()
        .map(|&(n, d)| CollapseCase::new(n, d))
        .collect::<Result<Vec<_>, _>>()?;
    for case in &cases {
        println!("N = {:>5}, delta = {:<5} delta*sqrt(N) = {:.4}", case.spec.n_spins, case.delta, case.delta_sqrt_n());
    }

    for time in [0.5, 2.0] {
        match collapse_check(&cases, 2.0, time, 1.0, HalfWidthConvention::OneSided) {
            Ok(report) => {
                let widths: Vec<String> = report.entries.iter().map(|e| format!("{:.4}", e.width_omega)).collect();
                println!(
                    "t = {time}: dOmega = [{}], spread {:.2}% ({})",
                    widths.join(", "),
                    100.0 * report.max_relative_deviation,
                    if report.passed { "collapses" } else { "does not collapse" }
                );
            }
            Err(e) => println!("t = {time}: {e}"),
        }
    }
    Ok(())
}
