//! Half-width against probe coupling and the origin-constrained `sqrt(eta)` fit.
//!
//! ```bash
//! cargo run --release --example eta_fit -- 5
//! ```

use tfim_gyro::analysis::{fit_eta, half_width, uniform_grid, HalfWidthConvention, SQRT_ETA_REFERENCE};
use tfim_gyro::chain::ChainSpec;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let time: f64 = std::env::args().nth(1).map_or(Ok(5.0), |t| t.parse())?;
    let spec = ChainSpec::new(20000)?;
    let deltas = uniform_grid(0.002, 0.02, 10)?;

    let mut resolved = Vec::new();
    println!("N = 20000, t = {time}");
    for &delta in &deltas {
        match half_width(&spec, delta, 2.0, time, 1.0) {
            Ok(r) => {
                println!("delta = {delta:.3}: eps0 = {:.5}, chord = {:.5}", r.epsilon0, r.chord);
                resolved.push((delta, r));
            }
            Err(e) => println!("delta = {delta:.3}: {e}"),
        }
    }

    for convention in [HalfWidthConvention::OneSided, HalfWidthConvention::FullChord] {
        let points: Vec<(f64, f64)> = resolved.iter().map(|(d, r)| (*d, r.width(convention))).collect();
        match fit_eta(&points, spec.n_spins) {
            Ok(fit) => println!(
                "{}: sqrt_eta = {:.4} (reference {SQRT_ETA_REFERENCE}), r2 = {:.4}",
                convention.as_str(),
                fit.sqrt_eta,
                fit.r_squared
            ),
            Err(e) => println!("{}: {e}", convention.as_str()),
        }
    }
    Ok(())
}
