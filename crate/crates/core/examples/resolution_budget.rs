//! Sensor resolution `2 sqrt(eta) omega0 delta sqrt(N)` and the bound
//! `delta sqrt(N) < 1.33 sigma / omega0`.

use tfim_gyro::analysis::{constraint_check, resolution, SQRT_ETA_REFERENCE};

fn main() -> Result<(), tfim_gyro::Error> {
    let omega0 = 1.0;
    println!("resolution(N = 2000, delta = 1e-5) = {:.4e}", resolution(omega0, 1e-5, 2000, SQRT_ETA_REFERENCE));

    println!("{:>8} {:>8} {:>12} {:>10} {:>8}", "N", "delta", "dOmega", "margin", "useful");
    for n in [200, 2000, 20000, 200000] {
        for delta in [1e-5, 1e-3, 1e-2] {
            let sigma = 1e-2;
            let c = constraint_check(delta, n, sigma, omega0)?;
            println!(
                "{n:>8} {delta:>8.0e} {:>12.4e} {:>10.4} {:>8}",
                resolution(omega0, delta, n, SQRT_ETA_REFERENCE),
                c.margin,
                c.satisfied
            );
        }
    }
    Ok(())
}
