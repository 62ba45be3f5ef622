//! Echo against rotation velocity for a 2000-site chain.
//!
//! ```bash
//! cargo run --release --example echo_curve            # t = t0
//! cargo run --release --example echo_curve -- 5 out.csv
//! ```

use tfim_gyro::analysis::{scan_curve, uniform_grid};
use tfim_gyro::chain::{characteristic_time, ChainSpec};
use tfim_gyro::io::{csv_string, format_real, write_atomic};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let spec = ChainSpec::new(2000)?;
    let time = match args.next() {
        Some(t) => t.parse()?,
        None => characteristic_time(&spec),
    };
    let (delta, lambda) = (0.01, 2.0);

    let grid = uniform_grid(0.0, 4.0, 2001)?;
    let curve = scan_curve(&spec, delta, lambda, time, &grid)?;
    let min = curve.minimum().expect("non-empty grid");
    println!("N = 2000, delta = {delta}, lambda = {lambda}, t = {time}");
    println!(
        "minimum L = {:.6} at Omega = {:.4} (lambda_tilde = {:.5}), {} local minima",
        min.echo,
        min.omega,
        min.lambda_tilde,
        curve.local_minima()
    );

    // bars show 1 - L relative to the deepest point
    let depth = (1.0 - min.echo).max(f64::MIN_POSITIVE);
    println!("{:>8} {:>10}", "Omega", "L");
    for s in curve.samples.iter().step_by(100) {
        let bar = "#".repeat(((1.0 - s.echo) / depth * 40.0).round() as usize);
        println!("{:>8.3} {:>10.6} {bar}", s.omega, s.echo);
    }

    if let Some(path) = args.next() {
        let rows = curve
            .samples
            .iter()
            .map(|s| vec![format_real(s.omega), format_real(s.lambda_tilde), format_real(s.echo)]);
        write_atomic(path.as_ref(), csv_string(&["omega", "lambda_tilde", "loschmidt_echo"], rows).as_bytes())?;
        println!("wrote {path}");
    }
    Ok(())
}
