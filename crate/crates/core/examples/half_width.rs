//! Locating the `L = 1/2` crossings of a single echo valley.

use tfim_gyro::analysis::half_width;
use tfim_gyro::chain::{characteristic_time, ChainSpec};
use tfim_gyro::Error;

fn main() -> Result<(), Error> {
    let spec = ChainSpec::new(2000)?;
    let (delta, lambda) = (0.032, 2.0);

    // at t0 the valley is too shallow to have a half-width
    match half_width(&spec, delta, lambda, characteristic_time(&spec), 1.0) {
        Err(Error::ValleyTooShallow { min_echo }) => println!("t = t0: deepest echo {min_echo:.4}, no crossing"),
        other => println!("t = t0: {other:?}"),
    }

    for time in [1.0, 2.0, 3.0] {
        let r = half_width(&spec, delta, lambda, time, 1.0)?;
        println!(
            "t = {time}: crossings at eps = {:+.6} / {:+.6}, eps0 = {:.6}, dOmega = {:.6}, chord = {:.6}, residual {:.1e}",
            r.crossings.0, r.crossings.1, r.epsilon0, r.delta_omega, r.chord, r.residual
        );
    }
    Ok(())
}
