//! Exact echo against the cutoff partial sum and its Gaussian closed forms.

use tfim_gyro::approx::{gaussian_echo_approx, log_echo_partial_sum, ApproxParams};
use tfim_gyro::chain::{characteristic_time, ChainSpec, FieldConfig};
use tfim_gyro::echo::loschmidt_echo;

fn main() -> Result<(), tfim_gyro::Error> {
    let spec = ChainSpec::new(2000)?;
    let t0 = characteristic_time(&spec);
    let fields = FieldConfig::new(1.001, 0.01, 0.0)?;
    let exact = loschmidt_echo(&spec, &fields, t0)?;
    println!("N = 2000, lambda_tilde = 1.001, delta = 0.01, t = t0: exact L = {exact:.6}");
    println!("{:>5} {:>10} {:>12} {:>12} {:>12}", "N_c", "m", "exp(S)", "closed", "short-time");
    for nc in [5, 20, 50, 200, 1000] {
        let cutoff = ApproxParams::new(&spec, nc)?;
        let partial = log_echo_partial_sum(&spec, &fields, t0, &cutoff)?.exp();
        let g = gaussian_echo_approx(&spec, &fields, t0, &cutoff)?;
        println!(
            "{nc:>5} {:>10.4e} {partial:>12.6} {:>12.6} {:>12.6}",
            cutoff.m, g.closed_form, g.short_time
        );
    }

    let cutoff = ApproxParams::new(&spec, 50)?;
    println!("m/N = {:.4e} against eta = {:.4e} at alpha = {}", cutoff.m / 2000.0, cutoff.eta, cutoff.alpha_frac);
    Ok(())
}
